#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gg/embedding.hpp"
#include "gg/errors.hpp"
#include "gg/random.hpp"

using namespace gg;

namespace {

IntegratorSettings coarse() {
  IntegratorSettings s;
  s.step = 0.01;
  return s;
}

EstimateTable synthetic_table(int m, double diag, double defect) {
  EstimateTable t;
  t.M = Eigen::MatrixXd::Identity(m, m) * diag;
  t.M_stderr = Eigen::MatrixXd::Constant(m, m, 1e-3 * std::abs(diag));
  t.defects.assign(static_cast<std::size_t>(m), defect);
  t.sampled_defects.assign(static_cast<std::size_t>(m), defect / 2);
  for (int i = 0; i < m; ++i) t.quasimorphisms.push_back("q" + std::to_string(i));
  return t;
}

}  // namespace

TEST(Embedding, SingleCap) {
  const EmbeddingSpec s = build_embedding(1, 0.3);
  ASSERT_EQ(s.caps.size(), 1u);
  EXPECT_NEAR(s.caps[0].area(), 0.3, 1e-14);
  EXPECT_DOUBLE_EQ(s.margin, std::numbers::pi);
}

TEST(Embedding, AntipodalPairMargin) {
  const EmbeddingSpec s = build_embedding(2, 0.05);
  EXPECT_LT((s.caps[0].center().vec() + s.caps[1].center().vec()).norm(), 1e-12);
  const double theta = std::acos(1 - 2 * 0.05);
  EXPECT_NEAR(s.margin, std::numbers::pi - 2 * theta, 1e-12);
}

TEST(Embedding, TenCapsRespectAreaBudgetAndDisjointness) {
  const EmbeddingSpec s = build_embedding(10, 0.02);
  ASSERT_EQ(s.caps.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_LT(s.caps[i].area(), 0.1);
    for (std::size_t j = i + 1; j < 10; ++j) EXPECT_GT(cap_separation(s.caps[i], s.caps[j]), 1e-3);
  }
  EXPECT_THROW(build_embedding(10, 0.1), PlacementFailed);
  EXPECT_THROW(build_embedding(10, 0.09), PlacementFailed);
  EXPECT_THROW(build_embedding(0, 0.1), std::invalid_argument);
}

TEST(Embedding, JCommutesAndIsAHomomorphism) {
  const EmbeddingSpec s = build_embedding(3, 0.05, 1.0, 1e-3, coarse());
  EXPECT_TRUE(evaluate_J(s, {0, 0, 0}).is_identity());
  const DiffeoTrace j1 = evaluate_J(s, {1, -2, 1});
  const DiffeoTrace j2 = evaluate_J(s, {2, 1, 0});
  const DiffeoTrace j12 = evaluate_J(s, {3, -1, 1});
  // Reversed factor order.
  std::vector<HamiltonianSystem> rev(s.generators.rbegin(), s.generators.rend());
  const int k[] = {1, -2, 1};
  const DiffeoTrace j1r = compose(rev, k, s.integrator);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint p = t % 2 ? s.caps[static_cast<std::size_t>(t % 3)].sample_inside(rng) : uniform_point(rng);
    EXPECT_LT((j1.apply(p).vec() - j1r.apply(p).vec()).norm(), 1e-8);
    EXPECT_LT((j12.apply(p).vec() - j1.apply(j2.apply(p)).vec()).norm(), 1e-8);
  }
  EXPECT_THROW(evaluate_J(s, {1, 2}), std::invalid_argument);
  EXPECT_THROW(evaluate_J(s, {40, 40, 0}), std::invalid_argument);
}

TEST(Certificates, UpperBoundIsL1Norm) {
  const EmbeddingSpec s = build_embedding(2, 0.05);
  EXPECT_EQ(upper_bound_certificate(s, {0, 0}).upper->value, 0.0);
  EXPECT_EQ(upper_bound_certificate(s, {1, 0}).upper->value, 1.0);
  const EmbeddingCertificate c = upper_bound_certificate(s, {3, -4});
  EXPECT_EQ(c.upper->value, 7.0);
  ASSERT_EQ(c.upper->factors.size(), 7u);
  EXPECT_EQ(c.upper->factors.back().generator, 1);
  EXPECT_EQ(c.upper->factors.back().sign, -1);
}

TEST(Certificates, LowerBoundFormula) {
  const EmbeddingSpec s = build_embedding(2, 0.05);
  const EstimateTable t = synthetic_table(2, -0.5, 3.0);
  // Psi_i = -2 Phi_i, so D(Psi_i) = 2 * 3 = 6 and frak_D = 6.
  const EmbeddingCertificate c = certify(s, {3, -4}, t);
  EXPECT_DOUBLE_EQ(c.lower->frak_D, 6.0);
  EXPECT_DOUBLE_EQ(c.lower->aggregated, 7.0 / (2 * 6.0));
  EXPECT_DOUBLE_EQ(c.lower->per_generator[0], 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(c.lower->per_generator[1], 4.0 / 6.0);
  EXPECT_LE(c.lower->conservative, c.lower->aggregated);
  EXPECT_TRUE(c.ordered());
  EXPECT_DOUBLE_EQ(c.ratio(), 2 * 6.0);
  EXPECT_EQ(certify(s, {0, 0}, t).lower->aggregated, 0.0);
  // Measured values of Phi-bar_l(J(k)) consistent with linearity.
  const EmbeddingCertificate m = certify(s, {3, -4}, t, std::vector<double>{-1.5, 2.0});
  EXPECT_DOUBLE_EQ(m.lower->per_generator_measured[0], 0.5);
  EXPECT_DOUBLE_EQ(m.lower->per_generator_measured[1], 4.0 / 6.0);
}

TEST(Certificates, ExactLinearity) {
  const EmbeddingSpec s = build_embedding(2, 0.05);
  const EstimateTable t = synthetic_table(2, -4.2e-4, 3.0);
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      const EmbeddingCertificate c = certify(s, {a, b}, t), d = certify(s, {2 * a, 2 * b}, t);
      EXPECT_EQ(d.lower->aggregated, 2 * c.lower->aggregated);
      EXPECT_EQ(d.upper->value, 2 * c.upper->value);
      for (int i = 0; i < 2; ++i) EXPECT_EQ(d.lower->per_generator[i], 2 * c.lower->per_generator[i]);
    }
  }
}

TEST(Certificates, HomomorphismModeAndErrors) {
  const EmbeddingSpec s = build_embedding(2, 0.05);
  EstimateTable t = synthetic_table(2, 2.0, 0.0);
  t.M(0, 1) = 0.5;
  const EmbeddingCertificate c = certify(s, {1, 2}, t);
  EXPECT_TRUE(c.lower->homomorphism_mode);
  EXPECT_DOUBLE_EQ(c.lower->homomorphism_values[0], 3.0);
  EXPECT_DOUBLE_EQ(c.lower->homomorphism_values[1], 4.0);
  EXPECT_TRUE(c.ordered());

  EstimateTable bad = synthetic_table(3, 1.0, 1.0);
  EXPECT_THROW(certify(s, {1, 2}, bad), MissingEstimate);
  EstimateTable singular = synthetic_table(2, 1.0, 1.0);
  singular.M.setConstant(1.0);
  EXPECT_THROW(certify(s, {1, 2}, singular), IllConditionedFit);
  EstimateTable mixed = synthetic_table(2, 1.0, 1.0);
  mixed.defects[1] = 0.0;
  EXPECT_THROW(certify(s, {1, 2}, mixed), MissingEstimate);
}

TEST(Certificates, MeasuredTableIsNearDiagonal) {
  const EmbeddingSpec s = build_embedding(2, 0.05, 1.0, 1e-3, coarse());
  EstimatorSettings es;
  es.n = 4;
  es.samples = 200;
  es.scheme = SamplingScheme::stratified;
  es.schedule = {4, 8};
  const EstimateTable t = measure_estimate_table(s, QuasimorphismSpec::signature(), es, 300);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(t.M(i, i), 0.0);
    EXPECT_GT(std::abs(t.M(i, i)), 5 * t.M_stderr(i, i));
    EXPECT_LT(std::abs(t.M(i, 1 - i)), 3 * t.M_stderr(i, 1 - i) + 1e-12);
    EXPECT_GT(t.defects[static_cast<std::size_t>(i)], 0.0);
  }
  for (int a = -4; a <= 4; ++a)
    for (int b = -4 + std::abs(a); b <= 4 - std::abs(a); ++b) EXPECT_TRUE(certify(s, {a, b}, t).ordered());
}
