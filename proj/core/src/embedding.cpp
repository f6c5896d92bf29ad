#include "gg/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gg/braid_trace.hpp"
#include "gg/errors.hpp"

namespace gg {

namespace {

Vec3 lattice_point(int k, int m) {
  if (m == 1) return Vec3(0.0, 0.0, 1.0);
  const double z = 1.0 - 2.0 * k / (m - 1);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = std::numbers::pi * (3.0 - std::sqrt(5.0)) * k;
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

long long l1_norm(const std::vector<int>& k) {
  long long s = 0;
  for (int v : k) s += std::llabs(v);
  return s;
}

void check_k(const EmbeddingSpec& spec, const std::vector<int>& k) {
  if (static_cast<int>(k.size()) != spec.m) {
    throw std::invalid_argument("embedding: k has " + std::to_string(k.size()) + " entries, expected " +
                                std::to_string(spec.m));
  }
}

std::vector<std::string> base_assumptions() {
  return {
      "each generator is the time-1 map of an autonomous flow and has entropy norm at most 1",
      "generators with disjoint supports commute",
  };
}

}  // namespace

EmbeddingSpec build_embedding(int m, double area, double strength, double margin,
                              const IntegratorSettings& integrator) {
  if (m < 1) throw std::invalid_argument("build_embedding: m must be at least 1");
  if (!(area > 0.0)) throw std::invalid_argument("build_embedding: area must be positive");
  if (area >= 1.0 / m) {
    throw PlacementFailed("build_embedding: cap area " + std::to_string(area) + " is not below 1/m");
  }
  EmbeddingSpec spec;
  spec.m = m;
  spec.area = area;
  spec.strength = strength;
  spec.margin_required = margin;
  spec.integrator = integrator;
  const SpherePoint north(0.0, 0.0, 1.0);
  const HamiltonianSystem base = twist_map(disc_region(north, area), strength);
  for (int i = 0; i < m; ++i) {
    const Mat3 R = rotation_taking(north.vec(), lattice_point(i, m));
    spec.rotations.push_back(R);
    spec.generators.push_back(conjugate_by_rotation(base, R));
    spec.caps.push_back(*spec.generators.back().support());
  }
  spec.margin = std::numbers::pi;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) spec.margin = std::min(spec.margin, cap_separation(spec.caps[i], spec.caps[j]));
  }
  if (spec.margin < margin) {
    throw PlacementFailed("build_embedding: caps separated by " + std::to_string(spec.margin) + ", need " +
                          std::to_string(margin));
  }
  return spec;
}

DiffeoTrace evaluate_J(const EmbeddingSpec& spec, const std::vector<int>& k, int budget) {
  check_k(spec, k);
  if (l1_norm(k) > budget) throw std::invalid_argument("evaluate_J: |k|_1 exceeds the budget");
  std::vector<HamiltonianSystem> factors;
  std::vector<int> exps;
  for (int i = 0; i < spec.m; ++i) {
    if (k[static_cast<std::size_t>(i)] == 0) continue;
    factors.push_back(spec.generators[static_cast<std::size_t>(i)]);
    exps.push_back(k[static_cast<std::size_t>(i)]);
  }
  if (factors.empty()) return DiffeoTrace::identity(spec.integrator);
  return compose(factors, exps, spec.integrator);
}

EstimateTable measure_estimate_table(const EmbeddingSpec& spec, const QuasimorphismSpec& q,
                                     EstimatorSettings settings, int defect_trials) {
  const int m = spec.m;
  EstimateTable t;
  t.M = Eigen::MatrixXd::Zero(m, m);
  t.M_stderr = Eigen::MatrixXd::Zero(m, m);
  const Observable obs = Observable::of(q);
  settings.mode = TruncationMode::enforce_reducible_vanishing;
  for (int j = 0; j < m; ++j) {
    const HamiltonianSystem g[] = {spec.generators[static_cast<std::size_t>(j)]};
    const int one[] = {1};
    const DiffeoTrace fj(g, one, spec.integrator);
    for (int i = 0; i < m; ++i) {
      EstimatorSettings s = settings;
      s.support = {spec.caps[static_cast<std::size_t>(i)]};
      // A pole inside some cap j would make a strand circling in cap j wind
      // around every other strand.
      s.pole = default_pole(spec.caps);
      s.basepoints.reset();
      const GGEstimate e = estimate_phi_bar(fj, obs, s);
      t.M(i, j) = e.value;
      t.M_stderr(i, j) = e.stderr_;
    }
  }
  const DefectEstimate d = empirical_defect(q, pure_word_pair_sampler(settings.n, 6), defect_trials, settings.seed);
  for (int i = 0; i < m; ++i) {
    t.quasimorphisms.push_back(q.name + "@cap" + std::to_string(i + 1));
    t.sampled_defects.push_back(d.lower_bound);
    t.defects.push_back(q.exact_zero_defect ? 0.0 : 2.0 * d.lower_bound);
    t.seeds.push_back(settings.seed);
  }
  return t;
}

bool EmbeddingCertificate::ordered() const {
  if (!lower || !upper) return true;
  if (lower->homomorphism_mode || !std::isfinite(lower->aggregated)) return true;
  const double best = lower->per_generator.empty()
                          ? lower->aggregated
                          : std::max(lower->aggregated, *std::max_element(lower->per_generator.begin(),
                                                                          lower->per_generator.end()));
  return best <= upper->value;
}

double EmbeddingCertificate::ratio() const {
  if (!lower || !upper || lower->homomorphism_mode || lower->aggregated <= 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return upper->value / lower->aggregated;
}

EmbeddingCertificate lower_bound_certificate(const EmbeddingSpec& spec, const std::vector<int>& k,
                                             const EstimateTable& table,
                                             const std::optional<std::vector<double>>& measured_J) {
  check_k(spec, k);
  const int m = spec.m;
  if (table.M.rows() != m || table.M.cols() != m || static_cast<int>(table.defects.size()) != m) {
    throw MissingEstimate("lower_bound_certificate: estimate table does not cover all " + std::to_string(m) +
                          " generators");
  }
  if (!table.M.allFinite()) throw MissingEstimate("lower_bound_certificate: estimate table has missing entries");
  if (measured_J && static_cast<int>(measured_J->size()) != m) {
    throw MissingEstimate("lower_bound_certificate: measured Phi-bar(J(k)) must have one entry per generator");
  }

  EmbeddingCertificate c;
  c.k = k;
  c.l1 = l1_norm(k);
  c.assumptions = base_assumptions();
  c.assumptions.push_back("defects are sampled lower bounds: the bound is heuristic upward, rigorous only relative "
                          "to the sampled defect");
  LowerBound lb;

  const bool homomorphism = std::all_of(table.defects.begin(), table.defects.end(), [](double d) { return d == 0.0; });
  Eigen::VectorXd kv(m);
  for (int i = 0; i < m; ++i) kv(i) = k[static_cast<std::size_t>(i)];
  if (homomorphism) {
    lb.homomorphism_mode = true;
    lb.aggregated = std::numeric_limits<double>::infinity();
    lb.conservative = lb.aggregated;
    const Eigen::VectorXd v = table.M * kv;
    lb.homomorphism_values.assign(v.data(), v.data() + m);
    lb.status = "homomorphism: no finite bound; |Phi-bar(J(k))| = |sum k_i Phi-bar(f_i)|";
    c.lower = std::move(lb);
    return c;
  }
  if (std::any_of(table.defects.begin(), table.defects.end(), [](double d) { return !(d > 0.0); })) {
    throw MissingEstimate("lower_bound_certificate: defects must be strictly positive");
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(table.M);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m - 1);
  if (!(smin > 1e-12 * std::max(1.0, smax))) {
    throw IllConditionedFit("lower_bound_certificate: generator matrix is singular");
  }
  const Eigen::MatrixXd Minv = table.M.inverse();
  const Eigen::MatrixXd absMinv = Minv.cwiseAbs();
  // First-order bound on |delta M^{-1}| for |delta M| <= 3 stderr.
  const Eigen::MatrixXd delta = absMinv * (3.0 * table.M_stderr.cwiseAbs()) * absMinv;
  Eigen::VectorXd D(m);
  for (int l = 0; l < m; ++l) D(l) = table.defects[static_cast<std::size_t>(l)];
  const Eigen::VectorXd psi = absMinv * D;
  const Eigen::VectorXd psi_cons = (absMinv + delta) * D;

  lb.psi_defects.assign(psi.data(), psi.data() + m);
  lb.frak_D = psi.maxCoeff();
  lb.frak_D_conservative = psi_cons.maxCoeff();
  lb.aggregated = static_cast<double>(c.l1) / (m * lb.frak_D);
  lb.conservative = static_cast<double>(c.l1) / (m * lb.frak_D_conservative);
  for (int i = 0; i < m; ++i) {
    lb.per_generator.push_back(std::abs(k[static_cast<std::size_t>(i)]) / psi(i));
  }
  if (measured_J) {
    Eigen::VectorXd y(m);
    for (int l = 0; l < m; ++l) y(l) = (*measured_J)[static_cast<std::size_t>(l)];
    const Eigen::VectorXd psi_J = Minv * y;
    for (int i = 0; i < m; ++i) lb.per_generator_measured.push_back(std::abs(psi_J(i)) / psi(i));
  }
  lb.status = "formula-exact given D; D itself sampled";
  c.lower = std::move(lb);
  return c;
}

EmbeddingCertificate upper_bound_certificate(const EmbeddingSpec& spec, const std::vector<int>& k) {
  check_k(spec, k);
  EmbeddingCertificate c;
  c.k = k;
  c.l1 = l1_norm(k);
  c.assumptions = base_assumptions();
  UpperBound ub;
  for (int i = 0; i < spec.m; ++i) {
    const int ki = k[static_cast<std::size_t>(i)];
    for (int r = 0; r < std::abs(ki); ++r) ub.factors.push_back({i, ki > 0 ? 1 : -1});
  }
  ub.value = static_cast<double>(c.l1) * ub.norm_bound_per_generator;
  c.upper = std::move(ub);
  return c;
}

EmbeddingCertificate certify(const EmbeddingSpec& spec, const std::vector<int>& k, const EstimateTable& table,
                             const std::optional<std::vector<double>>& measured_J) {
  EmbeddingCertificate c = lower_bound_certificate(spec, k, table, measured_J);
  c.upper = upper_bound_certificate(spec, k).upper;
  return c;
}

}  // namespace gg
