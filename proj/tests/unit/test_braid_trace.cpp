#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "gg/braid_trace.hpp"
#include "gg/errors.hpp"
#include "gg/random.hpp"

using namespace gg;

namespace {

IntegratorSettings coarse() {
  IntegratorSettings s;
  s.step = 0.01;
  return s;
}

DiffeoTrace single(const HamiltonianSystem& h, int power = 1, IntegratorSettings s = coarse()) {
  const HamiltonianSystem f[] = {h};
  const int e[] = {power};
  return DiffeoTrace(f, e, s);
}

}  // namespace

TEST(Extraction, FullTwistOfTwoPointsIsSigmaSquared) {
  const SpherePoint c(0, 0, 1);
  const SphericalCap cap = disc_region(c, 0.1);
  const DiffeoTrace f = single(twist_map(cap, 1.0));
  const double r = 0.05 * cap.half_angle();
  const ConfigTuple x({point_at_polar(c, r, 0.0), point_at_polar(c, r, std::numbers::pi)});
  const ConfigTuple z({point_at_polar(c, 0.5, 0.3), point_at_polar(c, 0.5, 0.3 + std::numbers::pi)});
  const Extraction e = gamma(f, x, z, c.antipode());
  EXPECT_EQ(e.word.str(), "2; 1 1");
  EXPECT_EQ(exponent_sum(e.word), 2);
  EXPECT_EQ(e.events.size(), e.raw.size());
  // The inverse twist gives the inverse braid.
  EXPECT_EQ(gamma(f.inverse(), x, z, c.antipode()).word.str(), "2; -1 -1");
}

TEST(Extraction, IdentityGivesTrivialBraid) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const ConfigTuple x = uniform_sample(rng, 4);
    const ConfigTuple z = uniform_sample(rng, 4);
    const SpherePoint pole = uniform_point(rng);
    try {
      EXPECT_TRUE(gamma(DiffeoTrace::identity(), x, z, pole).word.empty());
    } catch (const PoleTooClose&) {
    } catch (const AntipodalPair&) {
    }
  }
}

TEST(Extraction, RigidFullTurnIsFullTwist) {
  // Rotation about the pole axis by one full turn: every pair of strands
  // winds once around the other in the projection plane.
  const Vec3 axis(0, 0, 1);
  const HamiltonianSystem h = HamiltonianSystem::height(axis, -2.0 * std::numbers::pi / kAreaFormScale);
  const DiffeoTrace f = single(h, 1);
  Rng rng(2);
  const SpherePoint pole(0, 0, 1);
  int done = 0;
  for (int t = 0; t < 20; ++t) {
    const ConfigTuple x = uniform_sample(rng, 4);
    try {
      const Extraction e = gamma(f, x, x, pole);
      EXPECT_TRUE(permutation(e.word).is_identity());
      EXPECT_EQ(std::abs(exponent_sum(e.word)), 12);
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) EXPECT_EQ(std::abs(linking_number(e.word, i, j)), 1.0);
      ++done;
    } catch (const PoleTooClose&) {
    }
  }
  EXPECT_GT(done, 10);
}

TEST(Extraction, PurityOnRandomScenes) {
  Rng rng(3);
  int violations = 0, extracted = 0;
  for (int t = 0; t < 10000; ++t) {
    const SphericalCap cap = disc_region(uniform_point(rng), 0.05 + 0.3 * rng.uniform());
    const double s = (rng.uniform() - 0.5) * 4.0;
    const DiffeoTrace f = single(twist_map(cap, s));
    const int n = 2 + static_cast<int>(t % 4);
    const ConfigTuple x = uniform_sample(rng, n);
    const ConfigTuple z = uniform_sample(rng, n);
    ExtractionSettings es;
    es.arc_steps = 16;
    try {
      const Extraction e = gamma(f, x, z, cap.center().antipode(), es);
      violations += permutation(e.raw).is_identity() ? 0 : 1;
      ++extracted;
    } catch (const InvariantViolation&) {
      ++violations;
    } catch (const Error&) {
      // degenerate scene, resampled by the estimator
    }
  }
  EXPECT_EQ(violations, 0);
  EXPECT_GT(extracted, 9500);
}

TEST(Extraction, DegenerateInputsThrow) {
  const SpherePoint c(0, 0, 1);
  const DiffeoTrace f = single(twist_map(disc_region(c, 0.1), 1.0));
  const ConfigTuple x({SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)});
  const ConfigTuple z_anti({SpherePoint(-1, 0, 0), SpherePoint(0, -0.5, 0.5)});
  EXPECT_THROW(build_loops(f, x, z_anti), AntipodalPair);
  // Pole on a strand.
  EXPECT_THROW(gamma(f, x, x, SpherePoint(1, 0, 0)), PoleTooClose);
}

TEST(LoopSystem, SegmentsAndTimes) {
  const SpherePoint c(0, 0, 1);
  const DiffeoTrace f = single(twist_map(disc_region(c, 0.2), 1.0), 2);
  const ConfigTuple x({point_at_polar(c, 0.2, 0.0), point_at_polar(c, 0.4, 2.0)});
  const ConfigTuple z({SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)});
  const LoopSystem loops = build_loops(f, x, z, {}, {});
  EXPECT_EQ(loops.samples(), 2 * loops.arc_steps() + f.steps() + 1);
  EXPECT_DOUBLE_EQ(loops.time(0), 0.0);
  EXPECT_DOUBLE_EQ(loops.time(loops.samples() - 1), 1.0);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(loops.at(i, 0), z[i]);
    EXPECT_EQ(loops.at(i, loops.arc_steps()), x[i]);
    EXPECT_EQ(loops.at(i, loops.samples() - 1), z[i]);
    EXPECT_LT((loops.at(i, loops.arc_steps() + f.steps()).vec() - f.apply(x[i]).vec()).norm(), 1e-14);
    EXPECT_LT((loops.at_time(i, 1.0 / 3.0, true).vec() - x[i].vec()).norm(), 1e-14);
    EXPECT_LT((loops.between(i, 3, 1.0).vec() - loops.at(i, 4).vec()).norm(), 1e-12);
  }
}

TEST(LoopSystem, SharedTrajectoryPrefix) {
  const SpherePoint c(0, 0, 1);
  const DiffeoTrace f = single(twist_map(disc_region(c, 0.2), 1.0));
  const DiffeoTrace f4 = f.power(4);
  const ConfigTuple x({point_at_polar(c, 0.2, 0.0), point_at_polar(c, 0.4, 2.0), SpherePoint(1, 0, 0)});
  const ConfigTuple z({point_at_polar(c, 1.0, 0.5), point_at_polar(c, 1.2, 2.5), SpherePoint(0, 1, 0)});
  std::vector<LoopSystem::Trajectory> traj;
  for (const auto& p : x) traj.push_back(std::make_shared<const std::vector<SpherePoint>>(f4.trajectory(p)));
  for (int p : {1, 2, 4}) {
    const DiffeoTrace fp = f.power(p);
    EXPECT_EQ(gamma(fp, x, z, c.antipode(), {}, traj).word, gamma(fp, x, z, c.antipode()).word) << p;
  }
}

TEST(DefaultPole, SingleAndMultipleCaps) {
  const SphericalCap a = disc_region(SpherePoint(0, 0, 1), 0.05);
  const SphericalCap caps1[] = {a};
  EXPECT_EQ(default_pole(caps1), a.center().antipode());
  const SphericalCap caps2[] = {a, disc_region(SpherePoint(0, 0, -1), 0.05)};
  const SpherePoint p = default_pole(caps2);
  EXPECT_GT(angle_between(p, caps2[0].center()), 1.2);
  EXPECT_GT(angle_between(p, caps2[1].center()), 1.2);
}

TEST(Scene, WritesOneCsvPerStrand) {
  const SpherePoint c(0, 0, 1);
  const DiffeoTrace f = single(twist_map(disc_region(c, 0.2), 1.0));
  const ConfigTuple x({point_at_polar(c, 0.2, 0.0), point_at_polar(c, 0.4, 2.0)});
  const ConfigTuple z({SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)});
  const LoopSystem loops = build_loops(f, x, z);
  const auto dir = std::filesystem::temp_directory_path() / "gg_scene_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_scene(loops, dir);
  for (int i = 0; i < 2; ++i) {
    std::ifstream in(dir / ("strand_" + std::to_string(i) + ".csv"));
    ASSERT_TRUE(in);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,x,y,z");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, loops.samples());
  }
  std::filesystem::remove_all(dir);
}
