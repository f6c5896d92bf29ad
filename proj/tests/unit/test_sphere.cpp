#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gg/errors.hpp"
#include "gg/random.hpp"
#include "gg/sphere.hpp"
#include "oracles.hpp"

using namespace gg;

namespace {

SpherePoint random_point(Rng& rng) { return uniform_point(rng); }

}  // namespace

TEST(SpherePoint, ConstructorNormalizes) {
  const SpherePoint p(3.0, 0.0, 4.0);
  EXPECT_NEAR(p.vec().norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.x(), 0.6, 1e-15);
  EXPECT_EQ(p.antipode().antipode(), p);
}

TEST(SpherePoint, AngleBetweenNearAndFar) {
  const SpherePoint n(0, 0, 1);
  EXPECT_DOUBLE_EQ(angle_between(n, n), 0.0);
  EXPECT_NEAR(angle_between(n, n.antipode()), std::numbers::pi, 1e-15);
  const SpherePoint q(std::sin(1e-9), 0, std::cos(1e-9));
  EXPECT_NEAR(angle_between(n, q), 1e-9, 1e-20);
  EXPECT_NEAR(chordal_distance(n, n.antipode()), 2.0, 1e-15);
}

TEST(ConfigTuple, RejectsCollisions) {
  const SpherePoint a(0, 0, 1);
  EXPECT_THROW(ConfigTuple({a, a}), DegenerateConfig);
  EXPECT_THROW(ConfigTuple(std::vector<SpherePoint>{}), DegenerateConfig);
  const ConfigTuple t({a, a.antipode()});
  EXPECT_NEAR(t.min_pairwise_distance(), 2.0, 1e-15);
}

TEST(GeodesicArc, MatchesSlerp) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const SpherePoint a = random_point(rng), b = random_point(rng);
    if (a.vec().dot(b.vec()) < -0.999) continue;
    const GeodesicArc arc = geodesic_arc(a, b);
    EXPECT_EQ(arc.at(0.0), a);
    EXPECT_EQ(arc.at(1.0), b);
    for (double s : {0.1, 0.37, 0.5, 0.9}) {
      EXPECT_LT((arc.at(s).vec() - oracle::slerp(a.vec(), b.vec(), s)).norm(), 1e-12);
    }
    EXPECT_NEAR(arc.length(), angle_between(a, b), 1e-14);
  }
}

TEST(GeodesicArc, AntipodalThrows) {
  const SpherePoint a(0.3, -0.2, 0.9);
  EXPECT_THROW(geodesic_arc(a, a.antipode()), AntipodalPair);
}

TEST(StereoFrame, ProjectLiftRoundTripAndOrientation) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint pole = random_point(rng);
    const StereoFrame f(pole);
    EXPECT_LT((f.e1().cross(f.e2()) - pole.vec()).norm(), 1e-14);
    const PlanarPoint o = f.project(pole.antipode());
    EXPECT_NEAR(std::hypot(o.u, o.v), 0.0, 1e-14);
    for (int k = 0; k < 20; ++k) {
      const SpherePoint p = random_point(rng);
      if (angle_between(p, pole) < 1e-3) continue;
      EXPECT_LT((f.lift(f.project(p)).vec() - p.vec()).norm(), 1e-10);
    }
    EXPECT_THROW(f.project(pole), AtPole);
  }
}

TEST(StereoFrame, EquatorMapsToUnitCircle) {
  const SpherePoint pole(0, 0, 1);
  for (double phi = 0; phi < 6.28; phi += 0.5) {
    const PlanarPoint q = stereo_project(SpherePoint(std::cos(phi), std::sin(phi), 0), pole);
    EXPECT_NEAR(std::hypot(q.u, q.v), 1.0, 1e-14);
  }
}

TEST(SphericalCap, AreaAndHalfAngle) {
  for (double a : {0.01, 0.05, 0.1, 0.5, 0.9}) {
    const double th = cap_half_angle(a);
    EXPECT_NEAR(oracle::cap_area(th), a, 1e-14);
    const SphericalCap c = disc_region(SpherePoint(0, 1, 0), a);
    EXPECT_NEAR(c.half_angle(), th, 1e-14);
    EXPECT_NEAR(c.complement().area(), 1.0 - a, 1e-15);
  }
  EXPECT_THROW(disc_region(SpherePoint(0, 0, 1), 0.0), std::invalid_argument);
  EXPECT_THROW(disc_region(SpherePoint(0, 0, 1), 1.0), std::invalid_argument);
}

TEST(SphericalCap, BoundaryDistanceSign) {
  const SphericalCap c = disc_region(SpherePoint(0, 0, 1), 0.25);
  EXPECT_GT(c.boundary_distance(SpherePoint(0, 0, 1)), 0.0);
  EXPECT_NEAR(c.boundary_distance(SpherePoint(0, 0, 1)), c.half_angle(), 1e-14);
  EXPECT_LT(c.boundary_distance(SpherePoint(0, 0, -1)), 0.0);
  EXPECT_TRUE(c.contains(point_at_polar(c.center(), c.half_angle() * 0.999, 1.0)));
  EXPECT_FALSE(c.contains(point_at_polar(c.center(), c.half_angle() * 1.001, 1.0)));
}

// Area-uniform sampling: the fraction landing in a sub-cap equals its area
// relative to the sampled region.
TEST(Sampling, UniformFractionsMatchAreas) {
  Rng rng(11);
  const SphericalCap probe = disc_region(SpherePoint(1, 0, 0), 0.2);
  const int N = 40000;
  int hits = 0;
  for (int i = 0; i < N; ++i) hits += probe.contains(uniform_point(rng)) ? 1 : 0;
  const double se = std::sqrt(0.2 * 0.8 / N);
  EXPECT_NEAR(hits / double(N), 0.2, 4 * se);

  const SphericalCap cap = disc_region(SpherePoint(0, 0, 1), 0.3);
  const SphericalCap inner = disc_region(SpherePoint(0, 0, 1), 0.1);
  int in = 0, out_ok = 0;
  for (int i = 0; i < N; ++i) {
    const SpherePoint p = cap.sample_inside(rng);
    EXPECT_TRUE(cap.contains(p));
    in += inner.contains(p) ? 1 : 0;
    out_ok += cap.contains(cap.sample_outside(rng)) ? 0 : 1;
  }
  EXPECT_EQ(out_ok, N);
  const double frac = 1.0 / 3.0;
  EXPECT_NEAR(in / double(N), frac, 4 * std::sqrt(frac * (1 - frac) / N));
}

TEST(Sampling, UniformSampleIsSeedDeterministic) {
  Rng a(5), b(5);
  const ConfigTuple x = uniform_sample(a, 6), y = uniform_sample(b, 6);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(x[i], y[i]);
  Rng c(5);
  EXPECT_THROW(uniform_sample(c, 3, 3.0, 10), DegenerateConfig);
}

TEST(Rotations, FrameAndRotationTaking) {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const SpherePoint a = random_point(rng), b = random_point(rng);
    const Mat3 F = frame_around(a.vec());
    EXPECT_LT((F.transpose() * F - Mat3::Identity()).norm(), 1e-13);
    EXPECT_LT((F.col(0).cross(F.col(1)) - a.vec()).norm(), 1e-13);
    const Mat3 R = rotation_taking(a.vec(), b.vec());
    EXPECT_LT((R * a.vec() - b.vec()).norm(), 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
  }
  const Vec3 n(0, 0, 1);
  const Mat3 R = rotation_taking(n, -n);
  EXPECT_LT((R * n + n).norm(), 1e-12);
  const Mat3 Q = rotation_about(n, std::numbers::pi / 2);
  EXPECT_LT((Q * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm(), 1e-15);
}

TEST(Rng, StreamsAreDistinctAndReproducible) {
  Rng a = Rng::stream(1, 0), b = Rng::stream(1, 1), c = Rng::stream(1, 0);
  const auto x = a.next();
  EXPECT_NE(x, b.next());
  EXPECT_EQ(x, c.next());
  Rng r(2);
  for (int i = 0; i < 1000; ++i) {
    const int v = r.uniform_int(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
