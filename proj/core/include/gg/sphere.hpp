#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gg/random.hpp"

namespace gg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance on 1 + <a,b> below which two points count as antipodal.
inline constexpr double kAntipodalTolerance = 1e-9;

/// Default chordal collision tolerance for configuration tuples.
inline constexpr double kCollisionTolerance = 1e-9;

/// Point on the unit sphere. The stored vector has unit norm to machine
/// precision; every constructor renormalizes.
class SpherePoint {
 public:
  SpherePoint() : v_(0.0, 0.0, 1.0) {}
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }

  SpherePoint antipode() const { return from_unit(-v_); }

  /// Wraps a vector that is already unit length (no renormalization).
  static SpherePoint from_unit(const Vec3& v) {
    SpherePoint p;
    p.v_ = v;
    return p;
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.v_ == b.v_; }

 private:
  Vec3 v_;
};

/// Great-circle angle between two points, accurate for nearby and nearly
/// antipodal pairs alike.
double angle_between(const SpherePoint& a, const SpherePoint& b);

double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// Ordered tuple of pairwise distinct sphere points (a point of the
/// configuration space of n points).
class ConfigTuple {
 public:
  ConfigTuple() = default;
  /// Throws DegenerateConfig when two points are closer than `min_separation`
  /// (chordal) or when the tuple is empty.
  explicit ConfigTuple(std::vector<SpherePoint> points, double min_separation = kCollisionTolerance);

  std::size_t size() const { return points_.size(); }
  const SpherePoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const SpherePoint> points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  double min_pairwise_distance() const;

 private:
  std::vector<SpherePoint> points_;
};

/// Minimizing great-circle arc traversed at constant speed over [0, 1].
class GeodesicArc {
 public:
  GeodesicArc(const SpherePoint& a, const SpherePoint& b);

  const SpherePoint& start() const { return a_; }
  const SpherePoint& end() const { return b_; }
  double length() const { return angle_; }

  /// Point at parameter s in [0, 1]; returns the endpoints exactly at 0 and 1.
  SpherePoint at(double s) const;

 private:
  SpherePoint a_, b_;
  double angle_;
  Vec3 tangent_;  // unit tangent at a_ pointing towards b_
};

/// Throws AntipodalPair when 1 + <a,b> < tolerance.
GeodesicArc geodesic_arc(const SpherePoint& a, const SpherePoint& b,
                         double antipodal_tolerance = kAntipodalTolerance);

struct PlanarPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Stereographic chart from a pole onto the plane through the origin
/// orthogonal to it. The plane basis (e1, e2) satisfies e1 x e2 = pole, the
/// antipode of the pole maps to the origin and the pole's equator to the unit
/// circle.
class StereoFrame {
 public:
  explicit StereoFrame(const SpherePoint& pole, double pole_tolerance = kAntipodalTolerance);

  const SpherePoint& pole() const { return pole_; }
  const Vec3& e1() const { return e1_; }
  const Vec3& e2() const { return e2_; }

  /// Throws AtPole when 1 - <p,pole> < tolerance.
  PlanarPoint project(const SpherePoint& p) const;

  /// Inverse chart.
  SpherePoint lift(const PlanarPoint& q) const;

 private:
  SpherePoint pole_;
  Vec3 e1_, e2_;
  double tolerance_;
};

PlanarPoint stereo_project(const SpherePoint& p, const SpherePoint& pole);

/// Geodesic disc ("cap") around a center, measured in normalized area: the
/// whole sphere has area 1, so a cap of half-angle theta has area
/// (1 - cos theta) / 2.
class SphericalCap {
 public:
  SphericalCap(const SpherePoint& center, double area);

  const SpherePoint& center() const { return center_; }
  double area() const { return area_; }
  double half_angle() const { return half_angle_; }
  double cos_half_angle() const { return cos_half_angle_; }

  /// Closed cap membership.
  bool contains(const SpherePoint& p) const;
  /// Signed angular distance to the boundary circle, positive inside.
  double boundary_distance(const SpherePoint& p) const;

  SphericalCap complement() const { return SphericalCap(center_.antipode(), 1.0 - area_); }

  /// Area-uniform point of the cap.
  SpherePoint sample_inside(Rng& rng) const;
  /// Area-uniform point of the complement.
  SpherePoint sample_outside(Rng& rng) const;

 private:
  SpherePoint center_;
  double area_;
  double half_angle_;
  double cos_half_angle_;
};

/// Cap of the requested normalized area; requires 0 < area < 1.
SphericalCap disc_region(const SpherePoint& center, double area);

/// Half-angle of a cap of normalized area `area`.
double cap_half_angle(double area);

/// Area-uniform point on the sphere.
SpherePoint uniform_point(Rng& rng);

/// Point at angular distance `radius` from `center` in direction `azimuth`,
/// measured in a fixed frame around the center.
SpherePoint point_at_polar(const SpherePoint& center, double radius, double azimuth);

/// n independent area-uniform points, resampled while any pair is closer
/// than `collision_tolerance`. Throws DegenerateConfig after `retry_cap`
/// rejected draws, which signals a tolerance that is far too large.
ConfigTuple uniform_sample(Rng& rng, int n, double collision_tolerance = kCollisionTolerance,
                           int retry_cap = 1000);

/// Orthonormal frame (e1, e2, axis) with e1 x e2 = axis.
Mat3 frame_around(const Vec3& axis);

/// Rotation by `angle` about the unit `axis` (right-handed).
Mat3 rotation_about(const Vec3& axis, double angle);

/// Minimal rotation taking unit vector `from` to unit vector `to`.
Mat3 rotation_taking(const Vec3& from, const Vec3& to);

}  // namespace gg
