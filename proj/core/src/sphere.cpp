#include "gg/sphere.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gg/errors.hpp"

namespace gg {

SpherePoint::SpherePoint(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("SpherePoint: zero or non-finite vector");
  }
  v_ = v / n;
}

double angle_between(const SpherePoint& a, const SpherePoint& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), a.vec().dot(b.vec()));
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  return (a.vec() - b.vec()).norm();
}

ConfigTuple::ConfigTuple(std::vector<SpherePoint> points, double min_separation)
    : points_(std::move(points)) {
  if (points_.empty()) throw DegenerateConfig("ConfigTuple: empty tuple");
  if (min_pairwise_distance() <= min_separation) {
    throw DegenerateConfig("ConfigTuple: points closer than the collision tolerance");
  }
}

double ConfigTuple::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      best = std::min(best, chordal_distance(points_[i], points_[j]));
    }
  }
  return best;
}

GeodesicArc::GeodesicArc(const SpherePoint& a, const SpherePoint& b)
    : a_(a), b_(b), angle_(angle_between(a, b)), tangent_(Vec3::Zero()) {
  const Vec3 w = b.vec() - a.vec().dot(b.vec()) * a.vec();
  const double wn = w.norm();
  if (wn > 0.0) tangent_ = w / wn;
}

SpherePoint GeodesicArc::at(double s) const {
  if (s <= 0.0) return a_;
  if (s >= 1.0) return b_;
  if (angle_ == 0.0) return a_;
  const double phi = s * angle_;
  return SpherePoint(std::cos(phi) * a_.vec() + std::sin(phi) * tangent_);
}

GeodesicArc geodesic_arc(const SpherePoint& a, const SpherePoint& b, double antipodal_tolerance) {
  if (1.0 + a.vec().dot(b.vec()) < antipodal_tolerance) {
    throw AntipodalPair("geodesic_arc: endpoints are antipodal");
  }
  return GeodesicArc(a, b);
}

Mat3 frame_around(const Vec3& axis) {
  // Least aligned coordinate axis as helper; deterministic for a given axis.
  Eigen::Index k = 0;
  if (std::abs(axis.y()) < std::abs(axis(k))) k = 1;
  if (std::abs(axis.z()) < std::abs(axis(k))) k = 2;
  const Vec3 helper = Vec3::Unit(k);
  const Vec3 e1 = (helper - helper.dot(axis) * axis).normalized();
  const Vec3 e2 = axis.cross(e1);
  Mat3 f;
  f.col(0) = e1;
  f.col(1) = e2;
  f.col(2) = axis;
  return f;
}

StereoFrame::StereoFrame(const SpherePoint& pole, double pole_tolerance)
    : pole_(pole), tolerance_(pole_tolerance) {
  const Mat3 f = frame_around(pole.vec());
  e1_ = f.col(0);
  e2_ = f.col(1);
}

PlanarPoint StereoFrame::project(const SpherePoint& p) const {
  const double denom = 1.0 - p.vec().dot(pole_.vec());
  if (denom < tolerance_) throw AtPole("stereo_project: point at the projection pole");
  return {p.vec().dot(e1_) / denom, p.vec().dot(e2_) / denom};
}

SpherePoint StereoFrame::lift(const PlanarPoint& q) const {
  const double r2 = q.u * q.u + q.v * q.v;
  const Vec3 v = (2.0 * q.u * e1_ + 2.0 * q.v * e2_ + (r2 - 1.0) * pole_.vec()) / (r2 + 1.0);
  return SpherePoint(v);
}

PlanarPoint stereo_project(const SpherePoint& p, const SpherePoint& pole) {
  return StereoFrame(pole).project(p);
}

double cap_half_angle(double area) { return std::acos(1.0 - 2.0 * area); }

SphericalCap::SphericalCap(const SpherePoint& center, double area)
    : center_(center), area_(area) {
  if (!(area > 0.0 && area < 1.0)) {
    throw std::invalid_argument("SphericalCap: area must lie in (0, 1)");
  }
  cos_half_angle_ = 1.0 - 2.0 * area;
  half_angle_ = std::acos(cos_half_angle_);
}

bool SphericalCap::contains(const SpherePoint& p) const {
  return p.vec().dot(center_.vec()) >= cos_half_angle_;
}

double SphericalCap::boundary_distance(const SpherePoint& p) const {
  return half_angle_ - angle_between(center_, p);
}

SpherePoint point_at_polar(const SpherePoint& center, double radius, double azimuth) {
  const Mat3 f = frame_around(center.vec());
  const double s = std::sin(radius);
  return SpherePoint(std::cos(radius) * center.vec() +
                     s * (std::cos(azimuth) * f.col(0) + std::sin(azimuth) * f.col(1)));
}

SpherePoint SphericalCap::sample_inside(Rng& rng) const {
  // Normalized area of the cap of radius r is (1 - cos r) / 2.
  const double cos_r = 1.0 - 2.0 * area_ * rng.uniform();
  const double azimuth = 2.0 * std::numbers::pi * rng.uniform();
  return point_at_polar(center_, std::acos(std::clamp(cos_r, -1.0, 1.0)), azimuth);
}

SpherePoint SphericalCap::sample_outside(Rng& rng) const {
  const double cos_r = 1.0 - 2.0 * (area_ + (1.0 - area_) * rng.uniform());
  const double azimuth = 2.0 * std::numbers::pi * rng.uniform();
  return point_at_polar(center_, std::acos(std::clamp(cos_r, -1.0, 1.0)), azimuth);
}

SphericalCap disc_region(const SpherePoint& center, double area) {
  return SphericalCap(center, area);
}

SpherePoint uniform_point(Rng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return SpherePoint(r * std::cos(phi), r * std::sin(phi), z);
}

ConfigTuple uniform_sample(Rng& rng, int n, double collision_tolerance, int retry_cap) {
  if (n < 1) throw std::invalid_argument("uniform_sample: n must be positive");
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    std::vector<SpherePoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(uniform_point(rng));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (chordal_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) <=
            collision_tolerance) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return ConfigTuple(std::move(pts), collision_tolerance);
  }
  throw DegenerateConfig("uniform_sample: retry cap exceeded; collision tolerance too large");
}

Mat3 rotation_about(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Mat3 rotation_taking(const Vec3& from, const Vec3& to) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const double c = a.dot(b);
  if (c < -1.0 + 1e-12) {
    // Half turn about any axis orthogonal to `from`.
    return rotation_about(frame_around(a).col(0), std::numbers::pi);
  }
  return Eigen::Quaterniond::FromTwoVectors(a, b).toRotationMatrix();
}

}  // namespace gg
