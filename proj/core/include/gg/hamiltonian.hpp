#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gg/sphere.hpp"

namespace gg {

/// Scale of the Hamiltonian vector field for the area form normalized to
/// total area 1: omega = dA / (4 pi), so X_H(p) = 4 pi * (p x grad H(p)) with
/// grad the Euclidean tangential gradient on the unit sphere.
inline constexpr double kAreaFormScale = 4.0 * std::numbers::pi;

struct IntegratorSettings {
  double step = 1e-3;
  /// Largest tolerated per-step renormalization correction | |p| - 1 |.
  double renormalization_tolerance = 1e-6;
};

/// Autonomous Hamiltonian on the sphere drawn from a small set of closed-form
/// model families. Values are immutable; transformations return new systems.
///
/// Sign convention: a twist with positive strength rotates points
/// counterclockwise about its center as seen from outside the sphere.
class HamiltonianSystem {
 public:
  /// H = value; the flow is the identity.
  static HamiltonianSystem constant(double value = 0.0);

  /// H(p) = coefficient * <axis, p>; the flow is the rigid rotation about
  /// `axis` with angular speed -4 pi * coefficient.
  static HamiltonianSystem height(const Vec3& axis, double coefficient);

  /// Radial bump H = -strength * r0^2 / 12 * (1 - r^2 / r0^2)^3 on the cap of
  /// geodesic radius r0 (zero outside). Its flow rotates the circle of radius r
  /// about the center with angular speed
  ///   Omega(r) = 2 pi * strength * (r / sin r) * (1 - r^2 / r0^2)^2,
  /// so `strength` is the number of turns per unit time at the center.
  static HamiltonianSystem twist(const SphericalCap& cap, double strength);

  double value(const SpherePoint& p) const;
  /// Tangential gradient of H.
  Vec3 gradient(const SpherePoint& p) const;
  /// X_H(p) = kAreaFormScale * (p x grad H(p)).
  Vec3 vector_field(const SpherePoint& p) const;

  /// Declared support cap (only twists declare one).
  std::optional<SphericalCap> support() const;

  bool is_constant() const { return std::holds_alternative<Constant>(model_); }

  /// Angular speed profile of a twist at cap radius r (0 outside the cap).
  double twist_angular_speed(double r) const;

  /// Same twist profile transported by the conformal radial map that shrinks
  /// the cap of area a to the concentric cap of area eps * a.
  HamiltonianSystem rescaled(double eps) const;

  /// H o R^{-1}: the system moved by the rotation R.
  HamiltonianSystem conjugated(const Mat3& rotation) const;

 private:
  struct Constant {
    double value;
  };
  struct Height {
    Vec3 axis;
    double coefficient;
  };
  struct Twist {
    SpherePoint center;
    double area;         // normalized area of the actual support cap
    double radius;       // geodesic radius of the actual support cap
    double cos_radius;
    double model_radius; // radius of the cap the profile was defined on
    double scale;        // stereographic dilation factor, 1 when unscaled
    double strength;
  };

  explicit HamiltonianSystem(std::variant<Constant, Height, Twist> model) : model_(std::move(model)) {}

  static double model_omega(const Twist& t, double rho);
  static double twist_value(const Twist& t, double r);

  std::variant<Constant, Height, Twist> model_;
};

Vec3 hamiltonian_vector_field(const HamiltonianSystem& h, const SpherePoint& p);

HamiltonianSystem twist_map(const SphericalCap& cap, double strength);

/// Requires a declared support cap and eps in (0, 1].
HamiltonianSystem rescale_support(const HamiltonianSystem& h, double eps);

HamiltonianSystem conjugate_by_rotation(const HamiltonianSystem& h, const Mat3& rotation);

/// Fixed-step RK4 time-t map with renormalization to the sphere after each
/// step; t may be negative. Throws StepSizeTooLarge when a renormalization
/// correction exceeds the configured tolerance.
SpherePoint flow(const HamiltonianSystem& h, double t, const SpherePoint& p,
                 const IntegratorSettings& settings = {});

/// A concatenated isotopy of autonomous flows sampled on a fixed grid.
///
/// Each unit of |exponent| is one unit-time flow (reversed for negative
/// exponents), run on its own time slot; the trace parameter in [0, 1] is the
/// global step index divided by `steps()`. For factors f_1, ..., f_m the time-1
/// map is f_1^{k_1} o ... o f_m^{k_m}: the last factor is traversed first.
class DiffeoTrace {
 public:
  DiffeoTrace() = default;
  DiffeoTrace(std::span<const HamiltonianSystem> factors, std::span<const int> exponents,
              const IntegratorSettings& settings = {});

  static DiffeoTrace identity(const IntegratorSettings& settings = {});

  bool is_identity() const { return units_.empty(); }
  std::size_t unit_count() const { return units_.size(); }
  std::size_t steps_per_unit() const { return steps_per_unit_; }
  /// Total number of grid steps; trajectories have steps() + 1 samples.
  std::size_t steps() const { return units_.size() * steps_per_unit_; }
  const IntegratorSettings& settings() const { return settings_; }

  SpherePoint apply(const SpherePoint& p) const;
  std::vector<SpherePoint> trajectory(const SpherePoint& p) const;
  /// Trajectory restricted to the first `units` units of time.
  std::vector<SpherePoint> trajectory_prefix(const SpherePoint& p, std::size_t units) const;

  /// State a fraction of the way through grid step `step`, starting from the
  /// sample `from` at the beginning of that step.
  SpherePoint advance(const SpherePoint& from, std::size_t step, double fraction) const;

  /// p-fold iterate; negative powers run the reversed isotopy.
  DiffeoTrace power(int p) const;
  DiffeoTrace inverse() const { return power(-1); }

  /// The map g o f as an isotopy: this trace's isotopy runs first.
  DiffeoTrace followed_by(const DiffeoTrace& g) const;

  /// True when every factor declares a support cap.
  bool support_declared() const;
  /// Caps of all factors (empty for the identity).
  std::vector<SphericalCap> support_caps() const;

 private:
  struct Unit {
    HamiltonianSystem system;
    int direction;
  };

  SpherePoint step_unit(const Unit& u, const Vec3& p, double dt) const;

  std::vector<Unit> units_;
  IntegratorSettings settings_;
  std::size_t steps_per_unit_ = 1000;
};

DiffeoTrace compose(std::span<const HamiltonianSystem> factors, std::span<const int> exponents,
                    const IntegratorSettings& settings = {});

/// Determinant of the differential of the time-1 map at p, in orthonormal
/// tangent frames, by central finite differences.
double jacobian_determinant(const DiffeoTrace& f, const SpherePoint& p, double delta = 1e-5);

}  // namespace gg
