#include "gg/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "gg/errors.hpp"

namespace gg {

namespace {

constexpr int kQuadratureNodes = 16;

struct GaussLegendre {
  std::array<double, kQuadratureNodes> x{};
  std::array<double, kQuadratureNodes> w{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = [] {
    GaussLegendre r;
    constexpr int n = kQuadratureNodes;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.x[static_cast<std::size_t>(i)] = x;
      r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// rho / sin(rho), with the series near 0.
double rho_over_sin(double rho) {
  if (rho < 1e-4) return 1.0 + rho * rho / 6.0;
  return rho / std::sin(rho);
}

}  // namespace

HamiltonianSystem HamiltonianSystem::constant(double value) { return HamiltonianSystem(Constant{value}); }

HamiltonianSystem HamiltonianSystem::height(const Vec3& axis, double coefficient) {
  return HamiltonianSystem(Height{axis.normalized(), coefficient});
}

HamiltonianSystem HamiltonianSystem::twist(const SphericalCap& cap, double strength) {
  if (strength == 0.0) throw std::invalid_argument("twist_map: strength must be nonzero");
  return HamiltonianSystem(Twist{cap.center(), cap.area(), cap.half_angle(), cap.cos_half_angle(),
                                 cap.half_angle(), 1.0, strength});
}

double HamiltonianSystem::model_omega(const Twist& t, double rho) {
  const double q = 1.0 - (rho * rho) / (t.model_radius * t.model_radius);
  if (q <= 0.0) return 0.0;
  return 2.0 * std::numbers::pi * t.strength * rho_over_sin(rho) * q * q;
}

double HamiltonianSystem::twist_angular_speed(double r) const {
  const auto* t = std::get_if<Twist>(&model_);
  if (t == nullptr || r >= t->radius) return 0.0;
  const double rho = t->scale == 1.0 ? r : 2.0 * std::atan(std::tan(0.5 * r) / t->scale);
  return model_omega(*t, rho);
}

double HamiltonianSystem::twist_value(const Twist& t, double r) {
  if (r >= t.radius) return 0.0;
  if (t.scale == 1.0) {
    const double q = 1.0 - (r * r) / (t.model_radius * t.model_radius);
    return -t.strength * t.model_radius * t.model_radius / 12.0 * q * q * q;
  }
  // G(r) = -int_r^R G'(u) du with G'(u) = Omega(u) sin(u) / (4 pi).
  const auto& gl = gauss_legendre();
  const double half = 0.5 * (t.radius - r);
  const double mid = 0.5 * (t.radius + r);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double u = mid + half * gl.x[i];
    const double rho = 2.0 * std::atan(std::tan(0.5 * u) / t.scale);
    acc += gl.w[i] * model_omega(t, rho) * std::sin(u);
  }
  return -half * acc / kAreaFormScale;
}

double HamiltonianSystem::value(const SpherePoint& p) const {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Constant>) {
          return m.value;
        } else if constexpr (std::is_same_v<M, Height>) {
          return m.coefficient * m.axis.dot(p.vec());
        } else {
          return twist_value(m, angle_between(m.center, p));
        }
      },
      model_);
}

Vec3 HamiltonianSystem::gradient(const SpherePoint& p) const {
  const Vec3& x = p.vec();
  return std::visit(
      [&](const auto& m) -> Vec3 {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Constant>) {
          return Vec3::Zero();
        } else if constexpr (std::is_same_v<M, Height>) {
          return m.coefficient * (m.axis - m.axis.dot(x) * x);
        } else {
          const Vec3& c = m.center.vec();
          if (x.dot(c) < m.cos_radius) return Vec3::Zero();
          // grad G(r) = G'(r) grad r, grad r = -(c - <c,p> p) / sin r.
          const double omega = twist_angular_speed(angle_between(m.center, p));
          return -omega / kAreaFormScale * (c - c.dot(x) * x);
        }
      },
      model_);
}

Vec3 HamiltonianSystem::vector_field(const SpherePoint& p) const {
  return kAreaFormScale * p.vec().cross(gradient(p));
}

std::optional<SphericalCap> HamiltonianSystem::support() const {
  if (const auto* t = std::get_if<Twist>(&model_)) return SphericalCap(t->center, t->area);
  return std::nullopt;
}

HamiltonianSystem HamiltonianSystem::rescaled(double eps) const {
  const auto* t = std::get_if<Twist>(&model_);
  if (t == nullptr) throw NoSupportDeclared("rescale_support: system has no support cap");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("rescale_support: eps must lie in (0, 1]");
  if (eps == 1.0) return *this;
  Twist r = *t;
  r.area = t->area * eps;
  r.cos_radius = 1.0 - 2.0 * r.area;
  r.radius = std::acos(r.cos_radius);
  r.scale = std::tan(0.5 * r.radius) / std::tan(0.5 * t->model_radius);
  return HamiltonianSystem(r);
}

HamiltonianSystem HamiltonianSystem::conjugated(const Mat3& rotation) const {
  return std::visit(
      [&](const auto& m) -> HamiltonianSystem {
        using M = std::decay_t<decltype(m)>;
        M moved = m;
        if constexpr (std::is_same_v<M, Height>) {
          moved.axis = rotation * m.axis;
        } else if constexpr (std::is_same_v<M, Twist>) {
          moved.center = SpherePoint(rotation * m.center.vec());
        }
        return HamiltonianSystem(moved);
      },
      model_);
}

Vec3 hamiltonian_vector_field(const HamiltonianSystem& h, const SpherePoint& p) { return h.vector_field(p); }

HamiltonianSystem twist_map(const SphericalCap& cap, double strength) {
  return HamiltonianSystem::twist(cap, strength);
}

HamiltonianSystem rescale_support(const HamiltonianSystem& h, double eps) { return h.rescaled(eps); }

HamiltonianSystem conjugate_by_rotation(const HamiltonianSystem& h, const Mat3& rotation) {
  return h.conjugated(rotation);
}

namespace {

// Field evaluated at a possibly off-sphere RK stage point: the direction picks
// the angular speed, the raw vector enters the cross product, so rigid
// rotations stay linear.
Vec3 stage_field(const HamiltonianSystem& h, const Vec3& q) {
  const SpherePoint dir(q);
  const Vec3 g = h.gradient(dir);
  return kAreaFormScale * q.cross(g);
}

Vec3 rk4_step(const HamiltonianSystem& h, const Vec3& p, double dt, double tolerance) {
  const Vec3 k1 = stage_field(h, p);
  const Vec3 k2 = stage_field(h, p + 0.5 * dt * k1);
  const Vec3 k3 = stage_field(h, p + 0.5 * dt * k2);
  const Vec3 k4 = stage_field(h, p + dt * k3);
  const Vec3 next = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const double n = next.norm();
  if (std::abs(n - 1.0) > tolerance) {
    throw StepSizeTooLarge("flow: renormalization correction exceeds tolerance; reduce the step");
  }
  return next / n;
}

bool never_moves(const HamiltonianSystem& h, const Vec3& p) {
  if (h.is_constant()) return true;
  const auto cap = h.support();
  return cap && p.dot(cap->center().vec()) < cap->cos_half_angle();
}

std::size_t steps_for(double length, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("integrator step must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / h - 1e-9)));
}

}  // namespace

SpherePoint flow(const HamiltonianSystem& h, double t, const SpherePoint& p, const IntegratorSettings& settings) {
  if (t == 0.0 || never_moves(h, p.vec())) return p;
  const std::size_t n = steps_for(std::abs(t), settings.step);
  const double dt = t / static_cast<double>(n);
  Vec3 x = p.vec();
  for (std::size_t i = 0; i < n; ++i) x = rk4_step(h, x, dt, settings.renormalization_tolerance);
  return SpherePoint::from_unit(x);
}

DiffeoTrace::DiffeoTrace(std::span<const HamiltonianSystem> factors, std::span<const int> exponents,
                         const IntegratorSettings& settings)
    : settings_(settings), steps_per_unit_(steps_for(1.0, settings.step)) {
  if (factors.size() != exponents.size()) {
    throw std::invalid_argument("compose: factor and exponent lists differ in length");
  }
  // The rightmost factor acts first, so it is traversed first.
  for (std::size_t i = factors.size(); i-- > 0;) {
    const int k = exponents[i];
    for (int j = 0; j < std::abs(k); ++j) units_.push_back({factors[i], k > 0 ? 1 : -1});
  }
}

DiffeoTrace DiffeoTrace::identity(const IntegratorSettings& settings) { return DiffeoTrace({}, {}, settings); }

SpherePoint DiffeoTrace::step_unit(const Unit& u, const Vec3& p, double dt) const {
  return SpherePoint::from_unit(rk4_step(u.system, p, dt * u.direction, settings_.renormalization_tolerance));
}

std::vector<SpherePoint> DiffeoTrace::trajectory_prefix(const SpherePoint& p, std::size_t units) const {
  units = std::min(units, units_.size());
  std::vector<SpherePoint> out;
  out.reserve(units * steps_per_unit_ + 1);
  out.push_back(p);
  const double dt = 1.0 / static_cast<double>(steps_per_unit_);
  for (std::size_t u = 0; u < units; ++u) {
    const Unit& unit = units_[u];
    if (never_moves(unit.system, out.back().vec())) {
      out.insert(out.end(), steps_per_unit_, out.back());
      continue;
    }
    for (std::size_t s = 0; s < steps_per_unit_; ++s) out.push_back(step_unit(unit, out.back().vec(), dt));
  }
  return out;
}

std::vector<SpherePoint> DiffeoTrace::trajectory(const SpherePoint& p) const {
  return trajectory_prefix(p, units_.size());
}

SpherePoint DiffeoTrace::apply(const SpherePoint& p) const {
  SpherePoint x = p;
  const double dt = 1.0 / static_cast<double>(steps_per_unit_);
  for (const Unit& unit : units_) {
    if (never_moves(unit.system, x.vec())) continue;
    for (std::size_t s = 0; s < steps_per_unit_; ++s) x = step_unit(unit, x.vec(), dt);
  }
  return x;
}

SpherePoint DiffeoTrace::advance(const SpherePoint& from, std::size_t step, double fraction) const {
  if (fraction <= 0.0 || units_.empty()) return from;
  const Unit& unit = units_.at(std::min(step / steps_per_unit_, units_.size() - 1));
  if (never_moves(unit.system, from.vec())) return from;
  return step_unit(unit, from.vec(), fraction / static_cast<double>(steps_per_unit_));
}

DiffeoTrace DiffeoTrace::power(int p) const {
  DiffeoTrace out;
  out.settings_ = settings_;
  out.steps_per_unit_ = steps_per_unit_;
  if (p >= 0) {
    for (int i = 0; i < p; ++i) out.units_.insert(out.units_.end(), units_.begin(), units_.end());
    return out;
  }
  std::vector<Unit> reversed(units_.rbegin(), units_.rend());
  for (Unit& u : reversed) u.direction = -u.direction;
  for (int i = 0; i < -p; ++i) out.units_.insert(out.units_.end(), reversed.begin(), reversed.end());
  return out;
}

DiffeoTrace DiffeoTrace::followed_by(const DiffeoTrace& g) const {
  if (g.steps_per_unit_ != steps_per_unit_ && !g.units_.empty() && !units_.empty()) {
    throw std::invalid_argument("DiffeoTrace: cannot concatenate traces with different grids");
  }
  DiffeoTrace out = *this;
  if (units_.empty()) out = g;
  else out.units_.insert(out.units_.end(), g.units_.begin(), g.units_.end());
  return out;
}

bool DiffeoTrace::support_declared() const {
  for (const Unit& u : units_) {
    if (!u.system.support()) return false;
  }
  return true;
}

std::vector<SphericalCap> DiffeoTrace::support_caps() const {
  std::vector<SphericalCap> caps;
  for (const Unit& u : units_) {
    auto c = u.system.support();
    if (!c) continue;
    bool seen = false;
    for (const auto& k : caps) {
      if (k.center() == c->center() && k.area() == c->area()) seen = true;
    }
    if (!seen) caps.push_back(*c);
  }
  return caps;
}

DiffeoTrace compose(std::span<const HamiltonianSystem> factors, std::span<const int> exponents,
                    const IntegratorSettings& settings) {
  if (factors.empty()) throw std::invalid_argument("compose: empty factor list");
  return DiffeoTrace(factors, exponents, settings);
}

double jacobian_determinant(const DiffeoTrace& f, const SpherePoint& p, double delta) {
  const Mat3 src = frame_around(p.vec());
  const SpherePoint fp = f.apply(p);
  const Mat3 dst = frame_around(fp.vec());
  Eigen::Matrix2d jac;
  for (int k = 0; k < 2; ++k) {
    const Vec3 dir = src.col(k);
    const Vec3 plus = f.apply(SpherePoint(p.vec() + delta * dir)).vec();
    const Vec3 minus = f.apply(SpherePoint(p.vec() - delta * dir)).vec();
    const Vec3 d = (plus - minus) / (2.0 * delta);
    jac(0, k) = d.dot(dst.col(0));
    jac(1, k) = d.dot(dst.col(1));
  }
  // p + delta e is off the sphere by O(delta^2) before renormalization, which
  // does not affect the first-order difference.
  return jac.determinant();
}

}  // namespace gg
