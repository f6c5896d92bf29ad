#include "gg/braid_trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <stdexcept>

#include "gg/errors.hpp"

namespace gg {

LoopSystem::LoopSystem(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z, int arc_steps,
                       std::vector<Trajectory> trajectories)
    : f_(f),
      x_(x),
      z_(z),
      middle_(std::move(trajectories)),
      arc_steps_(static_cast<std::size_t>(arc_steps)),
      middle_steps_(f.steps()) {
  if (x.size() != z.size()) throw std::invalid_argument("build_loops: x and z differ in size");
  if (arc_steps < 1) throw std::invalid_argument("build_loops: arc_steps must be positive");
  if (middle_.empty()) {
    for (const SpherePoint& p : x_) middle_.push_back(std::make_shared<const std::vector<SpherePoint>>(f_.trajectory(p)));
  }
  if (middle_.size() != x_.size()) throw std::invalid_argument("build_loops: one trajectory per strand required");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (middle_[i]->size() < middle_steps_ + 1 || !((*middle_[i])[0] == x_[i])) {
      throw std::invalid_argument("build_loops: trajectory does not match the trace");
    }
    alpha_.push_back(geodesic_arc(z_[i], x_[i]));
    beta_.push_back(geodesic_arc((*middle_[i])[middle_steps_], z_[i]));
  }
}

double LoopSystem::time(std::size_t k) const {
  const auto s = static_cast<double>(arc_steps_);
  if (k <= arc_steps_) return static_cast<double>(k) / s / 3.0;
  if (k <= arc_steps_ + middle_steps_) {
    return (1.0 + static_cast<double>(k - arc_steps_) / static_cast<double>(middle_steps_)) / 3.0;
  }
  return (2.0 + static_cast<double>(k - arc_steps_ - middle_steps_) / s) / 3.0;
}

SpherePoint LoopSystem::at(std::size_t strand, std::size_t k) const {
  const auto s = static_cast<double>(arc_steps_);
  if (k <= arc_steps_) return alpha_[strand].at(static_cast<double>(k) / s);
  if (k <= arc_steps_ + middle_steps_) return (*middle_[strand])[k - arc_steps_];
  return beta_[strand].at(static_cast<double>(k - arc_steps_ - middle_steps_) / s);
}

SpherePoint LoopSystem::between(std::size_t strand, std::size_t k, double fraction) const {
  const auto s = static_cast<double>(arc_steps_);
  if (k < arc_steps_) return alpha_[strand].at((static_cast<double>(k) + fraction) / s);
  if (k < arc_steps_ + middle_steps_) {
    const std::size_t step = k - arc_steps_;
    return f_.advance((*middle_[strand])[step], step, fraction);
  }
  return beta_[strand].at((static_cast<double>(k - arc_steps_ - middle_steps_) + fraction) / s);
}

SpherePoint LoopSystem::at_time(std::size_t strand, double t, bool from_left) const {
  const double t3 = 3.0 * t;
  if (t3 < 1.0 || (t3 == 1.0 && from_left)) return alpha_[strand].at(t3);
  if (t3 < 2.0 || (t3 == 2.0 && from_left)) {
    const double local = (t3 - 1.0) * static_cast<double>(middle_steps_);
    auto step = static_cast<std::size_t>(std::floor(local));
    if (step >= middle_steps_) return (*middle_[strand])[middle_steps_];
    return f_.advance((*middle_[strand])[step], step, local - static_cast<double>(step));
  }
  return beta_[strand].at(t3 - 2.0);
}

LoopSystem build_loops(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z,
                       const ExtractionSettings& settings, std::vector<LoopSystem::Trajectory> trajectories) {
  LoopSystem loops(f, x, z, settings.arc_steps, std::move(trajectories));
  const std::size_t n = loops.strands();
  std::vector<SpherePoint> pts(n);
  for (std::size_t k = 0; k < loops.samples(); ++k) {
    for (std::size_t i = 0; i < n; ++i) pts[i] = loops.at(i, k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (chordal_distance(pts[i], pts[j]) <= settings.collision_tolerance) {
          throw DegenerateConfig("build_loops: strands " + std::to_string(i) + " and " + std::to_string(j) +
                                 " collide at t = " + std::to_string(loops.time(k)));
        }
      }
    }
  }
  return loops;
}

namespace {

class Extractor {
 public:
  Extractor(const LoopSystem& loops, const SpherePoint& pole, const ExtractionSettings& settings)
      : loops_(loops), frame_(pole, 0.0), pole_(pole), settings_(settings), n_(loops.strands()) {}

  Extraction run() {
    std::vector<PlanarPoint> lo = project_sample(0);
    std::vector<int> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return lo[static_cast<std::size_t>(a)].u < lo[static_cast<std::size_t>(b)].u;
    });
    for (std::size_t r = 0; r + 1 < n_; ++r) {
      if (!(lo[static_cast<std::size_t>(order[r])].u < lo[static_cast<std::size_t>(order[r + 1])].u)) {
        throw UnresolvedCrossing("extract_braid: basepoints share a projected coordinate");
      }
    }
    rank_strand_ = order;
    strand_rank_.assign(n_, 0);
    for (std::size_t r = 0; r < n_; ++r) strand_rank_[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
    out_.initial_order = order;

    for (std::size_t k = 0; k + 1 < loops_.samples(); ++k) {
      std::vector<PlanarPoint> hi = project_sample(k + 1);
      process(k, 0.0, 1.0, lo, hi, 0);
      lo = std::move(hi);
    }

    std::vector<int> letters;
    letters.reserve(out_.events.size());
    for (const auto& e : out_.events) letters.push_back(e.sign * e.rank);
    out_.raw = BraidWord(static_cast<int>(n_), std::move(letters));
    if (!permutation(out_.raw).is_identity() || rank_strand_ != out_.initial_order) {
      throw InvariantViolation("extract_braid: extracted braid is not pure");
    }
    out_.word = out_.raw.reduced();
    return std::move(out_);
  }

 private:
  PlanarPoint project(const SpherePoint& p) const {
    if (1.0 - p.vec().dot(pole_.vec()) < settings_.pole_clearance) {
      throw PoleTooClose("extract_braid: a loop passes too close to the projection pole");
    }
    return frame_.project(p);
  }

  std::vector<PlanarPoint> project_sample(std::size_t k) const {
    std::vector<PlanarPoint> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = project(loops_.at(i, k));
    return out;
  }

  double time_at(std::size_t k, double fraction) const {
    const double t0 = loops_.time(k);
    return t0 + fraction * (loops_.time(k + 1) - t0);
  }

  struct Pending {
    double s;
    int left, right;
    double v_left, v_right;
  };

  // Tries to resolve all swaps between two sample states; false if ambiguous.
  bool resolve(const std::vector<PlanarPoint>& lo, const std::vector<PlanarPoint>& hi, std::vector<Pending>& out) const {
    out.clear();
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        const double d0 = lo[a].u - lo[b].u;
        const double d1 = hi[a].u - hi[b].u;
        if (d0 == 0.0 || d1 == 0.0) return false;
        if ((d0 < 0.0) == (d1 < 0.0)) continue;
        const double s = d0 / (d0 - d1);
        const std::size_t l = d0 < 0.0 ? a : b;
        const std::size_t r = d0 < 0.0 ? b : a;
        const double vl = lo[l].v + s * (hi[l].v - lo[l].v);
        const double vr = lo[r].v + s * (hi[r].v - lo[r].v);
        if (std::abs(vl - vr) <= 1e-12 * (1.0 + std::abs(vl))) return false;
        out.push_back({s, static_cast<int>(l), static_cast<int>(r), vl, vr});
      }
    }
    std::sort(out.begin(), out.end(), [](const Pending& x, const Pending& y) { return x.s < y.s; });
    std::vector<int> rank = strand_rank_;
    for (std::size_t e = 0; e < out.size(); ++e) {
      const auto l = static_cast<std::size_t>(out[e].left);
      const auto r = static_cast<std::size_t>(out[e].right);
      if (rank[l] + 1 != rank[r]) return false;
      if (e > 0 && out[e].s == out[e - 1].s) return false;
      std::swap(rank[l], rank[r]);
    }
    // The resulting rank order must agree with the order at the end state.
    std::vector<int> by_rank(n_);
    for (std::size_t i = 0; i < n_; ++i) by_rank[static_cast<std::size_t>(rank[i])] = static_cast<int>(i);
    for (std::size_t q = 0; q + 1 < n_; ++q) {
      if (!(hi[static_cast<std::size_t>(by_rank[q])].u < hi[static_cast<std::size_t>(by_rank[q + 1])].u)) return false;
    }
    return true;
  }

  void process(std::size_t k, double f_lo, double f_hi, const std::vector<PlanarPoint>& lo,
               const std::vector<PlanarPoint>& hi, int depth) {
    std::vector<Pending> pending;
    if (resolve(lo, hi, pending)) {
      for (const Pending& p : pending) {
        const auto l = static_cast<std::size_t>(p.left);
        const auto r = static_cast<std::size_t>(p.right);
        const int rank = strand_rank_[l] + 1;
        const double t = time_at(k, f_lo + p.s * (f_hi - f_lo));
        out_.events.push_back({t, rank, p.left, p.right, p.v_left > p.v_right ? 1 : -1});
        std::swap(strand_rank_[l], strand_rank_[r]);
        std::swap(rank_strand_[static_cast<std::size_t>(rank - 1)], rank_strand_[static_cast<std::size_t>(rank)]);
      }
      return;
    }
    if (depth >= settings_.max_refinements) {
      throw UnresolvedCrossing("extract_braid: ambiguous crossing near t = " + std::to_string(time_at(k, f_lo)));
    }
    ++out_.refinements;
    const double f_mid = 0.5 * (f_lo + f_hi);
    std::vector<PlanarPoint> mid(n_);
    for (std::size_t i = 0; i < n_; ++i) mid[i] = project(loops_.between(i, k, f_mid));
    process(k, f_lo, f_mid, lo, mid, depth + 1);
    process(k, f_mid, f_hi, mid, hi, depth + 1);
  }

  const LoopSystem& loops_;
  StereoFrame frame_;
  SpherePoint pole_;
  ExtractionSettings settings_;
  std::size_t n_;
  std::vector<int> rank_strand_;
  std::vector<int> strand_rank_;
  Extraction out_;
};

}  // namespace

Extraction extract_braid(const LoopSystem& loops, const SpherePoint& pole, const ExtractionSettings& settings) {
  return Extractor(loops, pole, settings).run();
}

SpherePoint default_pole(std::span<const SphericalCap> caps) {
  if (caps.empty()) return SpherePoint(0.0, 0.0, 1.0);
  if (caps.size() == 1) return caps[0].center().antipode();
  constexpr int kCandidates = 256;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  SpherePoint best;
  double best_score = -1e300;
  for (int k = 0; k < kCandidates; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / kCandidates;
    const double r = std::sqrt(1.0 - z * z);
    const SpherePoint c(r * std::cos(golden * k), r * std::sin(golden * k), z);
    double score = 1e300;
    for (const auto& cap : caps) score = std::min(score, angle_between(c, cap.center()) - cap.half_angle());
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

Extraction gamma(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z, const SpherePoint& pole,
                 const ExtractionSettings& settings, std::vector<LoopSystem::Trajectory> trajectories) {
  ExtractionSettings s = settings;
  for (int attempt = 0;; ++attempt) {
    try {
      const LoopSystem loops = build_loops(f, x, z, s, trajectories);
      return extract_braid(loops, pole, s);
    } catch (const UnresolvedCrossing&) {
      if (attempt >= settings.retries) throw;
      s.arc_steps *= 2;
    }
  }
}

void write_scene(const LoopSystem& loops, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < loops.strands(); ++i) {
    std::ofstream out(dir / ("strand_" + std::to_string(i) + ".csv"));
    if (!out) throw std::runtime_error("write_scene: cannot open output in " + dir.string());
    out << "t,x,y,z\n" << std::setprecision(17);
    for (std::size_t k = 0; k < loops.samples(); ++k) {
      const SpherePoint p = loops.at(i, k);
      out << loops.time(k) << ',' << p.x() << ',' << p.y() << ',' << p.z() << '\n';
    }
  }
}

}  // namespace gg
