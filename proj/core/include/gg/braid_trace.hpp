#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "gg/braid.hpp"
#include "gg/hamiltonian.hpp"
#include "gg/sphere.hpp"

namespace gg {

struct ExtractionSettings {
  /// Samples per geodesic segment (the middle segment uses the trace grid).
  int arc_steps = 64;
  /// Minimum 1 - <p, pole> along every loop.
  double pole_clearance = 1e-6;
  /// Chordal distance below which two strands count as colliding.
  double collision_tolerance = kCollisionTolerance;
  /// Interval halvings tried before giving up on an ambiguous step.
  int max_refinements = 6;
  /// Retries in gamma() with doubled arc sampling after UnresolvedCrossing.
  int retries = 2;
};

/// The loops t -> (alpha, f_t, beta) of an n-tuple, sampled on a common grid:
/// samples [0, S] trace the geodesics z_i -> x_i (time [0, 1/3]), samples
/// [S, S + K] the trajectories f_t(x_i) (time [1/3, 2/3], K trace steps) and
/// samples [S + K, 2S + K] the geodesics f(x_i) -> z_i (time [2/3, 1]).
class LoopSystem {
 public:
  using Trajectory = std::shared_ptr<const std::vector<SpherePoint>>;

  /// `trajectories`, when given, holds at least steps() + 1 samples of each
  /// f_t(x_i) on the trace grid (longer trajectories of a power of the same
  /// trace may be shared).
  LoopSystem(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z, int arc_steps,
             std::vector<Trajectory> trajectories = {});

  std::size_t strands() const { return x_.size(); }
  std::size_t samples() const { return 2 * arc_steps_ + middle_steps_ + 1; }
  std::size_t arc_steps() const { return arc_steps_; }
  std::size_t middle_steps() const { return middle_steps_; }
  const ConfigTuple& x() const { return x_; }
  const ConfigTuple& z() const { return z_; }
  const DiffeoTrace& trace() const { return f_; }

  double time(std::size_t k) const;
  SpherePoint at(std::size_t strand, std::size_t k) const;
  /// State a fraction in [0, 1] of the way from sample k to sample k + 1.
  SpherePoint between(std::size_t strand, std::size_t k, double fraction) const;
  /// Evaluation at a loop time in [0, 1]; `from_left` selects the segment
  /// that ends at a boundary time.
  SpherePoint at_time(std::size_t strand, double t, bool from_left = false) const;

 private:
  DiffeoTrace f_;
  ConfigTuple x_, z_;
  std::vector<GeodesicArc> alpha_, beta_;
  std::vector<Trajectory> middle_;
  std::size_t arc_steps_;
  std::size_t middle_steps_;
};

/// Validates the loop system: throws AntipodalPair when some x_i or f(x_i) is
/// antipodal to z_i and DegenerateConfig when two loops meet at a sample.
LoopSystem build_loops(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z,
                       const ExtractionSettings& settings = {},
                       std::vector<LoopSystem::Trajectory> trajectories = {});

struct CrossingEvent {
  double time;
  int rank;           // generator index: ranks rank and rank + 1 swap
  int strand_a;       // tuple indices (0-based) of the strands, a before b in rank
  int strand_b;
  int sign;
};

struct Extraction {
  BraidWord word;             // freely reduced
  BraidWord raw;              // as read off
  std::vector<CrossingEvent> events;
  /// initial_order[r] = tuple index of the strand at rank r + 1 at time 0.
  std::vector<int> initial_order;
  int refinements = 0;
};

/// Reads the braid off the loops by stereographic projection from `pole`.
/// Strands are ordered by the first planar coordinate; a swap of ranks r and
/// r + 1 emits sigma_r when the strand coming from rank r has the larger
/// second coordinate at the crossing, sigma_r^{-1} otherwise.
/// Throws PoleTooClose, UnresolvedCrossing and InvariantViolation (impure
/// result).
Extraction extract_braid(const LoopSystem& loops, const SpherePoint& pole, const ExtractionSettings& settings = {});

/// Pole for a set of support caps: the antipode of the center for one cap,
/// otherwise the lattice direction farthest from every cap.
SpherePoint default_pole(std::span<const SphericalCap> caps);

/// gamma(f, x) with basepoints z. Retries UnresolvedCrossing with denser arc
/// sampling up to settings.retries times, then rethrows.
Extraction gamma(const DiffeoTrace& f, const ConfigTuple& x, const ConfigTuple& z, const SpherePoint& pole,
                 const ExtractionSettings& settings = {}, std::vector<LoopSystem::Trajectory> trajectories = {});

/// Writes one CSV per strand (columns t,x,y,z) named strand_<i>.csv into dir.
void write_scene(const LoopSystem& loops, const std::filesystem::path& dir);

}  // namespace gg
