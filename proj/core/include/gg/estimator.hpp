#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gg/braid_trace.hpp"
#include "gg/hamiltonian.hpp"
#include "gg/quasimorphism.hpp"

namespace gg {

enum class TruncationMode { none, enforce_reducible_vanishing };
enum class SamplingScheme { uniform, stratified };

std::string to_string(TruncationMode m);
std::string to_string(SamplingScheme s);
TruncationMode truncation_mode_from_string(const std::string& s);
SamplingScheme sampling_scheme_from_string(const std::string& s);

/// Per-sample quantity that is averaged over configurations.
///
/// Either a braid quasimorphism evaluated on gamma(f^p, x), or the analytic
/// stand-in whose per-sample value of Phi(f^p) is p times 1 when every point
/// lies in the support caps, p times `partial` when exactly n - 1 do, and 0
/// otherwise.
struct Observable {
  std::string name;
  std::optional<QuasimorphismSpec> quasimorphism;
  double partial = 0.0;

  static Observable of(QuasimorphismSpec q);
  static Observable stand_in(double partial);
  bool needs_braid() const { return quasimorphism.has_value(); }
};

struct EstimatorSettings {
  int n = 4;
  int samples = 2000;
  std::uint64_t seed = 1;
  TruncationMode mode = TruncationMode::none;
  SamplingScheme scheme = SamplingScheme::uniform;
  std::vector<int> schedule = kDefaultSchedule;
  /// Caps defining the truncation and stratification support; defaults to
  /// the support caps of the estimated map.
  std::vector<SphericalCap> support;
  /// Basepoint tuple z; drawn from the seed when absent.
  std::optional<ConfigTuple> basepoints;
  /// Projection pole; default_pole(support) when absent.
  std::optional<SpherePoint> pole;
  /// Minimum angle between basepoints and the pole.
  double basepoint_pole_margin = 0.3;
  ExtractionSettings extraction;
  /// Attempts per sample before the run fails.
  int max_attempts = 50;
  /// Total resamples allowed, as a fraction of the sample count.
  double retry_budget = 0.25;
  unsigned workers = 0;
};

struct GGEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
  int n = 0;
  std::string observable;
  TruncationMode mode = TruncationMode::none;
  SamplingScheme scheme = SamplingScheme::uniform;
  std::uint64_t seed = 0;
  int retries = 0;
  /// Samples whose contribution was set to zero by truncation.
  int truncated = 0;
  bool homogenized = false;
  std::vector<int> schedule;
  /// Mean of Phi(f^p)/p at each schedule power, with standard errors.
  std::vector<double> power_means;
  std::vector<double> power_stderrs;
  std::vector<std::string> warnings;
  /// Per-sample values in sample order. Estimates computed with the same
  /// seed and layout share their samples (common random numbers).
  std::vector<double> sample_values;
  /// Stratum of each sample (number of points inside the support; always 0
  /// for uniform sampling) and the probability weight of each stratum.
  std::vector<int> sample_strata;
  std::vector<double> stratum_weights;
  ConfigTuple basepoints;
  SpherePoint pole;
};

/// Standard error of sum_j c_j * estimate_j computed from paired per-sample
/// differences; all estimates must share one sample layout.
double paired_stderr(const std::vector<std::pair<double, const GGEstimate*>>& combination);

/// Phi_n(f): mean of q(gamma(f, x)) over sampled x.
GGEstimate estimate_phi(const DiffeoTrace& f, const Observable& obs, const EstimatorSettings& settings);

/// Phi-bar_n(f): per sample, Richardson extrapolation of q(gamma(f^p, x))/p
/// over the last two schedule powers, with the same x for every power.
GGEstimate estimate_phi_bar(const DiffeoTrace& f, const Observable& obs, const EstimatorSettings& settings);

/// Basepoints drawn from the seed, kept away from the pole and, when
/// `avoid` is given, outside those caps.
ConfigTuple draw_basepoints(const EstimatorSettings& settings, const SpherePoint& pole,
                            const std::vector<SphericalCap>& avoid = {});

struct VanishingReport {
  int samples = 0;
  int considered = 0;         // samples with at least two points outside
  int excluded = 0;           // samples with fewer than two points outside
  int subbraid_violations = 0;
  int flagged_reducible = 0;
  int retries = 0;
  /// considered samples by number of points inside the cap
  std::vector<int> by_inside_count;
  double flagged_fraction() const { return considered == 0 ? 1.0 : static_cast<double>(flagged_reducible) / considered; }
};

/// Structural check on samples with two or more points outside the cap of f:
/// the sub-braid of the outside strands must be trivial and the braid should
/// be flagged reducible-or-periodic. Basepoints are drawn outside the cap.
VanishingReport vanishing_experiment(const DiffeoTrace& f, const EstimatorSettings& settings,
                                     int entropy_iters = 200);

struct ScalingRow {
  double epsilon = 0.0;
  GGEstimate estimate;
  double fitted = 0.0;
  double residual = 0.0;
};

struct ScalingFit {
  int n = 0;
  double area = 0.0;
  std::vector<ScalingRow> rows;
  double A = 0.0, B = 0.0;
  double sigma_A = 0.0, sigma_B = 0.0;
  double cov_AB = 0.0;
  /// |y - model| / |y| over the grid.
  double relative_residual = 0.0;
  /// Weighted least-squares slope of log Phi-bar against log eps (NaN when
  /// some estimate is not positive).
  double loglog_slope = 0.0;
  double loglog_slope_stderr = 0.0;
};

/// Fits eps^{n-1} (eps A + n (1 - eps a) B) to estimates by weighted least
/// squares. Throws IllConditionedFit for fewer than three distinct eps.
ScalingFit fit_scaling(int n, double area, std::vector<ScalingRow> rows);

/// Phi-bar of f_{eps a} for each eps, truncation enforced, same seed for
/// every cell. Requires a twist with a declared support cap.
ScalingFit scaling_experiment(const HamiltonianSystem& f_a, const Observable& obs, const std::vector<double>& eps_grid,
                              EstimatorSettings settings, const IntegratorSettings& integrator = {});

struct AdditivityReport {
  GGEstimate f1, f2, both;
  double gap = 0.0;               // Phi-bar(f1 f2) - Phi-bar(f1) - Phi-bar(f2)
  double combined_stderr = 0.0;   // root sum of squares of the three errors
  double paired_stderr = 0.0;     // stderr of the per-sample gap
  bool within(double k) const { return std::abs(gap) < k * combined_stderr || gap == 0.0; }
};

/// Checks additivity on disjointly supported maps under truncation to the
/// union of both supports. Throws SupportsOverlap unless the caps are
/// separated by a positive margin.
AdditivityReport additivity_experiment(const DiffeoTrace& f1, const DiffeoTrace& f2, const Observable& obs,
                                       EstimatorSettings settings, double margin = 1e-3);

/// Angular gap between two caps (negative when they overlap).
double cap_separation(const SphericalCap& a, const SphericalCap& b);

}  // namespace gg
