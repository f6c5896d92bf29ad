#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gg/estimator.hpp"
#include "gg/hamiltonian.hpp"

namespace gg {

/// m disjointly supported conjugates f_i = h_i o f o h_i^{-1} of one twist.
struct EmbeddingSpec {
  int m = 1;
  double area = 0.05;
  double strength = 1.0;
  /// Minimum angular gap demanded between any two caps.
  double margin_required = 1e-3;
  /// Smallest angular gap actually achieved (pi for m = 1).
  double margin = 0.0;
  std::vector<Mat3> rotations;
  std::vector<SphericalCap> caps;
  std::vector<HamiltonianSystem> generators;
  IntegratorSettings integrator;
};

/// Caps centered on an endpoint-inclusive Fibonacci lattice (poles first;
/// antipodal for m = 2), each carrying the north-pole twist moved by the
/// rotation taking the north pole to the center. Throws PlacementFailed when
/// area >= 1/m or the caps are not separated by `margin`.
EmbeddingSpec build_embedding(int m, double area, double strength = 1.0, double margin = 1e-3,
                              const IntegratorSettings& integrator = {});

/// J(k) = f_1^{k_1} o ... o f_m^{k_m}. Throws std::invalid_argument when
/// |k|_1 exceeds `budget`.
DiffeoTrace evaluate_J(const EmbeddingSpec& spec, const std::vector<int>& k, int budget = 64);

/// Measured inputs of the lower bound.
struct EstimateTable {
  std::vector<std::string> quasimorphisms;  // one per generator
  /// M(i, j) = Phi-bar_i(f_j), where Phi-bar_i is truncated to cap i.
  Eigen::MatrixXd M;
  Eigen::MatrixXd M_stderr;
  /// D_l: defect bound used for Phi-bar_l.
  std::vector<double> defects;
  /// Sampled defect lower bound of the underlying braid quasimorphism.
  std::vector<double> sampled_defects;
  std::vector<std::uint64_t> seeds;
};

/// Runs the m x m estimates and the defect sampling for quasimorphism q.
/// D_l is twice the sampled defect of q on pure words (the homogenization
/// at most doubles the defect).
EstimateTable measure_estimate_table(const EmbeddingSpec& spec, const QuasimorphismSpec& q,
                                     EstimatorSettings settings, int defect_trials = 2000);

struct LowerBound {
  /// |k|_1 / (m D), D = max_i D(Psi_i).
  double aggregated = 0.0;
  /// Same with M perturbed by 3 standard errors (first-order propagation).
  double conservative = 0.0;
  /// |k_i| / D(Psi_i).
  std::vector<double> per_generator;
  /// |Psi_i(J(k))| / D(Psi_i) from measured Phi-bar_l(J(k)), when given.
  std::vector<double> per_generator_measured;
  /// Defect bounds of Psi_i = sum_l (M^{-1})_il Phi-bar_l.
  std::vector<double> psi_defects;
  double frak_D = 0.0;
  double frak_D_conservative = 0.0;
  /// All defects zero: no finite bound; Phi-bar(J(k)) = M k exactly.
  bool homomorphism_mode = false;
  std::vector<double> homomorphism_values;
  std::string status;
};

struct AutonomousFactor {
  int generator;  // 0-based
  int sign;
};

struct UpperBound {
  double value = 0.0;
  double norm_bound_per_generator = 1.0;
  std::vector<AutonomousFactor> factors;
};

struct EmbeddingCertificate {
  std::vector<int> k;
  long long l1 = 0;
  std::optional<LowerBound> lower;
  std::optional<UpperBound> upper;
  std::vector<std::string> assumptions;

  /// lower <= upper when both are present and finite.
  bool ordered() const;
  /// upper / lower, or NaN when unavailable.
  double ratio() const;
};

/// Throws MissingEstimate when the table does not cover every generator and
/// IllConditionedFit when M is numerically singular.
EmbeddingCertificate lower_bound_certificate(const EmbeddingSpec& spec, const std::vector<int>& k,
                                             const EstimateTable& table,
                                             const std::optional<std::vector<double>>& measured_J = std::nullopt);

EmbeddingCertificate upper_bound_certificate(const EmbeddingSpec& spec, const std::vector<int>& k);

/// Both bounds in one certificate.
EmbeddingCertificate certify(const EmbeddingSpec& spec, const std::vector<int>& k, const EstimateTable& table,
                             const std::optional<std::vector<double>>& measured_J = std::nullopt);

}  // namespace gg
