#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "gg/braid.hpp"

namespace gg {

/// Dynnikov coordinates (a_1..a_{n-2}, b_1..b_{n-2}) of an integral
/// lamination of the n-punctured disc. Exact integers.
class DynnikovCoords {
 public:
  /// Throws std::invalid_argument for n < 3 or a length other than 2n - 4.
  DynnikovCoords(int strands, std::vector<mpz_class> values);
  /// Unit vector e_index (0-based) of Z^{2n-4}.
  static DynnikovCoords unit(int strands, std::size_t index, int sign = 1);

  int strands() const { return n_; }
  const std::vector<mpz_class>& values() const { return c_; }
  mpz_class l1_norm() const;
  std::string str() const;

  friend bool operator==(const DynnikovCoords&, const DynnikovCoords&) = default;

 private:
  friend DynnikovCoords& dynnikov_apply(DynnikovCoords&, int);
  int n_;
  std::vector<mpz_class> c_;
};

/// Action of one letter (+i for sigma_i, -i for its inverse), in place.
DynnikovCoords& dynnikov_apply(DynnikovCoords& c, int letter);
DynnikovCoords dynnikov_step(DynnikovCoords c, int letter);
DynnikovCoords dynnikov_act(DynnikovCoords c, const BraidWord& w);

inline constexpr int kDefaultEntropyIters = 200;
inline constexpr double kReducibleEntropyThreshold = 1e-3;

/// Growth-rate estimate of the topological entropy of w.
///
/// From each start +-e_j the norms N_k = |w^k c|_1 are computed for
/// k = 1..iters and the least-squares slope of log N_k over the last half is
/// taken; the largest slope is returned. A start whose norms satisfy an exact
/// periodic linear recurrence N_{k+2P} - 2 N_{k+P} + N_k = 0 across the window
/// grows polynomially and contributes 0.
double braid_entropy_estimate(const BraidWord& w, int iters = kDefaultEntropyIters);

struct ReducibilityVerdict {
  bool reducible_or_periodic = false;
  /// Invariant strand subset (1-based starting positions) when one was found.
  std::vector<int> witness;
  double entropy = 0.0;
  /// "empty", "confined", "low-entropy" or "pseudo-anosov-like".
  std::string reason;
};

/// Heuristic: reducible-or-periodic if the crossings are confined to a proper
/// block of at least two strands, or if the entropy estimate is below the
/// threshold.
ReducibilityVerdict is_probably_reducible(const BraidWord& w, int iters = kDefaultEntropyIters,
                                          double threshold = kReducibleEntropyThreshold);

}  // namespace gg
