#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gg/braid.hpp"
#include "gg/random.hpp"

namespace gg {

inline const std::vector<int> kDefaultSchedule{8, 16, 32};

/// A computable function on braid words together with its homogenization
/// schedule.
struct QuasimorphismSpec {
  std::string name;
  std::function<double(const BraidWord&)> evaluate;
  std::vector<int> schedule = kDefaultSchedule;
  /// True only for homomorphisms, whose defect is exactly zero.
  bool exact_zero_defect = false;
  /// q(w^{-1}) = -q(w).
  bool antisymmetric = true;

  /// Evaluates on the freely reduced word.
  double operator()(const BraidWord& w) const { return evaluate(w.reduced()); }

  static QuasimorphismSpec exponent_sum();
  /// Linking number of strands i and j; defined on pure braids only.
  static QuasimorphismSpec linking(int i, int j);
  static QuasimorphismSpec signature();
  /// Accepts `exponent_sum`, `linking:i,j` and `signature`; throws
  /// std::invalid_argument otherwise.
  static QuasimorphismSpec by_name(std::string_view name);
};

struct Homogenization {
  double value = 0.0;
  std::vector<int> powers;
  /// q(w^p) / p along the schedule.
  std::vector<double> ratios;
};

/// Extrapolates lim q(w^p)/p from the last two schedule points assuming
/// q(w^p)/p = L + C/p: L = (q(w^{p2}) - q(w^{p1})) / (p2 - p1).
Homogenization homogenize(const QuasimorphismSpec& q, const BraidWord& w);

/// Quasimorphism whose evaluator is the homogenization of q.
QuasimorphismSpec homogenized(const QuasimorphismSpec& q);

using WordPairSampler = std::function<std::pair<BraidWord, BraidWord>(Rng&)>;

struct DefectEstimate {
  /// max |q(uv) - q(u) - q(v)| over the sampled pairs: a lower bound for the
  /// defect, never an upper bound.
  double lower_bound = 0.0;
  int trials = 0;
  /// Running maximum after each trial.
  std::vector<double> running_max;
};

DefectEstimate empirical_defect(const QuasimorphismSpec& q, const WordPairSampler& sampler, int trials,
                                std::uint64_t seed);

/// Uniform random word of length in [min_len, max_len].
BraidWord random_word(Rng& rng, int strands, int min_len, int max_len);

/// Random pure braid: product of `factors` conjugates w sigma_i^{+-2} w^{-1}
/// with short random conjugators.
BraidWord random_pure_word(Rng& rng, int strands, int factors);

WordPairSampler word_pair_sampler(int strands, int max_len);
WordPairSampler pure_word_pair_sampler(int strands, int factors);

}  // namespace gg
