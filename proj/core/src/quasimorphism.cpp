#include "gg/quasimorphism.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "gg/signature.hpp"

namespace gg {

QuasimorphismSpec QuasimorphismSpec::exponent_sum() {
  QuasimorphismSpec q;
  q.name = "exponent_sum";
  q.evaluate = [](const BraidWord& w) { return static_cast<double>(gg::exponent_sum(w)); };
  q.exact_zero_defect = true;
  return q;
}

QuasimorphismSpec QuasimorphismSpec::linking(int i, int j) {
  if (i < 1 || j < 1 || i == j) throw std::invalid_argument("linking: strands must be distinct positive indices");
  QuasimorphismSpec q;
  q.name = "linking:" + std::to_string(i) + "," + std::to_string(j);
  q.evaluate = [i, j](const BraidWord& w) { return linking_number(w, i, j); };
  q.exact_zero_defect = true;
  return q;
}

QuasimorphismSpec QuasimorphismSpec::signature() {
  QuasimorphismSpec q;
  q.name = "signature";
  q.evaluate = [](const BraidWord& w) { return static_cast<double>(signature_of_closure(w)); };
  return q;
}

QuasimorphismSpec QuasimorphismSpec::by_name(std::string_view name) {
  if (name == "exponent_sum") return exponent_sum();
  if (name == "signature") return signature();
  constexpr std::string_view prefix = "linking:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string_view rest = name.substr(prefix.size());
    const auto comma = rest.find(',');
    int i = 0, j = 0;
    if (comma != std::string_view::npos) {
      const auto r1 = std::from_chars(rest.data(), rest.data() + comma, i);
      const auto r2 = std::from_chars(rest.data() + comma + 1, rest.data() + rest.size(), j);
      if (r1.ec == std::errc() && r1.ptr == rest.data() + comma && r2.ec == std::errc() &&
          r2.ptr == rest.data() + rest.size()) {
        return linking(i, j);
      }
    }
  }
  throw std::invalid_argument("unknown quasimorphism '" + std::string(name) +
                              "' (expected exponent_sum, linking:i,j or signature)");
}

Homogenization homogenize(const QuasimorphismSpec& q, const BraidWord& w) {
  const auto& sched = q.schedule;
  if (sched.empty()) throw std::invalid_argument("homogenize: empty schedule");
  for (std::size_t k = 0; k < sched.size(); ++k) {
    if (sched[k] < 1 || (k > 0 && sched[k] <= sched[k - 1])) {
      throw std::invalid_argument("homogenize: schedule must be positive and increasing");
    }
  }
  Homogenization h;
  h.powers = sched;
  std::vector<double> values;
  for (int p : sched) {
    values.push_back(q(w.power(p)));
    h.ratios.push_back(values.back() / p);
  }
  const std::size_t m = sched.size();
  h.value = m == 1 ? h.ratios[0] : (values[m - 1] - values[m - 2]) / (sched[m - 1] - sched[m - 2]);
  return h;
}

QuasimorphismSpec homogenized(const QuasimorphismSpec& q) {
  QuasimorphismSpec h = q;
  h.name = q.name + ":homogenized";
  h.evaluate = [q](const BraidWord& w) { return homogenize(q, w).value; };
  return h;
}

DefectEstimate empirical_defect(const QuasimorphismSpec& q, const WordPairSampler& sampler, int trials,
                                std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("empirical_defect: trials must be positive");
  DefectEstimate d;
  d.trials = trials;
  d.running_max.reserve(static_cast<std::size_t>(trials));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto [u, v] = sampler(rng);
    const double gap = std::abs(q(compose(u, v)) - q(u) - q(v));
    d.lower_bound = std::max(d.lower_bound, gap);
    d.running_max.push_back(d.lower_bound);
  }
  return d;
}

BraidWord random_word(Rng& rng, int strands, int min_len, int max_len) {
  if (strands < 2) return BraidWord(strands);
  const int len = rng.uniform_int(min_len, max_len);
  std::vector<int> letters;
  letters.reserve(static_cast<std::size_t>(len));
  for (int k = 0; k < len; ++k) {
    const int g = rng.uniform_int(1, strands - 1);
    letters.push_back(rng.uniform_int(0, 1) == 0 ? g : -g);
  }
  return BraidWord(strands, std::move(letters));
}

BraidWord random_pure_word(Rng& rng, int strands, int factors) {
  if (strands < 2) return BraidWord(strands);
  std::vector<int> letters;
  for (int f = 0; f < factors; ++f) {
    const BraidWord c = random_word(rng, strands, 0, 3);
    const int g = rng.uniform_int(1, strands - 1);
    const int s = rng.uniform_int(0, 1) == 0 ? g : -g;
    letters.insert(letters.end(), c.letters().begin(), c.letters().end());
    letters.push_back(s);
    letters.push_back(s);
    const BraidWord ci = c.inverse();
    letters.insert(letters.end(), ci.letters().begin(), ci.letters().end());
  }
  return BraidWord(strands, std::move(letters));
}

WordPairSampler word_pair_sampler(int strands, int max_len) {
  return [strands, max_len](Rng& rng) {
    BraidWord u = random_word(rng, strands, 0, max_len);
    BraidWord v = random_word(rng, strands, 0, max_len);
    return std::make_pair(std::move(u), std::move(v));
  };
}

WordPairSampler pure_word_pair_sampler(int strands, int factors) {
  return [strands, factors](Rng& rng) {
    BraidWord u = random_pure_word(rng, strands, factors);
    BraidWord v = random_pure_word(rng, strands, factors);
    return std::make_pair(std::move(u), std::move(v));
  };
}

}  // namespace gg
