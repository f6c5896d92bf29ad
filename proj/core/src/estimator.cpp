#include "gg/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gg/dynnikov.hpp"
#include "gg/errors.hpp"
#include "gg/parallel.hpp"

namespace gg {

std::string to_string(TruncationMode m) {
  return m == TruncationMode::none ? "none" : "enforce_reducible_vanishing";
}

std::string to_string(SamplingScheme s) { return s == SamplingScheme::uniform ? "uniform" : "stratified"; }

TruncationMode truncation_mode_from_string(const std::string& s) {
  if (s == "none") return TruncationMode::none;
  if (s == "enforce_reducible_vanishing" || s == "enforce") return TruncationMode::enforce_reducible_vanishing;
  throw std::invalid_argument("unknown truncation mode '" + s + "'");
}

SamplingScheme sampling_scheme_from_string(const std::string& s) {
  if (s == "uniform") return SamplingScheme::uniform;
  if (s == "stratified") return SamplingScheme::stratified;
  throw std::invalid_argument("unknown sampling scheme '" + s + "'");
}

Observable Observable::of(QuasimorphismSpec q) {
  Observable o;
  o.name = q.name;
  o.quasimorphism = std::move(q);
  return o;
}

Observable Observable::stand_in(double partial) {
  Observable o;
  o.name = "stand_in:" + std::to_string(partial);
  o.partial = partial;
  return o;
}

double cap_separation(const SphericalCap& a, const SphericalCap& b) {
  return angle_between(a.center(), b.center()) - a.half_angle() - b.half_angle();
}

namespace {

constexpr std::uint64_t kBasepointStream = 0x5eed'ba5e'0000'0001ULL;

bool inside_any(const std::vector<SphericalCap>& caps, const SpherePoint& p) {
  for (const auto& c : caps) {
    if (c.contains(p)) return true;
  }
  return false;
}

int count_inside(const std::vector<SphericalCap>& caps, const ConfigTuple& x) {
  int k = 0;
  for (const SpherePoint& p : x) k += inside_any(caps, p) ? 1 : 0;
  return k;
}

bool pairwise_disjoint(const std::vector<SphericalCap>& caps) {
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      if (cap_separation(caps[i], caps[j]) <= 0.0) return false;
    }
  }
  return true;
}

double union_area(const std::vector<SphericalCap>& caps) {
  if (!pairwise_disjoint(caps)) throw std::invalid_argument("stratified sampling needs disjoint support caps");
  double a = 0.0;
  for (const auto& c : caps) a += c.area();
  return a;
}

SpherePoint sample_in_union(Rng& rng, const std::vector<SphericalCap>& caps, double total) {
  double u = rng.uniform() * total;
  for (const auto& c : caps) {
    if (u < c.area()) return c.sample_inside(rng);
    u -= c.area();
  }
  return caps.back().sample_inside(rng);
}

SpherePoint sample_outside_union(Rng& rng, const std::vector<SphericalCap>& caps) {
  if (caps.size() == 1) return caps[0].sample_outside(rng);
  for (int t = 0; t < 100000; ++t) {
    const SpherePoint p = uniform_point(rng);
    if (!inside_any(caps, p)) return p;
  }
  throw SamplingBudgetExceeded("stratified sampling: complement of the support is too small");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Sample layout: stratum of each sample index and the stratum weights.
struct Layout {
  std::vector<int> strata;
  std::vector<double> weights;  // probability of each stratum, size n + 1
  std::vector<int> counts;      // samples per stratum
};

Layout make_layout(const EstimatorSettings& s, double area) {
  Layout l;
  const int n = s.n;
  const auto N = static_cast<std::size_t>(s.samples);
  if (s.scheme == SamplingScheme::uniform) {
    l.strata.assign(N, 0);
    l.weights = {1.0};
    l.counts = {s.samples};
    return l;
  }
  l.weights.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    l.weights[static_cast<std::size_t>(k)] = binomial(n, k) * std::pow(area, k) * std::pow(1.0 - area, n - k);
  }
  std::vector<int> used;
  for (int k = 0; k <= n; ++k) {
    const bool relevant = s.mode == TruncationMode::none || k >= n - 1;
    if (relevant && l.weights[static_cast<std::size_t>(k)] > 0.0) used.push_back(k);
  }
  if (static_cast<int>(used.size()) * 2 > s.samples) throw std::invalid_argument("stratified sampling: too few samples");
  // Proportional allocation with largest remainders and at least two per stratum.
  double total = 0.0;
  for (int k : used) total += l.weights[static_cast<std::size_t>(k)];
  l.counts.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::pair<double, int>> rem;
  int assigned = 0;
  for (int k : used) {
    const double share = s.samples * l.weights[static_cast<std::size_t>(k)] / total;
    const int c = std::max(2, static_cast<int>(std::floor(share)));
    l.counts[static_cast<std::size_t>(k)] = c;
    assigned += c;
    rem.emplace_back(share - std::floor(share), k);
  }
  std::sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  for (std::size_t i = 0; assigned < s.samples; i = (i + 1) % rem.size(), ++assigned) {
    ++l.counts[static_cast<std::size_t>(rem[i].second)];
  }
  while (assigned > s.samples) {
    auto it = std::max_element(l.counts.begin(), l.counts.end());
    --*it;
    --assigned;
  }
  for (int k : used) l.strata.insert(l.strata.end(), static_cast<std::size_t>(l.counts[static_cast<std::size_t>(k)]), k);
  return l;
}

struct Context {
  const DiffeoTrace* f = nullptr;
  const Observable* obs = nullptr;
  const EstimatorSettings* s = nullptr;
  std::vector<SphericalCap> support;
  double area = 0.0;
  ConfigTuple z;
  SpherePoint pole;
  std::vector<int> powers;
  Layout layout;
};

struct SampleResult {
  std::vector<double> ratios;  // q(gamma(f^p, x)) / p per power
  double value = 0.0;
  int retries = 0;
  bool truncated = false;
};

ConfigTuple draw_x(Rng& rng, const Context& c, int stratum) {
  const int n = c.s->n;
  if (c.s->scheme == SamplingScheme::uniform) return uniform_sample(rng, n);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  std::vector<SpherePoint> pts(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const bool in = j < stratum;
    pts[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] =
        in ? sample_in_union(rng, c.support, c.area) : sample_outside_union(rng, c.support);
  }
  return ConfigTuple(std::move(pts));
}

double richardson(const std::vector<int>& powers, const std::vector<double>& ratios) {
  const std::size_t m = powers.size();
  if (m == 1) return ratios[0];
  const double v1 = ratios[m - 2] * powers[m - 2];
  const double v2 = ratios[m - 1] * powers[m - 1];
  return (v2 - v1) / (powers[m - 1] - powers[m - 2]);
}

SampleResult run_sample(const Context& c, std::size_t index) {
  SampleResult r;
  const int n = c.s->n;
  const int stratum = c.layout.strata[index];
  for (int attempt = 0; attempt < c.s->max_attempts; ++attempt) {
    Rng rng = Rng::stream(c.s->seed, index, static_cast<std::uint64_t>(attempt));
    ConfigTuple x;
    try {
      x = draw_x(rng, c, stratum);
    } catch (const DegenerateConfig&) {
      ++r.retries;
      continue;
    }
    const int inside = c.support.empty() ? n : count_inside(c.support, x);
    r.ratios.assign(c.powers.size(), 0.0);
    if (c.s->mode == TruncationMode::enforce_reducible_vanishing && n - inside >= 2) {
      r.truncated = true;
      r.value = 0.0;
      return r;
    }
    if (!c.obs->needs_braid()) {
      const double v = inside == n ? 1.0 : (inside == n - 1 ? c.obs->partial : 0.0);
      r.ratios.assign(c.powers.size(), v);
      r.value = v;
      return r;
    }
    try {
      const int pmax = c.powers.back();
      const DiffeoTrace top = c.f->power(pmax);
      std::vector<LoopSystem::Trajectory> traj;
      traj.reserve(x.size());
      for (const SpherePoint& p : x) traj.push_back(std::make_shared<const std::vector<SpherePoint>>(top.trajectory(p)));
      for (std::size_t k = 0; k < c.powers.size(); ++k) {
        const int p = c.powers[k];
        const DiffeoTrace fp = p == pmax ? top : c.f->power(p);
        const Extraction e = gamma(fp, x, c.z, c.pole, c.s->extraction, traj);
        r.ratios[k] = (*c.obs->quasimorphism)(e.word) / p;
      }
      r.value = richardson(c.powers, r.ratios);
      return r;
    } catch (const AntipodalPair&) {
    } catch (const DegenerateConfig&) {
    } catch (const PoleTooClose&) {
    } catch (const UnresolvedCrossing&) {
    } catch (const AtPole&) {
    }
    ++r.retries;
  }
  throw SamplingBudgetExceeded("sample " + std::to_string(index) + ": no valid configuration after " +
                               std::to_string(c.s->max_attempts) + " attempts");
}

// Weighted mean and standard error over strata.
std::pair<double, double> stratified_mean(const Layout& l, const std::vector<double>& values) {
  std::map<int, std::pair<double, int>> sums;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& e = sums[l.strata[i]];
    e.first += values[i];
    e.second += 1;
  }
  std::map<int, double> means;
  for (const auto& [k, e] : sums) means[k] = e.first / e.second;
  std::map<int, double> ss;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - means[l.strata[i]];
    ss[l.strata[i]] += d * d;
  }
  double mean = 0.0, var = 0.0;
  for (const auto& [k, e] : sums) {
    const double w = l.weights[static_cast<std::size_t>(k)];
    mean += w * means[k];
    if (e.second > 1) var += w * w * (ss[k] / (e.second - 1)) / e.second;
  }
  return {mean, std::sqrt(var)};
}

std::vector<SphericalCap> resolve_support(const DiffeoTrace& f, const EstimatorSettings& s) {
  if (!s.support.empty()) return s.support;
  return f.support_caps();
}

GGEstimate run_estimate(const DiffeoTrace& f, const Observable& obs, const EstimatorSettings& s,
                        std::vector<int> powers, bool homogenized) {
  if (s.n < 2) throw std::invalid_argument("estimator: n must be at least 2");
  if (s.samples < 1) throw std::invalid_argument("estimator: sample count must be positive");
  if (powers.empty()) throw std::invalid_argument("estimator: empty power schedule");
  for (std::size_t k = 0; k < powers.size(); ++k) {
    if (powers[k] < 1 || (k > 0 && powers[k] <= powers[k - 1])) {
      throw std::invalid_argument("estimator: schedule must be positive and increasing");
    }
  }
  Context c;
  c.f = &f;
  c.obs = &obs;
  c.s = &s;
  c.support = resolve_support(f, s);
  const bool needs_support = s.mode == TruncationMode::enforce_reducible_vanishing ||
                             s.scheme == SamplingScheme::stratified || !obs.needs_braid();
  if (needs_support && c.support.empty()) {
    if (f.is_identity() && obs.needs_braid() && s.scheme == SamplingScheme::uniform) {
      // Nothing moves; truncation cannot change a zero estimate.
    } else {
      throw NoSupportDeclared("estimator: truncation or stratification requested for a map without support caps");
    }
  }
  if (s.scheme == SamplingScheme::stratified) c.area = union_area(c.support);
  c.pole = s.pole ? *s.pole : default_pole(c.support);
  c.z = s.basepoints ? *s.basepoints : draw_basepoints(s, c.pole);
  if (static_cast<int>(c.z.size()) != s.n) throw std::invalid_argument("estimator: basepoint count differs from n");
  c.powers = std::move(powers);
  c.layout = make_layout(s, c.area);

  const auto results = parallel_map<SampleResult>(static_cast<std::size_t>(s.samples), s.workers,
                                                  [&](std::size_t i) { return run_sample(c, i); });

  GGEstimate e;
  e.samples = s.samples;
  e.n = s.n;
  e.observable = obs.name;
  e.mode = s.mode;
  e.scheme = s.scheme;
  e.seed = s.seed;
  e.homogenized = homogenized;
  e.schedule = c.powers;
  e.basepoints = c.z;
  e.pole = c.pole;
  e.sample_strata = c.layout.strata;
  e.stratum_weights = c.layout.weights;
  e.sample_values.reserve(results.size());
  for (const auto& r : results) {
    e.sample_values.push_back(r.value);
    e.retries += r.retries;
    e.truncated += r.truncated ? 1 : 0;
  }
  std::tie(e.value, e.stderr_) = stratified_mean(c.layout, e.sample_values);
  for (std::size_t k = 0; k < c.powers.size(); ++k) {
    std::vector<double> col;
    col.reserve(results.size());
    for (const auto& r : results) col.push_back(r.ratios[k]);
    const auto [m, se] = stratified_mean(c.layout, col);
    e.power_means.push_back(m);
    e.power_stderrs.push_back(se);
  }
  if (e.retries > s.retry_budget * s.samples) {
    throw SamplingBudgetExceeded("estimator: " + std::to_string(e.retries) + " degenerate resamples exceed the budget");
  }
  if (e.retries >= 0.01 * s.samples && e.retries > 0) {
    e.warnings.push_back("degenerate resamples: " + std::to_string(e.retries) + " (at least 1% of samples)");
  }
  if (s.n < 4) e.warnings.push_back("n < 4: debugging configuration");
  return e;
}

}  // namespace

double paired_stderr(const std::vector<std::pair<double, const GGEstimate*>>& combination) {
  if (combination.empty()) return 0.0;
  const GGEstimate& ref = *combination.front().second;
  for (const auto& [coef, e] : combination) {
    if (e->sample_strata != ref.sample_strata || e->stratum_weights != ref.stratum_weights) {
      throw std::invalid_argument("paired_stderr: estimates do not share a sample layout");
    }
  }
  std::vector<double> d(ref.sample_values.size(), 0.0);
  for (const auto& [coef, e] : combination) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += coef * e->sample_values[i];
  }
  Layout l;
  l.strata = ref.sample_strata;
  l.weights = ref.stratum_weights;
  return stratified_mean(l, d).second;
}

ConfigTuple draw_basepoints(const EstimatorSettings& s, const SpherePoint& pole, const std::vector<SphericalCap>& avoid) {
  Rng rng = Rng::stream(s.seed, kBasepointStream);
  std::vector<SpherePoint> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < s.n; ++tries) {
    if (tries > 100000) throw SamplingBudgetExceeded("draw_basepoints: constraints cannot be met");
    const SpherePoint p = uniform_point(rng);
    if (angle_between(p, pole) < s.basepoint_pole_margin) continue;
    if (inside_any(avoid, p)) continue;
    bool ok = true;
    for (const auto& q : pts) ok = ok && chordal_distance(p, q) > 1e-3;
    if (ok) pts.push_back(p);
  }
  return ConfigTuple(std::move(pts));
}

GGEstimate estimate_phi(const DiffeoTrace& f, const Observable& obs, const EstimatorSettings& settings) {
  return run_estimate(f, obs, settings, {1}, false);
}

GGEstimate estimate_phi_bar(const DiffeoTrace& f, const Observable& obs, const EstimatorSettings& settings) {
  return run_estimate(f, obs, settings, settings.schedule, true);
}

VanishingReport vanishing_experiment(const DiffeoTrace& f, const EstimatorSettings& s, int entropy_iters) {
  const auto caps = resolve_support(f, s);
  if (caps.empty()) throw NoSupportDeclared("vanishing_experiment: map has no support cap");
  const SpherePoint pole = s.pole ? *s.pole : default_pole(caps);
  const ConfigTuple z = s.basepoints ? *s.basepoints : draw_basepoints(s, pole, caps);

  struct Row {
    bool considered = false;
    int inside = 0;
    bool violation = false;
    bool flagged = false;
    int retries = 0;
  };
  const auto rows = parallel_map<Row>(static_cast<std::size_t>(s.samples), s.workers, [&](std::size_t i) {
    Row row;
    for (int attempt = 0; attempt < s.max_attempts; ++attempt) {
      Rng rng = Rng::stream(s.seed, i, static_cast<std::uint64_t>(attempt));
      try {
        const ConfigTuple x = uniform_sample(rng, s.n);
        row.inside = count_inside(caps, x);
        if (s.n - row.inside < 2) return row;
        row.considered = true;
        const Extraction e = gamma(f, x, z, pole, s.extraction);
        std::vector<int> outside;
        for (int r = 0; r < s.n; ++r) {
          const auto idx = static_cast<std::size_t>(e.initial_order[static_cast<std::size_t>(r)]);
          if (!inside_any(caps, x[idx])) outside.push_back(r + 1);
        }
        row.violation = !delete_strands(e.word, outside).empty();
        row.flagged = is_probably_reducible(e.word, entropy_iters).reducible_or_periodic;
        return row;
      } catch (const AntipodalPair&) {
      } catch (const DegenerateConfig&) {
      } catch (const PoleTooClose&) {
      } catch (const UnresolvedCrossing&) {
      } catch (const AtPole&) {
      }
      ++row.retries;
      row.considered = false;
    }
    throw SamplingBudgetExceeded("vanishing_experiment: sample " + std::to_string(i) + " kept degenerating");
  });

  VanishingReport rep;
  rep.samples = s.samples;
  rep.by_inside_count.assign(static_cast<std::size_t>(s.n) + 1, 0);
  for (const Row& r : rows) {
    rep.retries += r.retries;
    if (!r.considered) {
      ++rep.excluded;
      continue;
    }
    ++rep.considered;
    ++rep.by_inside_count[static_cast<std::size_t>(r.inside)];
    rep.subbraid_violations += r.violation ? 1 : 0;
    rep.flagged_reducible += r.flagged ? 1 : 0;
  }
  return rep;
}

ScalingFit fit_scaling(int n, double area, std::vector<ScalingRow> rows) {
  std::vector<double> distinct;
  for (const auto& r : rows) distinct.push_back(r.epsilon);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw IllConditionedFit("scaling fit: epsilon grid needs at least 3 distinct values");

  ScalingFit fit;
  fit.n = n;
  fit.area = area;
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd G(m, 2);
  Eigen::VectorXd y(m), sigma(m);
  double min_pos = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    const double e = r.epsilon;
    G(i, 0) = std::pow(e, n);
    G(i, 1) = n * std::pow(e, n - 1) * (1.0 - e * area);
    y(i) = r.estimate.value;
    sigma(i) = r.estimate.stderr_;
    if (sigma(i) > 0.0) min_pos = std::min(min_pos, sigma(i));
  }

  // Weighted fit; cells with zero error get the weight of a cell 1000 times
  // more precise than the best measured one. All-exact data use ordinary
  // least squares with the residual variance.
  auto weighted = [&](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, const Eigen::VectorXd& S,
                      Eigen::VectorXd& beta, Eigen::MatrixXd& cov) {
    const bool exact = !std::isfinite(min_pos);
    Eigen::VectorXd w(S.size());
    for (Eigen::Index i = 0; i < S.size(); ++i) {
      const double si = exact ? 1.0 : std::max(S(i), 1e-3 * min_pos);
      w(i) = 1.0 / (si * si);
    }
    const Eigen::MatrixXd XtW = X.transpose() * w.asDiagonal();
    const Eigen::MatrixXd normal = XtW * X;
    beta = normal.ldlt().solve(XtW * Y);
    cov = normal.inverse();
    if (exact) {
      const Eigen::VectorXd res = Y - X * beta;
      const auto dof = static_cast<double>(std::max<Eigen::Index>(1, Y.size() - X.cols()));
      cov *= res.squaredNorm() / dof;
    }
  };

  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;
  weighted(G, y, sigma, beta, cov);
  fit.A = beta(0);
  fit.B = beta(1);
  fit.sigma_A = std::sqrt(std::max(0.0, cov(0, 0)));
  fit.sigma_B = std::sqrt(std::max(0.0, cov(1, 1)));
  fit.cov_AB = cov(0, 1);
  const Eigen::VectorXd model = G * beta;
  for (Eigen::Index i = 0; i < m; ++i) {
    rows[static_cast<std::size_t>(i)].fitted = model(i);
    rows[static_cast<std::size_t>(i)].residual = y(i) - model(i);
  }
  fit.relative_residual = y.norm() > 0.0 ? (y - model).norm() / y.norm() : (y - model).norm();

  bool positive = true;
  for (Eigen::Index i = 0; i < m; ++i) positive = positive && y(i) > 0.0;
  if (positive) {
    Eigen::MatrixXd L(m, 2);
    Eigen::VectorXd ly(m), ls(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      L(i, 0) = 1.0;
      L(i, 1) = std::log(rows[static_cast<std::size_t>(i)].epsilon);
      ly(i) = std::log(y(i));
      ls(i) = sigma(i) / y(i);
    }
    const double saved = min_pos;
    min_pos = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (ls(i) > 0.0) min_pos = std::min(min_pos, ls(i));
    }
    Eigen::VectorXd lb;
    Eigen::MatrixXd lc;
    weighted(L, ly, ls, lb, lc);
    min_pos = saved;
    fit.loglog_slope = lb(1);
    fit.loglog_slope_stderr = std::sqrt(std::max(0.0, lc(1, 1)));
  } else {
    fit.loglog_slope = std::numeric_limits<double>::quiet_NaN();
    fit.loglog_slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  fit.rows = std::move(rows);
  return fit;
}

ScalingFit scaling_experiment(const HamiltonianSystem& f_a, const Observable& obs, const std::vector<double>& eps_grid,
                              EstimatorSettings settings, const IntegratorSettings& integrator) {
  if (settings.mode != TruncationMode::enforce_reducible_vanishing) {
    throw std::invalid_argument("scaling_experiment: requires truncation mode enforce_reducible_vanishing");
  }
  const auto cap = f_a.support();
  if (!cap) throw NoSupportDeclared("scaling_experiment: f_a has no support cap");
  {
    std::vector<double> d = eps_grid;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    if (d.size() < 3) throw IllConditionedFit("scaling_experiment: epsilon grid needs at least 3 distinct values");
  }
  // Shared pole and basepoints across the grid.
  if (!settings.pole) settings.pole = cap->center().antipode();
  if (!settings.basepoints) settings.basepoints = draw_basepoints(settings, *settings.pole);
  std::vector<ScalingRow> rows;
  for (double eps : eps_grid) {
    const HamiltonianSystem g = f_a.rescaled(eps);
    const HamiltonianSystem factors[] = {g};
    const int exps[] = {1};
    const DiffeoTrace trace(factors, exps, integrator);
    EstimatorSettings s = settings;
    s.support = {*g.support()};
    ScalingRow row;
    row.epsilon = eps;
    row.estimate = estimate_phi_bar(trace, obs, s);
    rows.push_back(std::move(row));
  }
  return fit_scaling(settings.n, cap->area(), std::move(rows));
}

AdditivityReport additivity_experiment(const DiffeoTrace& f1, const DiffeoTrace& f2, const Observable& obs,
                                       EstimatorSettings settings, double margin) {
  const auto c1 = f1.support_caps();
  const auto c2 = f2.support_caps();
  for (const auto& a : c1) {
    for (const auto& b : c2) {
      if (cap_separation(a, b) <= margin) throw SupportsOverlap("additivity_experiment: supports are not disjoint");
    }
  }
  if (settings.support.empty()) {
    settings.support = c1;
    settings.support.insert(settings.support.end(), c2.begin(), c2.end());
  }
  if (!settings.pole) settings.pole = default_pole(settings.support);
  if (!settings.basepoints) settings.basepoints = draw_basepoints(settings, *settings.pole);
  AdditivityReport rep;
  rep.f1 = estimate_phi_bar(f1, obs, settings);
  rep.f2 = estimate_phi_bar(f2, obs, settings);
  rep.both = estimate_phi_bar(f2.followed_by(f1), obs, settings);
  rep.gap = rep.both.value - rep.f1.value - rep.f2.value;
  rep.combined_stderr = std::sqrt(rep.f1.stderr_ * rep.f1.stderr_ + rep.f2.stderr_ * rep.f2.stderr_ +
                                  rep.both.stderr_ * rep.both.stderr_);
  rep.paired_stderr = paired_stderr({{1.0, &rep.both}, {-1.0, &rep.f1}, {-1.0, &rep.f2}});
  return rep;
}

}  // namespace gg
