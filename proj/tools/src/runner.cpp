#include "gg/cli/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "gg/braid_trace.hpp"
#include "gg/embedding.hpp"
#include "gg/errors.hpp"
#include "gg/parallel.hpp"

#ifndef GG_VERSION
#define GG_VERSION "unknown"
#endif

namespace gg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json point_json(const SpherePoint& p) { return json::array({p.x(), p.y(), p.z()}); }

IntegratorSettings integrator_of(const ExperimentConfig& c) {
  IntegratorSettings s;
  s.step = c.integrator_step;
  return s;
}

SphericalCap cap_of(const ExperimentConfig& c) {
  return disc_region(SpherePoint(c.map.center[0], c.map.center[1], c.map.center[2]), c.map.area);
}

HamiltonianSystem system_of(const ExperimentConfig& c) {
  if (c.map.preset == "twist") return twist_map(cap_of(c), c.map.strength);
  if (c.map.preset == "rotation") {
    const Vec3 axis = Vec3(c.map.center[0], c.map.center[1], c.map.center[2]).normalized();
    return HamiltonianSystem::height(axis, c.map.strength);
  }
  return HamiltonianSystem::constant();
}

DiffeoTrace map_of(const ExperimentConfig& c) {
  if (c.map.preset == "identity") return DiffeoTrace::identity(integrator_of(c));
  const HamiltonianSystem h[] = {system_of(c)};
  const int e[] = {c.map.power};
  return DiffeoTrace(h, e, integrator_of(c));
}

Observable observable_of(const ExperimentConfig& c) {
  if (c.quasimorphism.rfind("stand_in:", 0) == 0) return Observable::stand_in(std::stod(c.quasimorphism.substr(9)));
  QuasimorphismSpec q = QuasimorphismSpec::by_name(c.quasimorphism);
  q.schedule = c.p_schedule;
  return Observable::of(std::move(q));
}

EstimatorSettings settings_of(const ExperimentConfig& c) {
  EstimatorSettings s;
  s.n = c.n;
  s.samples = c.samples;
  s.seed = c.seed;
  s.mode = truncation_mode_from_string(c.truncation);
  s.scheme = sampling_scheme_from_string(c.sampling);
  s.schedule = c.p_schedule;
  s.workers = c.workers;
  return s;
}

std::vector<std::vector<int>> all_k(int m, int budget) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      out.push_back(k);
      if (out.size() > 100000) throw ConfigError("k_budget", "too many k vectors; list k explicitly");
      return;
    }
    for (int v = -left; v <= left; ++v) {
      k[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - std::abs(v));
    }
  };
  rec(0, budget);
  return out;
}

class Writer {
 public:
  Writer(fs::path dir, std::string hash) : dir_(std::move(dir)), hash_(std::move(hash)) {}

  void line(json j) {
    j["config_hash"] = hash_;
    lines_.push_back(j.dump());
  }

  fs::path write_lines(const std::string& name) {
    std::string text;
    for (const auto& l : lines_) text += l + "\n";
    return write(name, text);
  }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    files_.push_back(p);
    return p;
  }

  void add(const fs::path& p) { files_.push_back(p); }
  const std::vector<fs::path>& files() const { return files_; }
  const std::string& hash() const { return hash_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::string hash_;
  std::vector<std::string> lines_;
  std::vector<fs::path> files_;
};

json record(const std::string& kind, json body) {
  body["record"] = kind;
  return body;
}

void run_estimates(const ExperimentConfig& c, Writer& w) {
  const DiffeoTrace f = map_of(c);
  const Observable obs = observable_of(c);
  const EstimatorSettings s = settings_of(c);
  const GGEstimate e = c.experiment == "phi" ? estimate_phi(f, obs, s) : estimate_phi_bar(f, obs, s);
  w.line(record(c.experiment, estimate_json(e)));
}

void run_vanishing(const ExperimentConfig& c, Writer& w) {
  const VanishingReport r = vanishing_experiment(map_of(c), settings_of(c), c.entropy_iters);
  w.line(record("vanishing", {{"samples", r.samples},
                              {"considered", r.considered},
                              {"excluded", r.excluded},
                              {"subbraid_violations", r.subbraid_violations},
                              {"flagged_reducible", r.flagged_reducible},
                              {"flagged_fraction", r.flagged_fraction()},
                              {"retries", r.retries},
                              {"by_inside_count", r.by_inside_count}}));
  if (r.subbraid_violations > 0) {
    throw InvariantViolation("vanishing: " + std::to_string(r.subbraid_violations) +
                             " samples with a nontrivial outside sub-braid");
  }
}

void run_scaling(const ExperimentConfig& c, Writer& w) {
  const ScalingFit fit =
      scaling_experiment(system_of(c), observable_of(c), c.epsilon_grid, settings_of(c), integrator_of(c));
  std::string csv = "# config_hash: " + w.hash() + "\nepsilon,phibar,stderr,fitted_model_value,residual\n";
  for (const auto& row : fit.rows) {
    json j = estimate_json(row.estimate);
    j["epsilon"] = row.epsilon;
    w.line(record("scaling_cell", j));
    csv += num(row.epsilon) + "," + num(row.estimate.value) + "," + num(row.estimate.stderr_) + "," + num(row.fitted) +
           "," + num(row.residual) + "\n";
  }
  w.line(record("scaling_fit", {{"n", fit.n},
                                {"area", fit.area},
                                {"A", fit.A},
                                {"B", fit.B},
                                {"sigma_A", fit.sigma_A},
                                {"sigma_B", fit.sigma_B},
                                {"cov_AB", fit.cov_AB},
                                {"relative_residual", fit.relative_residual},
                                {"loglog_slope", fit.loglog_slope},
                                {"loglog_slope_stderr", fit.loglog_slope_stderr}}));
  w.write("scaling.csv", csv);
}

void run_additivity(const ExperimentConfig& c, Writer& w) {
  const EmbeddingSpec spec = build_embedding(2, c.map.area, c.map.strength, 1e-3, integrator_of(c));
  const DiffeoTrace f1(std::span(spec.generators).subspan(0, 1), std::vector<int>{1}, spec.integrator);
  const DiffeoTrace f2(std::span(spec.generators).subspan(1, 1), std::vector<int>{1}, spec.integrator);
  const AdditivityReport r = additivity_experiment(f1, f2, observable_of(c), settings_of(c));
  w.line(record("additivity_f1", estimate_json(r.f1)));
  w.line(record("additivity_f2", estimate_json(r.f2)));
  w.line(record("additivity_both", estimate_json(r.both)));
  w.line(record("additivity", {{"gap", r.gap},
                               {"combined_stderr", r.combined_stderr},
                               {"paired_stderr", r.paired_stderr},
                               {"within_3_combined_stderr", r.within(3.0)}}));
}

json certificate_json(const EmbeddingCertificate& cert) {
  json j;
  j["k"] = cert.k;
  j["l1"] = cert.l1;
  if (cert.lower) {
    const LowerBound& l = *cert.lower;
    json lj = {{"status", l.status}, {"homomorphism_mode", l.homomorphism_mode}};
    if (l.homomorphism_mode) {
      lj["homomorphism_values"] = l.homomorphism_values;
    } else {
      lj["aggregated"] = l.aggregated;
      lj["conservative"] = l.conservative;
      lj["per_generator"] = l.per_generator;
      lj["psi_defects"] = l.psi_defects;
      lj["frak_D"] = l.frak_D;
      lj["frak_D_conservative"] = l.frak_D_conservative;
    }
    j["lower"] = lj;
  }
  if (cert.upper) {
    json factors = json::array();
    for (const auto& f : cert.upper->factors) factors.push_back({{"generator", f.generator + 1}, {"sign", f.sign}});
    j["upper"] = {{"value", cert.upper->value},
                  {"norm_bound_per_generator", cert.upper->norm_bound_per_generator},
                  {"factors", factors}};
  }
  j["ordered"] = cert.ordered();
  j["assumptions"] = cert.assumptions;
  return j;
}

void run_embedding(const ExperimentConfig& c, Writer& w) {
  const EmbeddingSpec spec = build_embedding(c.m, c.map.area, c.map.strength, 1e-3, integrator_of(c));
  QuasimorphismSpec q = QuasimorphismSpec::by_name(c.quasimorphism);
  q.schedule = c.p_schedule;
  const EstimateTable table = measure_estimate_table(spec, q, settings_of(c), c.defect_trials);
  for (int i = 0; i < spec.m; ++i) {
    for (int j = 0; j < spec.m; ++j) {
      w.line(record("generator_estimate", {{"i", i + 1},
                                           {"j", j + 1},
                                           {"quasimorphism", table.quasimorphisms[static_cast<std::size_t>(i)]},
                                           {"value", table.M(i, j)},
                                           {"stderr", table.M_stderr(i, j)}}));
    }
  }
  const auto ks = c.k.empty() ? all_k(c.m, c.k_budget) : c.k;
  json certs = json::array();
  for (const auto& k : ks) {
    const EmbeddingCertificate cert = certify(spec, k, table);
    if (!cert.ordered()) {
      throw InvariantViolation("embedding: lower bound exceeds upper bound at k = " + json(k).dump());
    }
    certs.push_back(certificate_json(cert));
  }
  json caps = json::array();
  for (const auto& cap : spec.caps) caps.push_back({{"center", point_json(cap.center())}, {"area", cap.area()}});
  json defects = json::array();
  for (int l = 0; l < spec.m; ++l) {
    defects.push_back({{"quasimorphism", table.quasimorphisms[static_cast<std::size_t>(l)]},
                       {"sampled_defect", table.sampled_defects[static_cast<std::size_t>(l)]},
                       {"defect_bound_used", table.defects[static_cast<std::size_t>(l)]},
                       {"trials", c.defect_trials}});
  }
  json M = json::array(), S = json::array();
  for (int i = 0; i < spec.m; ++i) {
    json row = json::array(), srow = json::array();
    for (int j = 0; j < spec.m; ++j) {
      row.push_back(table.M(i, j));
      srow.push_back(table.M_stderr(i, j));
    }
    M.push_back(row);
    S.push_back(srow);
  }
  const json doc = {{"config_hash", w.hash()},
                    {"m", spec.m},
                    {"seed", c.seed},
                    {"margin", spec.margin},
                    {"caps", caps},
                    {"generator_matrix", M},
                    {"generator_matrix_stderr", S},
                    {"defects", defects},
                    {"certificates", certs}};
  w.write("certificate.json", doc.dump(2) + "\n");
}

void dump_scene(const ExperimentConfig& c, Writer& w) {
  const DiffeoTrace f = map_of(c);
  EstimatorSettings s = settings_of(c);
  Rng rng = Rng::stream(c.seed, 0, 0);
  const ConfigTuple x = uniform_sample(rng, c.n);
  const auto caps = f.support_caps();
  const ConfigTuple z = draw_basepoints(s, default_pole(caps));
  const LoopSystem loops = build_loops(f, x, z);
  const fs::path dir = w.dir() / "scene";
  fs::create_directories(dir);
  write_scene(loops, dir);
  for (std::size_t i = 0; i < loops.strands(); ++i) {
    const fs::path p = dir / ("strand_" + std::to_string(i) + ".csv");
    std::ifstream in(p, std::ios::binary);
    std::stringstream body;
    body << in.rdbuf();
    in.close();
    std::ofstream out(p, std::ios::binary);
    out << "# config_hash: " << w.hash() << "\n" << body.str();
    w.add(p);
  }
}

}  // namespace

json estimate_json(const GGEstimate& e) {
  json bp = json::array();
  for (const SpherePoint& p : e.basepoints) bp.push_back(point_json(p));
  return {{"value", e.value},
          {"stderr", e.stderr_},
          {"samples", e.samples},
          {"n", e.n},
          {"observable", e.observable},
          {"truncation", to_string(e.mode)},
          {"sampling", to_string(e.scheme)},
          {"seed", e.seed},
          {"retries", e.retries},
          {"truncated", e.truncated},
          {"homogenized", e.homogenized},
          {"schedule", e.schedule},
          {"power_means", e.power_means},
          {"power_stderrs", e.power_stderrs},
          {"warnings", e.warnings},
          {"basepoints", bp},
          {"pole", point_json(e.pole)}};
}

RunResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  const std::time_t started = std::time(nullptr);
  const fs::path dir = c.output;
  fs::create_directories(dir);
  Writer w(dir, config_hash(c));

  if (c.experiment == "phi" || c.experiment == "phibar") {
    run_estimates(c, w);
  } else if (c.experiment == "vanishing") {
    run_vanishing(c, w);
  } else if (c.experiment == "scaling") {
    run_scaling(c, w);
  } else if (c.experiment == "additivity") {
    run_additivity(c, w);
  } else {
    run_embedding(c, w);
  }
  w.write_lines("estimates.jsonl");
  if (c.dump_scene) dump_scene(c, w);

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&started));
  json files = json::array();
  for (const auto& p : w.files()) files.push_back(fs::relative(p, dir).generic_string());
  const json manifest = {{"config_hash", w.hash()},
                         {"config", to_json(c)},
                         {"seed", c.seed},
                         {"version", GG_VERSION},
                         {"started_at", stamp},
                         {"wall_time_seconds", wall},
                         {"workers", resolve_workers(c.workers)},
                         {"files", files}};
  w.write("manifest.json", manifest.dump(2) + "\n");
  return {dir, w.files(), w.hash()};
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SamplingBudgetExceeded& e) {
    err << "sampling budget exceeded: " << e.what() << "\n";
    return kExitSamplingBudget;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const StepSizeTooLarge& e) {
    err << "config error: integrator_step: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NoSupportDeclared& e) {
    err << "config error: map.preset: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PlacementFailed& e) {
    err << "config error: map.area: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IllConditionedFit& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run_command(const fs::path& config, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig c = load_config(config);
    if (overrides.seed) c.seed = *overrides.seed;
    if (overrides.out) c.output = *overrides.out;
    if (overrides.workers) c.workers = *overrides.workers;
    const RunResult r = run_experiment(c);
    out << "config_hash " << r.config_hash << "\n";
    for (const auto& f : r.files) out << f.generic_string() << "\n";
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
}

}  // namespace gg::cli
