#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gg/cli/braid_tool.hpp"
#include "gg/cli/config.hpp"
#include "gg/cli/runner.hpp"

using namespace gg::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gg_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string run_braid(int (*fn)(const std::string&, std::ostream&, std::ostream&), const std::string& w,
                      int expected = 0) {
  std::ostringstream out, err;
  EXPECT_EQ(fn(w, out, err), expected) << err.str();
  return out.str();
}

}  // namespace

TEST(Config, NormalizationRoundTripsByteIdentically) {
  const ExperimentConfig c = parse_config(nlohmann::json::parse(R"({"experiment":"phi","n":5,"seed":9})"));
  const std::string text = normalized_text(c);
  EXPECT_EQ(normalized_text(parse_config(nlohmann::json::parse(text))), text);
  EXPECT_EQ(config_hash(c), config_hash(parse_config(nlohmann::json::parse(text))));
  ExperimentConfig d = c;
  d.seed = 10;
  EXPECT_NE(config_hash(c), config_hash(d));
  d = c;
  d.output = "elsewhere";
  EXPECT_EQ(config_hash(c), config_hash(d));
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Config, ErrorsNameTheField) {
  auto field = [](const char* text) {
    try {
      parse_config(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field(R"({"experiment":"scaling","epsilon_grid":[0.5],"truncation":"enforce"})"), "epsilon_grid");
  EXPECT_EQ(field(R"({"n":1})"), "n");
  EXPECT_EQ(field(R"({"samples":0})"), "samples");
  EXPECT_EQ(field(R"({"p_schedule":[8,4]})"), "p_schedule");
  EXPECT_EQ(field(R"({"experiment":"dance"})"), "experiment");
  EXPECT_EQ(field(R"({"quasimorphism":"mystery"})"), "quasimorphism");
  EXPECT_EQ(field(R"({"map":{"area":1.5}})"), "map.area");
  EXPECT_EQ(field(R"({"map":{"colour":1}})"), "map.colour");
  EXPECT_EQ(field(R"({"integrator_step":-1})"), "integrator_step");
  EXPECT_EQ(field(R"({"n":"four"})"), "n");
  EXPECT_EQ(field(R"({"experiment":"scaling","truncation":"none"})"), "truncation");
  EXPECT_EQ(field(R"({"m":2,"k":[[1,2,3]]})"), "k");
}

TEST(Runner, ScalingWithSinglePointGridExitsTwo) {
  const fs::path dir = scratch("grid");
  const fs::path cfg = write_config(dir, R"({"experiment":"scaling","epsilon_grid":[0.5],
    "truncation":"enforce_reducible_vanishing","quasimorphism":"stand_in:0.5"})");
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cfg, {}, out, err), kExitConfig);
  EXPECT_NE(err.str().find("epsilon_grid"), std::string::npos);
}

TEST(Runner, IdentityPhiIsZeroAndOutputsCarryHash) {
  const fs::path dir = scratch("identity");
  const fs::path cfg = write_config(dir, R"({"experiment":"phi","map":{"preset":"identity"},"samples":40})");
  Overrides o;
  o.out = (dir / "out").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command(cfg, o, out, err), kExitOk) << err.str();
  const auto line = nlohmann::json::parse(slurp(dir / "out" / "estimates.jsonl"));
  EXPECT_EQ(line["value"], 0.0);
  EXPECT_EQ(line["stderr"], 0.0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  EXPECT_EQ(manifest["config_hash"], line["config_hash"]);
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
  EXPECT_TRUE(manifest.contains("version"));
}

TEST(Runner, DeterministicAcrossRunsAndWorkers) {
  const fs::path dir = scratch("determinism");
  const fs::path cfg = write_config(dir, R"({"experiment":"phibar","map":{"preset":"twist","area":0.2},
    "samples":40,"p_schedule":[2,4],"integrator_step":0.01,"dump_scene":true})");
  std::ostringstream out, err;
  Overrides a, b;
  a.out = (dir / "a").string();
  a.workers = 1;
  b.out = (dir / "b").string();
  b.workers = 3;
  ASSERT_EQ(run_command(cfg, a, out, err), kExitOk) << err.str();
  ASSERT_EQ(run_command(cfg, b, out, err), kExitOk) << err.str();
  EXPECT_EQ(slurp(dir / "a" / "estimates.jsonl"), slurp(dir / "b" / "estimates.jsonl"));
  EXPECT_EQ(slurp(dir / "a" / "scene" / "strand_0.csv"), slurp(dir / "b" / "scene" / "strand_0.csv"));
  const std::string scene = slurp(dir / "a" / "scene" / "strand_0.csv");
  EXPECT_EQ(scene.rfind("# config_hash: ", 0), 0u);
  EXPECT_NE(scene.find("\nt,x,y,z\n"), std::string::npos);
}

TEST(Runner, ScalingCsvColumns) {
  const fs::path dir = scratch("scaling");
  const fs::path cfg = write_config(dir, R"({"experiment":"scaling","map":{"preset":"twist","area":0.5},
    "samples":100,"sampling":"stratified","truncation":"enforce_reducible_vanishing",
    "quasimorphism":"stand_in:0.5","epsilon_grid":[1,0.8,0.6]})");
  Overrides o;
  o.out = (dir / "out").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command(cfg, o, out, err), kExitOk) << err.str();
  std::istringstream csv(slurp(dir / "out" / "scaling.csv"));
  std::string first, header;
  std::getline(csv, first);
  std::getline(csv, header);
  EXPECT_EQ(first.rfind("# config_hash: ", 0), 0u);
  EXPECT_EQ(header, "epsilon,phibar,stderr,fitted_model_value,residual");
  int rows = 0;
  for (std::string l; std::getline(csv, l);) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Runner, MissingConfigFileIsConfigError) {
  std::ostringstream out, err;
  EXPECT_EQ(run_command("/nonexistent/gg.json", {}, out, err), kExitConfig);
}

TEST(BraidTool, Subcommands) {
  EXPECT_EQ(run_braid(braid_signature, "2; 1 1 1"), "-2\n");
  EXPECT_EQ(run_braid(braid_permutation, "3; 1 1"), "id\n");
  EXPECT_EQ(run_braid(braid_reduce, "3; 1 -1 2"), "3; 2\n");
  EXPECT_EQ(run_braid(braid_expsum, "3; 1 1 -2"), "1\n");
  const std::string h = run_braid([](const std::string& w, std::ostream& o, std::ostream& e) {
    return braid_entropy(w, 200, o, e);
  }, "3; 1 -2");
  EXPECT_NEAR(std::stod(h), 0.9624, 1e-3);
  std::ostringstream out, err;
  EXPECT_EQ(braid_linking(1, 2, "2; 1 1", out, err), 0);
  EXPECT_EQ(out.str(), "1\n");
  std::ostringstream o2, e2;
  EXPECT_EQ(braid_homogenize("exponent_sum", "3; 1 1", o2, e2), 0);
  EXPECT_EQ(o2.str().substr(0, 11), "2.00000000\n");
  std::ostringstream o3, e3;
  EXPECT_EQ(braid_reduce("3; 1 q", o3, e3), kExitConfig);
  EXPECT_NE(e3.str().find("column 6"), std::string::npos);
}
