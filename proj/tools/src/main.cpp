#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gg/cli/braid_tool.hpp"
#include "gg/cli/runner.hpp"
#include "gg/dynnikov.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo braid quasimorphisms on the sphere"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config;
  gg::cli::Overrides overrides;
  std::uint64_t seed = 0;
  std::string out;
  unsigned workers = 0;
  run->add_option("config", config, "Config file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the seed");
  auto* out_opt = run->add_option("--out", out, "Override the output directory");
  auto* workers_opt = run->add_option("--workers", workers, "Worker threads (0: one per core)");

  auto* braid = app.add_subcommand("braid", "Braid word utilities");
  braid->require_subcommand(1);
  std::string word, qname;
  int li = 0, lj = 0;
  int iters = gg::kDefaultEntropyIters;
  auto* reduce = braid->add_subcommand("reduce", "Free reduction");
  auto* perm = braid->add_subcommand("permutation", "Strand permutation");
  auto* expsum = braid->add_subcommand("expsum", "Exponent sum");
  auto* linking = braid->add_subcommand("linking", "Linking number of strands i and j (pure braids)");
  auto* entropy = braid->add_subcommand("entropy", "Topological entropy estimate");
  auto* signature = braid->add_subcommand("signature", "Signature of the closure");
  auto* homog = braid->add_subcommand("homogenize", "Homogenization of a quasimorphism");
  linking->add_option("i", li)->required();
  linking->add_option("j", lj)->required();
  entropy->add_option("--iters", iters, "Dynnikov iterations")->check(CLI::PositiveNumber);
  homog->add_option("q", qname, "exponent_sum, signature or linking:i,j")->required();
  for (auto* s : {reduce, perm, expsum, linking, entropy, signature, homog}) {
    s->add_option("word", word, "Braid word, e.g. \"3; 1 -2\"")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gg::cli::kExitConfig;
  }

  if (run->parsed()) {
    if (*seed_opt) overrides.seed = seed;
    if (*out_opt) overrides.out = out;
    if (*workers_opt) overrides.workers = workers;
    return gg::cli::run_command(config, overrides, std::cout, std::cerr);
  }
  if (reduce->parsed()) return gg::cli::braid_reduce(word, std::cout, std::cerr);
  if (perm->parsed()) return gg::cli::braid_permutation(word, std::cout, std::cerr);
  if (expsum->parsed()) return gg::cli::braid_expsum(word, std::cout, std::cerr);
  if (linking->parsed()) return gg::cli::braid_linking(li, lj, word, std::cout, std::cerr);
  if (entropy->parsed()) return gg::cli::braid_entropy(word, iters, std::cout, std::cerr);
  if (signature->parsed()) return gg::cli::braid_signature(word, std::cout, std::cerr);
  return gg::cli::braid_homogenize(qname, word, std::cout, std::cerr);
}
