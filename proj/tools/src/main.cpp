#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "chebzero/error.hpp"
#include "commands.hpp"

using namespace chebzero;
using namespace chebzero::cli;

namespace {

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kInvalidArgument, "cannot read config " + path);
  std::stringstream text;
  text << in.rdbuf();
  return nlohmann::json::parse(text.str(), nullptr, true, true);
}

int error_exit(const Error& e, bool experiment) {
  switch (e.kind()) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kUnsupported:
      return kExitConfig;
    case ErrorKind::kMissingArtifact:
      return kExitMissingArtifact;
    default:
      return experiment ? kExitExperiment : kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chebzero: Chebyshev bases, Bergman functions and zeros of random polynomials"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "out";
  Overrides overrides;
  std::uint64_t seed = 0;
  int threads = 1;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(RunContext&, const Overrides&);
    bool experiment;
  };
  const Command commands[] = {
      {"basis", "Build a Chebyshev basis and its M_j / tau_j report", cmd_basis, false},
      {"green", "Compare (1/2n) log Gamma_n with V_K on a grid", cmd_green, false},
      {"expect", "Expected zero distribution experiment", cmd_expect, true},
      {"variance", "Variance bound experiment", cmd_variance, true},
      {"sequence", "Single-sequence equidistribution trace", cmd_sequence, true},
      {"moment", "Moment constants of a coefficient measure", cmd_moment, true},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the RNG seed");
    sub->add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (app.got_subcommand(c.name)) chosen = &c;
  }
  auto* sub = app.get_subcommand(chosen->name);
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--threads")) overrides.threads = threads;

  nlohmann::json config;
  try {
    config = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  int rc = kExitOk;
  try {
    RunContext ctx(out_dir, chosen->name, config);
    try {
      rc = chosen->run(ctx, overrides);
    } catch (const NonConvergenceError& e) {
      std::cerr << "solver did not converge: " << e.what() << " (iterations " << e.iterations()
                << ", last residual " << e.last_residual() << ")\n";
      rc = chosen->experiment ? kExitExperiment : kExitSolver;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      rc = error_exit(e, chosen->experiment);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      rc = kExitConfig;
    }
    ctx.finish(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return chosen->experiment ? kExitExperiment : kExitSolver;
  }
  return rc;
}
