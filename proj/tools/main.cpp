#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "config.hpp"

namespace {

using loopmech::cli::ConfigError;
using loopmech::cli::OutputFormat;
using loopmech::cli::RunConfig;

/// Shared --config/--seed/--format plumbing for the two config-driven
/// subcommands.
struct ConfigArgs {
  std::string config_path;
  std::string format;
  std::uint64_t seed = 0;
  CLI::App* cmd = nullptr;

  void attach(CLI::App* sub) {
    cmd = sub;
    sub->add_option("config,--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--format", format, "override the output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  RunConfig load() const {
    RunConfig cfg = RunConfig::from_file(config_path);
    if (cmd->count("--seed")) cfg.seed = seed;
    if (!format.empty())
      cfg.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopmech: discrete Lagrangian and Hamiltonian mechanics on the unit "
               "octonions and related loops"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "algebra | loop | mechanics | all");
  std::string verify_report;
  verify->add_option("--report", verify_report, "write a JSON report");
  std::uint64_t verify_seed = 0;
  verify->add_option("--seed", verify_seed, "base seed for sampled checks");

  auto* trajectory =
      app.add_subcommand("trajectory", "iterate the discrete dynamics from a config");
  ConfigArgs traj_args;
  traj_args.attach(trajectory);

  auto* legendre =
      app.add_subcommand("legendre", "evaluate both Legendre maps and their ranks");
  ConfigArgs leg_args;
  leg_args.attach(legendre);

  auto* obstruction = app.add_subcommand(
      "obstruction", "sample the cotangent-transfer defect on random triples");
  long long trials = 1000;
  obstruction->add_option("--trials", trials, "number of sampled triples");
  std::uint64_t obs_seed = 0;
  obstruction->add_option("--seed", obs_seed, "sampling seed");
  bool quaternionic = false;
  obstruction->add_flag("--quaternionic", quaternionic,
                        "restrict sampling to the embedded quaternion sphere");
  std::string obs_report;
  obstruction->add_option("--report", obs_report, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? loopmech::cli::kExitOk : loopmech::cli::kExitConfigError;
  }

  try {
    if (*verify) return loopmech::cli::cmd_verify(suite, verify_report, verify_seed);
    if (*trajectory) return loopmech::cli::cmd_trajectory(traj_args.load());
    if (*legendre) return loopmech::cli::cmd_legendre(leg_args.load());
    if (*obstruction)
      return loopmech::cli::cmd_obstruction(trials, obs_seed, quaternionic, obs_report);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return loopmech::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return loopmech::cli::kExitSolverFailure;
  }
  return loopmech::cli::kExitConfigError;
}
