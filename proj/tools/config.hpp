#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopmech/lagrangian.hpp"
#include "loopmech/loop.hpp"
#include "loopmech/numerics.hpp"

namespace loopmech::cli {

/// Anything wrong with user-supplied configuration (file, JSON body, field
/// values, environment).  Mapped to exit code 2 by main.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GuessStrategy { kSame, kConjugate, kPerturbed };
enum class OutputFormat { kCsv, kJson };

/// Parsed run configuration for the trajectory and legendre commands.  Every
/// field except `lagrangian` has a default; unknown keys are rejected.
struct RunConfig {
  std::string lagrangian;  ///< "linear" | "sq" | "kinetic" (required)
  std::vector<double> masses{1, 1, 1, 1, 1, 1, 1};  ///< kinetic only
  UnitOctonion initial;
  GuessStrategy guess_strategy = GuessStrategy::kSame;
  double perturb_radius = 0.05;
  int steps = 10;
  SolverConfig solver;
  std::uint64_t seed = 0;
  std::string output_path;  ///< empty: "<command>.<format>" in the cwd
  OutputFormat format = OutputFormat::kCsv;

  std::vector<UnitOctonion> points{UnitOctonion::identity()};  ///< legendre command
  int random_points = 0;                                       ///< legendre command

  static RunConfig from_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);

  Lagrangian make_lagrangian() const;
};

std::string format_extension(OutputFormat f);

/// Worker thread cap: LOOPMECH_THREADS when set (integer in [1, 256],
/// ConfigError otherwise), hardware concurrency as the fallback.
int worker_count();

}  // namespace loopmech::cli
