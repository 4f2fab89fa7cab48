#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"

namespace loopmech::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

int cmd_verify(const std::string& suite, const std::string& report_path, std::uint64_t seed);
int cmd_trajectory(const RunConfig& cfg);
int cmd_legendre(const RunConfig& cfg);
int cmd_obstruction(long long trials, std::uint64_t seed, bool quaternionic,
                    const std::string& report_path);

}  // namespace loopmech::cli
