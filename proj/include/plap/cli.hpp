#pragma once

#include "plap/config.hpp"

namespace plap::cli {

// Exit codes shared by all commands:
//   0 computed and passed, 1 computed but the summary check failed,
//   2 configuration/validation/input errors, 3 solver failures.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;

/// Validates the config and dispatches on config.command. Writes artifacts
/// under config.output_dir; on error writes error.json there (best effort)
/// and reports through the exit code.
int run(const RunConfig& config);

int run_solve(const RunConfig& config);
int run_sweep(const RunConfig& config);
int run_expand(const RunConfig& config);
int run_compare(const RunConfig& config);
int run_check(const RunConfig& config);
int run_bracket(const RunConfig& config);

}  // namespace plap::cli
