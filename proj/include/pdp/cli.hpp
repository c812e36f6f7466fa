#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "pdp/scenario.hpp"
#include "pdp/scenario_io.hpp"

namespace pdp::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kBudget = 3,
  kIo = 4,
  kOracleMismatch = 5,
};

struct RunOptions {
  ScenarioOverrides overrides;
  bool single_thread = false;
  /// 0 picks max(2, hardware threads).
  std::size_t workers = 0;
  /// Policy cap for the oracle subcommand.
  std::size_t max_policies = 10'000'000;
};

std::size_t worker_count(const RunOptions& options);

/// Solves and writes the CSV trace to `output` (or to `out` when absent),
/// followed by a "terminal_wealth=..." summary line.
int run_solve(const Scenario& scenario, const std::optional<std::filesystem::path>& output,
              const RunOptions& options, std::ostream& out, std::ostream& err);
int run_solve(const std::filesystem::path& scenario_path,
              const std::optional<std::filesystem::path>& output, const RunOptions& options,
              std::ostream& out, std::ostream& err);

/// Runs the DP engine and the brute-force oracle; 0 iff wealth and policy match.
int run_oracle_check(const std::filesystem::path& scenario_path, const RunOptions& options,
                     std::ostream& out, std::ostream& err);

/// Loads and validates only.
int run_validate(const std::filesystem::path& scenario_path, const RunOptions& options,
                 std::ostream& out, std::ostream& err);

}  // namespace pdp::cli
