#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multi-period portfolio rebalancing by dynamic programming"};
  app.require_subcommand(1);

  std::string scenario;
  std::string mode;
  std::string output;
  std::size_t max_states = 0;
  std::size_t max_policies = 10'000'000;
  std::size_t workers = 0;
  bool single_thread = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sub->add_option("--mode", mode, "Pricing mode")->check(CLI::IsMember({"det", "exp", "deterministic", "expected"}));
    sub->add_option("--max-states", max_states, "Frontier cap")->check(CLI::PositiveNumber);
    sub->add_flag("--single-thread", single_thread, "Expand layers on one thread");
    sub->add_option("--workers", workers, "Worker threads (default: hardware, at least 2)");
  };

  auto* solve = app.add_subcommand("solve", "Solve and write the policy trace");
  add_common(solve);
  solve->add_option("--output", output, "Trace CSV path (stdout if omitted)");

  auto* oracle = app.add_subcommand("oracle", "Cross-check the DP engine against brute force");
  add_common(oracle);
  oracle->add_option("--max-policies", max_policies, "Brute-force enumeration cap");

  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  pdp::cli::RunOptions options;
  if (!mode.empty()) options.overrides.mode = pdp::parse_mode(mode);
  if (max_states > 0) options.overrides.max_states = max_states;
  options.single_thread = single_thread;
  options.workers = workers;
  options.max_policies = max_policies;

  if (*solve) {
    std::optional<std::filesystem::path> out_path;
    if (!output.empty()) out_path = output;
    return pdp::cli::run_solve(scenario, out_path, options, std::cout, std::cerr);
  }
  if (*oracle) return pdp::cli::run_oracle_check(scenario, options, std::cout, std::cerr);
  return pdp::cli::run_validate(scenario, options, std::cout, std::cerr);
}
