#include "pdp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "pdp/dp_engine.hpp"
#include "pdp/oracle.hpp"
#include "pdp/stochastic.hpp"
#include "pdp/trace.hpp"

namespace pdp::cli {
namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::StateBudgetExceeded:
    case Errc::InstanceTooLarge:
      return kBudget;
    case Errc::Io:
      return kIo;
    default:
      return kValidation;
  }
}

// Runs `body`, mapping library errors to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

void print_policy(std::ostream& os, const Market& market, const Policy& policy) {
  for (const auto& step : policy.steps) {
    os << "  t=" << step.time << ':';
    bool any = false;
    for (std::size_t s = 0; s < step.trade.size(); ++s) {
      if (step.trade[s] == 0) continue;
      os << ' ' << market.security(s).id << (step.trade[s] > 0 ? "+" : "") << step.trade[s];
      any = true;
    }
    if (!any) os << " (none)";
    os << '\n';
  }
}

}  // namespace

std::size_t worker_count(const RunOptions& options) {
  if (options.single_thread) return 1;
  if (options.workers > 0) return options.workers;
  return std::max(2u, std::thread::hardware_concurrency());
}

int run_solve(const Scenario& scenario, const std::optional<std::filesystem::path>& output,
              const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DpOptions dp;
    dp.workers = worker_count(options);
    const Market market = market_for(scenario);
    const Solution solution = solve(market, scenario.initial_capital, scenario.options.rules(),
                                    scenario.options.max_states, dp);
    std::ostringstream trace;
    write_trace(trace, market, solution.policy, scenario.initial_capital);

    const std::string summary = "terminal_wealth=" + solution.policy.terminal_wealth.to_string() +
                                " mode=" + std::string(to_string(scenario.options.mode)) + "\n";
    if (!output) {
      out << trace.str();
      err << summary;
      return static_cast<int>(kOk);
    }
    std::ofstream file(*output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::Io, "cannot write " + output->string());
    file << trace.str();
    file.flush();
    if (!file) throw Error(Errc::Io, "failed writing " + output->string());
    out << summary;
    return static_cast<int>(kOk);
  });
}

int run_solve(const std::filesystem::path& scenario_path,
              const std::optional<std::filesystem::path>& output, const RunOptions& options,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(scenario_path, options.overrides);
    return run_solve(scenario, output, options, out, err);
  });
}

int run_oracle_check(const std::filesystem::path& scenario_path, const RunOptions& options,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(scenario_path, options.overrides);
    const Market market = market_for(scenario);
    DpOptions dp;
    dp.workers = worker_count(options);
    const Solution solution = solve(market, scenario.initial_capital, scenario.options.rules(),
                                    scenario.options.max_states, dp);
    const auto reference = oracle::brute_force_solve(scenario, scenario.options.mode,
                                                     oracle::OracleOptions{options.max_policies});
    out << "dp_wealth=" << solution.policy.terminal_wealth
        << " oracle_wealth=" << reference.policy.terminal_wealth
        << " policies=" << reference.policies_enumerated << '\n';
    if (solution.policy == reference.policy) {
      out << "match\n";
      return static_cast<int>(kOk);
    }
    out << "MISMATCH\ndp policy:\n";
    print_policy(out, market, solution.policy);
    out << "oracle policy:\n";
    print_policy(out, market, reference.policy);
    return static_cast<int>(kOracleMismatch);
  });
}

int run_validate(const std::filesystem::path& scenario_path, const RunOptions& options,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(scenario_path, options.overrides);
    // Lot-size exactness is only checked when the market is built.
    (void)market_for(scenario);
    out << "ok: " << scenario.securities.size() << " securities, " << scenario.grid.size()
        << " times, mode=" << to_string(scenario.options.mode) << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace pdp::cli
