// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "pdp/cli.hpp"
#include "pdp/dp_engine.hpp"
#include "pdp/oracle.hpp"
#include "pdp/stochastic.hpp"

using namespace pdp;
using testing::money;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr std::size_t kOracleCap = 200'000;
constexpr std::size_t kSweep = 1000;

// Random state at a decision time before the final one, with holdings drawn
// between the floor and a few lots above it.
LedgerState random_state(std::mt19937_64& rng, const Market& m, const TradingRules& rules) {
  const std::size_t ti = std::uniform_int_distribution<std::size_t>(0, final_stage(m))(rng);
  LedgerState st{ti, Holdings(m.security_count(), 0), Decimal::from_raw(
                                                          std::uniform_int_distribution<std::int64_t>(0, 2'000'000)(rng), 4)};
  for (std::size_t s = 0; s < st.holdings.size(); ++s)
    st.holdings[s] = std::uniform_int_distribution<Lots>(holding_floor(m, s, rules), 6)(rng);
  return st;
}

TradeVector random_trade(std::mt19937_64& rng, const Market& m, std::size_t ti) {
  TradeVector t(m.security_count(), 0);
  for (std::size_t s = 0; s < t.size(); ++s)
    if (m.active(s, ti)) t[s] = std::uniform_int_distribution<Lots>(-8, 15)(rng);
  return t;
}

Scenario without_fees(Scenario s) {
  for (auto& b : s.brokers)
    for (auto& [sec, by_time] : b.fees)
      for (auto& [t, q] : by_time) q = money("0");
  return s;
}

std::string solve_trace(const Scenario& s, const cli::RunOptions& options) {
  std::ostringstream out, err;
  if (cli::run_solve(s, std::nullopt, options, out, err) != 0) return "error: " + err.str();
  return out.str();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240601);

  // 1 + 7: oracle sweep, then the same instances with pruning disabled.
  std::vector<Scenario> sweep;
  {
    const auto start = std::chrono::steady_clock::now();
    int matched = 0, resampled = 0, with_shorts = 0, dp_errors = 0, trading = 0;
    std::size_t largest = 0;
    testing::RandomSpec coarse;
    coarse.coarse = true;
    while (sweep.size() < kSweep) {
      Scenario s = sweep.size() % 2 ? testing::random_scenario(rng, coarse) : testing::random_scenario(rng);
      oracle::OracleResult reference;
      try {
        reference = oracle::brute_force_solve(s, PricingMode::Deterministic, {kOracleCap});
      } catch (const Error& e) {
        if (e.code() != Errc::InstanceTooLarge) throw;
        ++resampled;
        continue;
      }
      try {
        if (solve_deterministic(s).policy == reference.policy) ++matched;
      } catch (const Error&) {
        ++dp_errors;
      }
      with_shorts += s.options.allow_short;
      trading += reference.policy.traded_lots() > 0;
      largest = std::max(largest, reference.policies_enumerated);
      sweep.push_back(std::move(s));
    }
    const double elapsed = seconds_since(start);
    report(1, "oracle equivalence", matched == static_cast<int>(kSweep) && dp_errors == 0 && elapsed < 60.0,
           std::to_string(matched) + "/" + std::to_string(kSweep) + " exact policy+wealth matches, " + std::to_string(with_shorts) +
               " with shorts, " + std::to_string(trading) + " optimal policies that trade, largest " +
               std::to_string(largest) + " policies, " + std::to_string(resampled) + " resampled over the oracle cap, " + fmt(elapsed) +
               " s");
  }

  {
    const auto a = solve_deterministic(testing::single_security_scenario("0.50")).policy;
    const auto b = solve_deterministic(testing::single_security_scenario("1.00")).policy;
    const bool ok = a.terminal_wealth == money("104.50") && a.steps.size() == 2 &&
                    a.steps[0].trade == TradeVector{9} && a.steps[1].trade == TradeVector{-9} &&
                    b.terminal_wealth == money("100.00") && b.traded_lots() == 0;
    report(2, "hand-derived instances", ok,
           "fee 0.50 -> " + a.terminal_wealth.to_string() + ", fee 1.00 -> " + b.terminal_wealth.to_string() +
               " with " + std::to_string(b.traded_lots()) + " lots traded");
  }

  {
    int checked = 0, broken = 0;
    while (checked < 1000) {
      const Market m = deterministic_market(without_fees(testing::random_scenario(rng)));
      TradingRules rules;
      rules.allow_short = true;
      rules.short_cap = 3;
      const LedgerState st = random_state(rng, m, rules);
      const TradeVector t = random_trade(rng, m, st.time_index);
      const auto next = try_apply_rebalance(st, t, m, rules);
      if (!next) continue;
      ++checked;
      if (mark_to_market(next->holdings, next->cash, m, st.time_index) != wealth(st, m)) ++broken;
    }
    report(3, "self-financing with zero fees", broken == 0,
           std::to_string(checked) + " admissible trades, " + std::to_string(broken) + " changed wealth");
  }

  {
    int attempts = 0, accepted = 0, negative = 0;
    for (; attempts < 20'000; ++attempts) {
      const Scenario s = testing::random_scenario(rng);
      const Market m = deterministic_market(s);
      const TradingRules rules = s.options.rules();
      const LedgerState st = random_state(rng, m, rules);
      if (const auto next = try_apply_rebalance(st, random_trade(rng, m, st.time_index), m, rules)) {
        ++accepted;
        if (next->cash.is_negative()) ++negative;
        if (const auto w = try_liquidate_all(*next, m); w && w->is_negative()) ++negative;
      }
    }
    report(4, "admissibility fuzz", negative == 0,
           std::to_string(attempts) + " random trades, " + std::to_string(accepted) + " accepted, " +
               std::to_string(negative) + " negative-cash results");
  }

  {
    cli::RunOptions options;
    options.single_thread = true;
    int identical = 0;
    for (int i = 0; i < 100; ++i) {
      const Scenario s = testing::random_scenario(rng);
      const auto det = solve_deterministic(s).policy;
      const auto sto = solve_scenario(testing::degenerate_copy(s)).policy;
      if (det == sto && solve_trace(s, options) == solve_trace(testing::degenerate_copy(s), options)) ++identical;
    }
    report(5, "degenerate stochastic reduction", identical == 100,
           std::to_string(identical) + "/100 identical policies, values and traces");
  }

  {
    int equal = 0, nontrivial = 0;
    std::size_t outcome_total = 0;
    for (int i = 0; i < 60; ++i) {
      const Scenario s = testing::random_stochastic_scenario(rng, 64);
      const auto policy = solve_stochastic(s).policy;
      const auto outcomes = oracle::enumerate_joint_outcomes(s, 64).size();
      outcome_total += outcomes;
      nontrivial += outcomes > 1;
      if (oracle::expected_fixed_policy_value(s, policy, 64) == oracle::to_rational(policy.terminal_wealth)) ++equal;
    }
    report(6, "linearity audit", equal == 60 && nontrivial >= 50,
           std::to_string(equal) + "/60 exact rational matches, " + std::to_string(nontrivial) +
               " with random outcomes, " + std::to_string(outcome_total) + " joint outcomes in total");
  }

  {
    DpOptions unpruned;
    unpruned.prune = false;
    unpruned.max_states = 50'000'000;
    int same = 0;
    for (const auto& s : sweep)
      if (solve_deterministic(s, unpruned).policy.terminal_wealth == solve_deterministic(s).policy.terminal_wealth)
        ++same;
    report(7, "dominance pruning soundness", same == static_cast<int>(sweep.size()),
           std::to_string(same) + "/" + std::to_string(sweep.size()) + " sweep instances with identical wealth");
  }

  {
    int ok = 0;
    for (int i = 0; i < 20; ++i) {
      Scenario s = testing::random_scenario(rng);
      const Decimal base = solve_deterministic(s).policy.terminal_wealth;
      s.initial_capital += money("10");
      if (solve_deterministic(s).policy.terminal_wealth >= base) ++ok;
    }
    report(8, "capital monotonicity", ok == 20, std::to_string(ok) + "/20 non-decreasing");
  }

  {
    testing::RandomSpec big;
    big.max_securities = 3;
    big.min_times = 4;
    big.max_times = 5;
    big.lot_budget = 25;
    const auto dir = std::filesystem::temp_directory_path();
    int identical = 0;
    const int runs = 10;
    for (int i = 0; i < runs; ++i) {
      const Scenario s = testing::random_scenario(rng, big);
      const auto single = dir / "pdp_accept_single.csv";
      const auto multi = dir / "pdp_accept_multi.csv";
      cli::RunOptions one;
      one.single_thread = true;
      cli::RunOptions many;
      many.workers = 8;
      std::ostringstream out, err;
      const int a = cli::run_solve(s, single, one, out, err);
      const int b = cli::run_solve(s, multi, many, out, err);
      if (a == 0 && b == 0 && read_file(single) == read_file(multi)) ++identical;
      std::filesystem::remove(single);
      std::filesystem::remove(multi);
    }
    report(9, "deterministic traces across thread counts", identical == runs,
           std::to_string(identical) + "/" + std::to_string(runs) + " byte-identical trace files (1 vs 8 workers)");
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
