#pragma once

#include <cstddef>
#include <vector>

#include "pdp/decimal.hpp"
#include "pdp/error.hpp"
#include "pdp/ledger.hpp"
#include "pdp/market.hpp"

namespace pdp {

struct SolverOptions {
  PricingMode mode = PricingMode::Deterministic;
  Decimal lot_size = Decimal::from_integer(1, 4);
  bool allow_short = false;
  Lots short_cap = 0;
  bool hold_to_end = false;
  std::size_t max_states = 1'000'000;
  int price_scale = 4;
  int prob_scale = 6;

  TradingRules rules() const { return TradingRules{allow_short, short_cap, hold_to_end}; }

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

/// A full problem instance: initial capital S_0, market description and options.
struct Scenario {
  Decimal initial_capital;
  TimeGrid grid;
  std::vector<Security> securities;
  FeeTable brokers;
  SolverOptions options;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Every problem with the scenario under its own options.mode.
std::vector<Issue> validate_scenario(const Scenario& scenario);

/// Deterministic market from the scenario's quotes. Throws ValidationError.
Market deterministic_market(const Scenario& scenario);

}  // namespace pdp
