#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pdp/decimal.hpp"
#include "pdp/market.hpp"
#include "pdp/scenario.hpp"

namespace pdp::testing {

/// Money literal at the default price scale.
Decimal money(const char* text);
/// Probability literal at the default probability scale.
Decimal prob(const char* text);

Security security(const std::string& id, Tick issue, Tick maturity,
                  std::map<Tick, Decimal> quotes = {});

/// One broker charging `fee` per unit for every active (security, time).
Broker flat_broker(const std::string& id, const TimeGrid& grid,
                   const std::vector<Security>& securities, const Decimal& fee);

Scenario make_scenario(const Decimal& capital, std::vector<Tick> times,
                       std::vector<Security> securities, FeeTable brokers,
                       SolverOptions options = {});

/// S_0 = 100, times [1,2,3], A issued at 1 with maturity 2, quotes
/// 10.00 / 11.50 / 12.00, one broker with a flat fee.
Scenario single_security_scenario(const char* fee);

/// Expected-mode instance: A at 10.00 then {14.00 w.p. 0.5, 10.00 w.p. 0.5},
/// zero fees, S_0 = 100, times [1,2,3], maturity 1.
Scenario coin_flip_scenario();

struct RandomSpec {
  int max_securities = 3;
  int min_times = 2;
  int max_times = 4;
  double short_probability = 0.3;
  double hold_to_end_probability = 0.2;
  /// Capital is drawn up to this many lots of the cheapest first-time price.
  int lot_budget = 10;
  /// Whole-unit prices in [1, 5] and fees in quarters; makes ties between
  /// policies common.
  bool coarse = false;
};

/// Random deterministic scenario (prices in [1, 20], fees in [0, 1], two
/// decimals) drawn from `rng`.
Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec = {});

/// Random expected-mode scenario whose distributions have 2-3 outcomes with
/// weights in hundredths, so means are exact at the price scale. The joint
/// outcome space stays within `max_outcomes`.
Scenario random_stochastic_scenario(std::mt19937_64& rng, std::size_t max_outcomes = 64);

/// Expected-mode copy with every quote and fee turned into a one-outcome
/// distribution.
Scenario degenerate_copy(const Scenario& scenario);

}  // namespace pdp::testing
