#pragma once

#include "pdp/decimal.hpp"
#include "pdp/dp_engine.hpp"
#include "pdp/market.hpp"
#include "pdp/scenario.hpp"

namespace pdp {

/// Mean of a validated price distribution, rounded half-even to `price_scale`.
Decimal expected_price(const PriceDistribution& distribution, int price_scale);

/// Mean of a fee distribution (zero fees allowed), same rounding.
Decimal expected_fee(const PriceDistribution& distribution, int price_scale);

/// Deterministic market in which every price and per-broker fee distribution
/// is replaced by its mean. Plain quotes and fees pass through unchanged;
/// the cheapest broker is then chosen on expected fees.
/// Throws ValidationError with (security, time, broker) context.
Market build_expected_market(const Scenario& scenario);

/// Certainty-equivalent solve: the deterministic optimum over expected prices
/// and fees. The policy's terminal wealth is the expected terminal wealth.
Solution solve_stochastic(const Scenario& scenario, const DpOptions& options = {});

/// Dispatches on scenario.options.mode.
Solution solve_scenario(const Scenario& scenario, const DpOptions& options = {});

/// Market used for a scenario under its own mode.
Market market_for(const Scenario& scenario);

}  // namespace pdp
