#include "pdp/stochastic.hpp"

namespace pdp {
namespace {

Decimal weighted_mean(const PriceDistribution& distribution, int price_scale) {
  Decimal sum;
  for (const auto& outcome : distribution.outcomes) sum += multiply(outcome.probability, outcome.value);
  return sum.rounded(price_scale);
}

}  // namespace

Decimal expected_price(const PriceDistribution& distribution, int price_scale) {
  validate_distribution(distribution);
  return weighted_mean(distribution, price_scale);
}

Decimal expected_fee(const PriceDistribution& distribution, int price_scale) {
  validate_fee_distribution(distribution);
  return weighted_mean(distribution, price_scale);
}

Market build_expected_market(const Scenario& scenario) {
  auto issues = check_market(scenario.grid, scenario.securities, scenario.brokers,
                             PricingMode::Expected);
  if (!issues.empty()) throw ValidationError(std::move(issues));

  const int scale = scenario.options.price_scale;
  std::vector<Security> securities = scenario.securities;
  for (auto& sec : securities) {
    for (const auto& [t, dist] : sec.distributions) sec.quotes[t] = expected_price(dist, scale);
    sec.distributions.clear();
  }
  FeeTable brokers = scenario.brokers;
  for (auto& broker : brokers) {
    for (auto& [sec, by_time] : broker.fees) {
      for (auto& [t, quote] : by_time) {
        if (const auto* dist = std::get_if<PriceDistribution>(&quote)) quote = expected_fee(*dist, scale);
      }
    }
  }
  return Market(scenario.grid, std::move(securities), std::move(brokers), scenario.options.lot_size);
}

Solution solve_stochastic(const Scenario& scenario, const DpOptions& options) {
  const Market market = build_expected_market(scenario);
  return solve(market, scenario.initial_capital, scenario.options.rules(),
               options.max_states.value_or(scenario.options.max_states), options);
}

Solution solve_scenario(const Scenario& scenario, const DpOptions& options) {
  return scenario.options.mode == PricingMode::Expected ? solve_stochastic(scenario, options)
                                                        : solve_deterministic(scenario, options);
}

Market market_for(const Scenario& scenario) {
  return scenario.options.mode == PricingMode::Expected ? build_expected_market(scenario)
                                                        : deterministic_market(scenario);
}

}  // namespace pdp
