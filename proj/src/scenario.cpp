#include "pdp/scenario.hpp"

namespace pdp {

std::vector<Issue> validate_scenario(const Scenario& scenario) {
  std::vector<Issue> issues;
  const auto& o = scenario.options;
  auto option = [&](bool ok, const char* detail) {
    if (!ok) issues.push_back(Issue{Errc::Validation, {}, {}, {}, detail});
  };
  option(scenario.initial_capital >= Decimal{}, "initial_capital must be non-negative");
  option(o.price_scale >= 0 && o.price_scale <= 9, "price_scale must lie in [0, 9]");
  option(o.prob_scale >= 0 && o.prob_scale <= 12, "prob_scale must lie in [0, 12]");
  option(o.lot_size.is_positive(), "lot_size must be positive");
  option(o.short_cap >= 0 && o.short_cap <= 1'000'000, "short_cap must lie in [0, 1000000]");
  option(o.max_states >= 1, "max_states must be at least 1");

  auto market = check_market(scenario.grid, scenario.securities, scenario.brokers, o.mode);
  issues.insert(issues.end(), market.begin(), market.end());
  return issues;
}

Market deterministic_market(const Scenario& scenario) {
  return Market(scenario.grid, scenario.securities, scenario.brokers, scenario.options.lot_size);
}

}  // namespace pdp
