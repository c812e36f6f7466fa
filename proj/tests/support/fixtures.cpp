#include "fixtures.hpp"

#include <algorithm>

namespace pdp::testing {
namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Decimal cents(std::int64_t value) { return Decimal::from_raw(value * 100, 4); }

// Weights in hundredths summing to one.
std::vector<int> split_hundred(std::mt19937_64& rng, int parts) {
  std::vector<int> cuts{0, 100};
  while (static_cast<int>(cuts.size()) < parts + 1) {
    const int c = uniform(rng, 1, 99);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> weights;
  for (std::size_t i = 1; i < cuts.size(); ++i) weights.push_back(cuts[i] - cuts[i - 1]);
  return weights;
}

Decimal hundredths(int value) { return Decimal::from_raw(static_cast<std::int64_t>(value) * 10'000, 6); }

}  // namespace

Decimal money(const char* text) { return Decimal::parse(text, 4); }
Decimal prob(const char* text) { return Decimal::parse(text, 6); }

Security security(const std::string& id, Tick issue, Tick maturity, std::map<Tick, Decimal> quotes) {
  Security s;
  s.id = id;
  s.issue_time = issue;
  s.maturity = maturity;
  s.quotes = std::move(quotes);
  return s;
}

Broker flat_broker(const std::string& id, const TimeGrid& grid,
                   const std::vector<Security>& securities, const Decimal& fee) {
  Broker b;
  b.id = id;
  for (const auto& sec : securities)
    for (Tick t : grid.points())
      if (is_active(sec, t)) b.fees[sec.id][t] = fee;
  return b;
}

Scenario make_scenario(const Decimal& capital, std::vector<Tick> times,
                       std::vector<Security> securities, FeeTable brokers, SolverOptions options) {
  std::sort(securities.begin(), securities.end(),
            [](const Security& a, const Security& b) { return a.id < b.id; });
  return Scenario{capital, TimeGrid(std::move(times)), std::move(securities), std::move(brokers), options};
}

Scenario single_security_scenario(const char* fee) {
  const TimeGrid grid({1, 2, 3});
  std::vector<Security> secs{
      security("A", 1, 2, {{1, money("10.00")}, {2, money("11.50")}, {3, money("12.00")}})};
  FeeTable brokers{flat_broker("B1", grid, secs, money(fee))};
  return make_scenario(money("100.00"), {1, 2, 3}, std::move(secs), std::move(brokers));
}

Scenario coin_flip_scenario() {
  const TimeGrid grid({1, 2, 3});
  Security a = security("A", 1, 1, {{1, money("10.00")}});
  a.distributions[2] = PriceDistribution{{{money("14.00"), prob("0.5")}, {money("10.00"), prob("0.5")}}};
  std::vector<Security> secs{a};
  FeeTable brokers{flat_broker("B1", grid, secs, money("0"))};
  SolverOptions options;
  options.mode = PricingMode::Expected;
  return make_scenario(money("100.00"), {1, 2, 3}, std::move(secs), std::move(brokers), options);
}

Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec) {
  const int f = uniform(rng, spec.min_times, spec.max_times);
  std::vector<Tick> times{1};
  for (int i = 1; i < f; ++i) times.push_back(times.back() + uniform(rng, 1, 2));
  const TimeGrid grid(times);

  const int n = uniform(rng, 1, spec.max_securities);
  std::vector<Security> secs;
  std::int64_t cheapest = 2000;
  for (int s = 0; s < n; ++s) {
    const int issue = uniform(rng, 0, std::max(0, f - 2));
    const int end = uniform(rng, issue, f - 1);
    Security sec = security(std::string(1, static_cast<char>('A' + s)), times[issue],
                            times[end] - times[issue]);
    for (int ti = issue; ti <= end; ++ti) {
      const int price = spec.coarse ? 100 * uniform(rng, 1, 5) : uniform(rng, 100, 2000);
      sec.quotes[times[ti]] = cents(price);
      if (ti == issue) cheapest = std::min<std::int64_t>(cheapest, price);
    }
    secs.push_back(std::move(sec));
  }

  FeeTable brokers;
  const int broker_count = uniform(rng, 1, 2);
  for (int b = 0; b < broker_count; ++b) {
    Broker broker;
    broker.id = "R" + std::to_string(b + 1);
    for (const auto& sec : secs)
      for (Tick t : times)
        if (is_active(sec, t) && (b == 0 || chance(rng, 0.5)))
          broker.fees[sec.id][t] = cents(spec.coarse ? 25 * uniform(rng, 0, 4) : uniform(rng, 0, 100));
    brokers.push_back(std::move(broker));
  }

  SolverOptions options;
  options.allow_short = chance(rng, spec.short_probability);
  options.short_cap = options.allow_short ? uniform(rng, 1, 3) : 0;
  options.hold_to_end = chance(rng, spec.hold_to_end_probability);
  const auto capital = std::uniform_int_distribution<std::int64_t>(0, spec.lot_budget * cheapest)(rng);
  return make_scenario(cents(capital), times, std::move(secs), std::move(brokers), options);
}

Scenario random_stochastic_scenario(std::mt19937_64& rng, std::size_t max_outcomes) {
  RandomSpec spec;
  spec.short_probability = 0.2;
  Scenario scenario = random_scenario(rng, spec);
  scenario.options.mode = PricingMode::Expected;

  std::size_t joint = 1;
  for (auto& sec : scenario.securities) {
    for (auto it = sec.quotes.begin(); it != sec.quotes.end();) {
      const int k = uniform(rng, 2, 3);
      if (!chance(rng, 0.6) || joint * k > max_outcomes) {
        ++it;
        continue;
      }
      joint *= k;
      PriceDistribution dist;
      for (int w : split_hundred(rng, k)) dist.outcomes.push_back({cents(uniform(rng, 100, 2000)), hundredths(w)});
      sec.distributions[it->first] = std::move(dist);
      it = sec.quotes.erase(it);
    }
  }
  for (auto& [sec, by_time] : scenario.brokers.front().fees) {
    for (auto& [t, quote] : by_time) {
      if (!chance(rng, 0.3) || joint * 2 > max_outcomes) continue;
      joint *= 2;
      PriceDistribution dist;
      for (int w : split_hundred(rng, 2)) dist.outcomes.push_back({cents(uniform(rng, 0, 100)), hundredths(w)});
      quote = std::move(dist);
    }
  }
  return scenario;
}

Scenario degenerate_copy(const Scenario& scenario) {
  Scenario out = scenario;
  out.options.mode = PricingMode::Expected;
  for (auto& sec : out.securities) {
    for (const auto& [t, q] : sec.quotes) sec.distributions[t] = PriceDistribution{{{q, prob("1")}}};
    sec.quotes.clear();
  }
  for (auto& broker : out.brokers)
    for (auto& [sec, by_time] : broker.fees)
      for (auto& [t, quote] : by_time)
        if (const auto* plain = std::get_if<Decimal>(&quote)) quote = PriceDistribution{{{*plain, prob("1")}}};
  return out;
}

}  // namespace pdp::testing
