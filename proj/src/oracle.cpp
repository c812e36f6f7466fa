#include "pdp/oracle.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "pdp/stochastic.hpp"

namespace pdp::oracle {
namespace {

class Search {
public:
  Search(const Market& market, const TradingRules& rules, std::size_t max_policies)
      : market_(market), rules_(rules), max_policies_(max_policies) {}

  void visit(const LedgerState& state) {
    const std::size_t stages = market_.grid().size() - 1;
    const std::size_t stage = path_.size();
    if (rules_.hold_to_end && stage == stages) {
      if (auto w = try_hold_to_end_value(state)) record(*w);
      return;
    }
    if (!rules_.hold_to_end && stage + 1 == stages) {
      TradeVector liquidation = liquidation_trade(state, market_);
      if (auto w = try_liquidate_all(state, market_)) {
        path_.push_back(std::move(liquidation));
        record(*w);
        path_.pop_back();
      }
      return;
    }
    for (auto& trade : candidates(state)) {
      if (auto next = try_apply_rebalance(state, trade, market_, rules_)) {
        path_.push_back(std::move(trade));
        visit(*next);
        path_.pop_back();
      }
    }
  }

  bool found() const { return found_; }
  std::size_t count() const { return count_; }
  const std::vector<TradeVector>& best_path() const { return best_path_; }
  const Decimal& best_wealth() const { return best_wealth_; }

private:
  // Cartesian product of per-security ranges. The buy bound ignores fees and
  // assumes every other position is sold, so it never excludes a feasible
  // trade; the ledger filters the rest.
  std::vector<TradeVector> candidates(const LedgerState& state) const {
    const std::size_t n = market_.security_count();
    const std::size_t ti = state.time_index;
    Decimal liquid = state.cash;
    for (std::size_t s = 0; s < n; ++s) {
      if (market_.active(s, ti))
        liquid += market_.lot_price(s, ti) * (state.holdings[s] - holding_floor(market_, s, rules_));
    }
    std::vector<Lots> lo(n, 0), hi(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (!market_.active(s, ti)) continue;
      lo[s] = holding_floor(market_, s, rules_) - state.holdings[s];
      hi[s] = floor_div(liquid, market_.lot_price(s, ti));
    }
    std::vector<TradeVector> out;
    TradeVector trade = lo;
    while (true) {
      out.push_back(trade);
      std::size_t s = n;
      while (s > 0) {
        --s;
        if (trade[s] < hi[s]) {
          ++trade[s];
          break;
        }
        trade[s] = lo[s];
        if (s == 0) return out;
      }
      if (n == 0) return out;
    }
  }

  void record(const Decimal& wealth) {
    if (++count_ > max_policies_)
      throw Error(Errc::InstanceTooLarge,
                  "more than " + std::to_string(max_policies_) + " admissible policies");
    Lots lots = 0;
    for (const auto& t : path_)
      for (Lots d : t) lots += d < 0 ? -d : d;
    bool better = !found_ || wealth > best_wealth_;
    if (found_ && wealth == best_wealth_) {
      better = lots < best_lots_ || (lots == best_lots_ && path_ < best_path_);
    }
    if (better) {
      found_ = true;
      best_wealth_ = wealth;
      best_lots_ = lots;
      best_path_ = path_;
    }
  }

  const Market& market_;
  TradingRules rules_;
  std::size_t max_policies_;
  std::vector<TradeVector> path_;
  std::size_t count_ = 0;
  bool found_ = false;
  Decimal best_wealth_;
  Lots best_lots_ = 0;
  std::vector<TradeVector> best_path_;
};

Rational pow10(int exponent) {
  boost::multiprecision::cpp_int r = 1;
  for (int i = 0; i < exponent; ++i) r *= 10;
  return Rational(r);
}

}  // namespace

OracleResult brute_force_solve(const Scenario& scenario, PricingMode mode,
                               const OracleOptions& options) {
  const Market market =
      mode == PricingMode::Expected ? build_expected_market(scenario) : deterministic_market(scenario);
  Search search(market, scenario.options.rules(), options.max_policies);
  search.visit(LedgerState::initial(market, scenario.initial_capital));
  if (!search.found()) throw Error(Errc::EmptyTable, "no admissible policy");

  OracleResult result;
  result.policies_enumerated = search.count();
  result.policy.terminal_wealth = search.best_wealth();
  const auto& path = search.best_path();
  for (std::size_t k = 0; k < path.size(); ++k)
    result.policy.steps.push_back(PolicyStep{k, market.grid()[k], path[k]});
  return result;
}

Rational to_rational(const Decimal& value) {
  return Rational(value.raw()) / pow10(value.scale());
}

std::vector<JointOutcome> enumerate_joint_outcomes(const Scenario& scenario,
                                                   std::size_t max_outcomes) {
  // Each slot is one distribution and a setter that substitutes outcome r.
  struct Slot {
    const PriceDistribution* distribution;
    std::function<void(Scenario&, const Decimal&)> assign;
  };
  std::vector<Slot> slots;
  for (std::size_t s = 0; s < scenario.securities.size(); ++s) {
    for (const auto& [t, dist] : scenario.securities[s].distributions) {
      slots.push_back({&dist, [s, t = t](Scenario& out, const Decimal& v) {
                         out.securities[s].distributions.erase(t);
                         out.securities[s].quotes[t] = v;
                       }});
    }
  }
  for (std::size_t b = 0; b < scenario.brokers.size(); ++b) {
    for (const auto& [sec, by_time] : scenario.brokers[b].fees) {
      for (const auto& [t, quote] : by_time) {
        if (const auto* dist = std::get_if<PriceDistribution>(&quote)) {
          slots.push_back({dist, [b, sec = sec, t = t](Scenario& out, const Decimal& v) {
                             out.brokers[b].fees[sec][t] = v;
                           }});
        }
      }
    }
  }

  std::size_t total = 1;
  for (const auto& slot : slots) {
    total *= slot.distribution->outcomes.size();
    if (total > max_outcomes)
      throw Error(Errc::InstanceTooLarge, "joint outcome space exceeds " + std::to_string(max_outcomes));
  }

  std::vector<JointOutcome> out;
  std::vector<std::size_t> pick(slots.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    JointOutcome joint{scenario, Rational(1)};
    joint.scenario.options.mode = PricingMode::Deterministic;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Outcome& o = slots[i].distribution->outcomes[pick[i]];
      slots[i].assign(joint.scenario, o.value);
      joint.probability *= to_rational(o.probability);
    }
    out.push_back(std::move(joint));
    for (std::size_t i = slots.size(); i-- > 0;) {
      if (++pick[i] < slots[i].distribution->outcomes.size()) break;
      pick[i] = 0;
    }
  }
  return out;
}

namespace {

// Keeps, for every (security, time), only the broker with the lowest expected
// fee. The broker is committed before outcomes are drawn, as in the
// expected-value model; fees of unused brokers integrate out.
Scenario commit_brokers(const Scenario& scenario) {
  const int scale = scenario.options.price_scale;
  auto mean = [scale](const FeeQuote& q) {
    if (const auto* plain = std::get_if<Decimal>(&q)) return *plain;
    return expected_fee(std::get<PriceDistribution>(q), scale);
  };
  std::map<std::pair<std::string, Tick>, std::pair<std::size_t, Decimal>> chosen;
  for (std::size_t b = 0; b < scenario.brokers.size(); ++b) {
    for (const auto& [sec, by_time] : scenario.brokers[b].fees) {
      for (const auto& [t, quote] : by_time) {
        const Decimal m = mean(quote);
        auto [it, inserted] = chosen.try_emplace({sec, t}, b, m);
        if (!inserted && m < it->second.second) it->second = {b, m};
      }
    }
  }
  Scenario out = scenario;
  for (std::size_t b = 0; b < out.brokers.size(); ++b) {
    for (auto& [sec, by_time] : out.brokers[b].fees) {
      std::erase_if(by_time, [&, &sec = sec](const auto& entry) {
        return chosen.at({sec, entry.first}).first != b;
      });
    }
  }
  return out;
}

}  // namespace

Rational expected_fixed_policy_value(const Scenario& scenario, const Policy& policy,
                                     std::size_t max_outcomes) {
  Rational total = 0;
  for (const auto& joint : enumerate_joint_outcomes(commit_brokers(scenario), max_outcomes)) {
    const Market market = deterministic_market(joint.scenario);
    total += joint.probability *
             to_rational(evaluate_fixed_policy(policy, market, scenario.initial_capital));
  }
  return total;
}

}  // namespace pdp::oracle
