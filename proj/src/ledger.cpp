#include "pdp/ledger.hpp"

#include <stdexcept>

namespace pdp {
namespace {

void require_shape(const std::vector<Lots>& v, const Market& market, const char* what) {
  if (v.size() != market.security_count())
    throw std::invalid_argument(std::string(what) + " size does not match the security count");
}

bool fail(Violation* why, Errc code, std::string detail, std::optional<Decimal> amount = {}) {
  if (why) *why = Violation{code, amount, std::move(detail)};
  return false;
}

[[noreturn]] void raise(const Violation& v) { throw Error(v.code, v.detail, v.amount); }

}  // namespace

LedgerState LedgerState::initial(const Market& market, const Decimal& capital) {
  return LedgerState{0, Holdings(market.security_count(), 0), capital};
}

Decimal mark_to_market(const Holdings& holdings, const Decimal& cash, const Market& market,
                       std::size_t time_index) {
  require_shape(holdings, market, "holdings");
  Decimal total = cash;
  for (std::size_t s = 0; s < holdings.size(); ++s) {
    if (holdings[s] != 0 && market.active(s, time_index))
      total += market.lot_price(s, time_index) * holdings[s];
  }
  return total;
}

Decimal wealth(const LedgerState& state, const Market& market) {
  return mark_to_market(state.holdings, state.cash, market, state.time_index);
}

Decimal rebalance_amount(const TradeVector& trade, const Market& market, std::size_t time_index) {
  require_shape(trade, market, "trade");
  Decimal total;
  for (std::size_t s = 0; s < trade.size(); ++s) {
    if (trade[s] != 0) total += market.lot_price(s, time_index) * trade[s];
  }
  return total;
}

Decimal fees_charged(const TradeVector& trade, const Market& market, std::size_t time_index) {
  require_shape(trade, market, "trade");
  Decimal total;
  for (std::size_t s = 0; s < trade.size(); ++s) {
    if (trade[s] != 0) total += market.lot_fee(s, time_index) * (trade[s] < 0 ? -trade[s] : trade[s]);
  }
  return total;
}

Lots holding_floor(const Market& market, std::size_t security, const TradingRules& rules) {
  if (!rules.allow_short) return 0;
  return market.active(security, final_stage(market)) ? -rules.short_cap : 0;
}

std::optional<LedgerState> try_apply_rebalance(const LedgerState& state, const TradeVector& trade,
                                               const Market& market, const TradingRules& rules,
                                               Violation* why) {
  require_shape(trade, market, "trade");
  require_shape(state.holdings, market, "holdings");
  const std::size_t ti = state.time_index;
  if (ti + 1 >= market.grid().size())
    throw std::invalid_argument("no decision is taken at the horizon");

  Decimal cash = state.cash;
  Holdings next = state.holdings;
  for (std::size_t s = 0; s < trade.size(); ++s) {
    const Lots d = trade[s];
    if (d != 0) {
      if (!market.active(s, ti)) {
        fail(why, Errc::InactiveSecurity,
             market.security(s).id + " is not in circulation at t=" +
                 std::to_string(market.grid()[ti]));
        return std::nullopt;
      }
      cash -= market.lot_price(s, ti) * d;
      cash -= market.lot_fee(s, ti) * (d < 0 ? -d : d);
      next[s] += d;
    }
    if (next[s] < holding_floor(market, s, rules)) {
      fail(why, Errc::ShortCapExceeded,
           market.security(s).id + " holding " + std::to_string(next[s]) + " below floor " +
               std::to_string(holding_floor(market, s, rules)));
      return std::nullopt;
    }
  }
  if (cash.is_negative()) {
    fail(why, Errc::Inadmissible, "trade needs " + (-cash).to_string() + " more cash", -cash);
    return std::nullopt;
  }
  return LedgerState{ti + 1, std::move(next), cash};
}

LedgerState apply_rebalance(const LedgerState& state, const TradeVector& trade,
                            const Market& market, const TradingRules& rules) {
  Violation why;
  auto next = try_apply_rebalance(state, trade, market, rules, &why);
  if (!next) raise(why);
  return std::move(*next);
}

TradeVector liquidation_trade(const LedgerState& state, const Market& market) {
  require_shape(state.holdings, market, "holdings");
  TradeVector trade(state.holdings.size(), 0);
  for (std::size_t s = 0; s < trade.size(); ++s) {
    if (state.holdings[s] != 0 && market.active(s, state.time_index)) trade[s] = -state.holdings[s];
  }
  return trade;
}

std::optional<Decimal> try_liquidate_all(const LedgerState& state, const Market& market,
                                         Violation* why) {
  const TradeVector trade = liquidation_trade(state, market);
  const Decimal cash = state.cash - rebalance_amount(trade, market, state.time_index) -
                       fees_charged(trade, market, state.time_index);
  if (cash.is_negative()) {
    fail(why, Errc::Inadmissible, "liquidation leaves a deficit of " + (-cash).to_string(), -cash);
    return std::nullopt;
  }
  return cash;
}

Decimal liquidate_all(const LedgerState& state, const Market& market) {
  Violation why;
  auto value = try_liquidate_all(state, market, &why);
  if (!value) raise(why);
  return *value;
}

std::optional<Decimal> try_hold_to_end_value(const LedgerState& state, Violation* why) {
  for (Lots h : state.holdings) {
    if (h < 0) {
      fail(why, Errc::Inadmissible, "short position left open at the horizon");
      return std::nullopt;
    }
  }
  return state.cash;
}

Lots Policy::traded_lots() const {
  Lots total = 0;
  for (const auto& step : steps)
    for (Lots d : step.trade) total += d < 0 ? -d : d;
  return total;
}

Decimal replay_policy(const Policy& policy, const Market& market, const TradingRules& rules,
                      const Decimal& initial_capital) {
  const std::size_t stages = market.grid().size() - 1;
  if (policy.steps.size() != stages)
    throw std::invalid_argument("policy must hold one step per decision time");

  LedgerState state = LedgerState::initial(market, initial_capital);
  for (std::size_t k = 0; k < stages; ++k) {
    const auto& step = policy.steps[k];
    if (step.time_index != k) throw std::invalid_argument("policy steps out of order");
    if (!rules.hold_to_end && k + 1 == stages) {
      if (step.trade != liquidation_trade(state, market))
        throw std::invalid_argument("final step must liquidate every active position");
      return liquidate_all(state, market);
    }
    state = apply_rebalance(state, step.trade, market, rules);
  }
  Violation why;
  const auto value = try_hold_to_end_value(state, &why);
  if (!value) raise(why);
  return *value;
}

Decimal evaluate_fixed_policy(const Policy& policy, const Market& market,
                              const Decimal& initial_capital) {
  Decimal cash = initial_capital;
  for (const auto& step : policy.steps) {
    cash -= rebalance_amount(step.trade, market, step.time_index);
    cash -= fees_charged(step.trade, market, step.time_index);
  }
  return cash;
}

}  // namespace pdp
