#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdp/decimal.hpp"
#include "pdp/market.hpp"

namespace pdp {

using Lots = std::int64_t;

/// Lots held per security, indexed like Market::securities(). A dense vector
/// has no "explicit zero" ambiguity, so equality is plain vector equality.
using Holdings = std::vector<Lots>;

/// Per-security change h(t_i) - h(t_{i-1}) in lots at one decision time.
using TradeVector = std::vector<Lots>;

struct TradingRules {
  bool allow_short = false;
  /// Lower bound -short_cap on holdings of a shortable security.
  Lots short_cap = 0;
  /// Skip forced liquidation at t_{f-1}; unsold holdings are worth zero.
  bool hold_to_end = false;

  friend bool operator==(const TradingRules&, const TradingRules&) = default;
};

/// Investor state entering decision time grid[time_index]: cash S_{i-1} and
/// holdings h(t_{i-1}).
struct LedgerState {
  std::size_t time_index = 0;
  Holdings holdings;
  Decimal cash;

  static LedgerState initial(const Market& market, const Decimal& capital);

  friend bool operator==(const LedgerState&, const LedgerState&) = default;
};

/// Why a ledger operation refused a trade.
struct Violation {
  Errc code = Errc::Inadmissible;
  std::optional<Decimal> amount;
  std::string detail;
};

/// Index of the last decision time t_{f-1}.
inline std::size_t final_stage(const Market& market) { return market.grid().size() - 2; }

/// cash + sum of lot_price(t) * holdings over securities active at t.
Decimal mark_to_market(const Holdings& holdings, const Decimal& cash, const Market& market,
                       std::size_t time_index);

/// W(t_i) for the state's own time.
Decimal wealth(const LedgerState& state, const Market& market);

/// s(t_i): signed cash moved into securities (positive for net buying).
/// Throws InactiveSecurity if a traded security is out of circulation.
Decimal rebalance_amount(const TradeVector& trade, const Market& market, std::size_t time_index);

/// sum p(t_i) * |delta| over traded securities.
Decimal fees_charged(const TradeVector& trade, const Market& market, std::size_t time_index);

/// Lowest holding allowed after any trade. Shorts are permitted only in
/// securities still in circulation at the final decision time, so every open
/// short can be covered there.
Lots holding_floor(const Market& market, std::size_t security, const TradingRules& rules);

/// S_i = S_{i-1} - s(t_i) - fees; successor state at time_index + 1.
/// Returns nullopt (and fills `why`) when the trade is not admissible.
std::optional<LedgerState> try_apply_rebalance(const LedgerState& state, const TradeVector& trade,
                                               const Market& market, const TradingRules& rules,
                                               Violation* why = nullptr);

/// Throwing form of try_apply_rebalance: Inadmissible(deficit),
/// ShortCapExceeded or InactiveSecurity.
LedgerState apply_rebalance(const LedgerState& state, const TradeVector& trade,
                            const Market& market, const TradingRules& rules);

/// The trade selling (or covering) every position in an active security.
/// Holdings in matured securities are forfeited and not traded.
TradeVector liquidation_trade(const LedgerState& state, const Market& market);

std::optional<Decimal> try_liquidate_all(const LedgerState& state, const Market& market,
                                         Violation* why = nullptr);

/// Terminal wealth W(t_T) = S_{T-1} after selling everything at the state's
/// time. Throws Inadmissible if covering shorts would leave negative cash.
Decimal liquidate_all(const LedgerState& state, const Market& market);

/// Terminal wealth when holding to the end: cash only. Open shorts are not
/// allowed to expire.
std::optional<Decimal> try_hold_to_end_value(const LedgerState& state, Violation* why = nullptr);

struct PolicyStep {
  std::size_t time_index = 0;
  Tick time = 0;
  TradeVector trade;

  friend bool operator==(const PolicyStep&, const PolicyStep&) = default;
};

/// One trade per decision time t_1 .. t_{f-1}, the last being the
/// liquidation unless holding to the end.
struct Policy {
  std::vector<PolicyStep> steps;
  Decimal terminal_wealth;

  Lots traded_lots() const;

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Replays the policy through the ledger with full admissibility checks and
/// returns the terminal wealth it produces.
Decimal replay_policy(const Policy& policy, const Market& market, const TradingRules& rules,
                      const Decimal& initial_capital);

/// Pure cash-flow evaluation of a fixed trade sequence (no admissibility
/// checks): S_0 - sum_i (s(t_i) + fees(t_i)).
Decimal evaluate_fixed_policy(const Policy& policy, const Market& market,
                              const Decimal& initial_capital);

}  // namespace pdp
