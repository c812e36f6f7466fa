#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdp/decimal.hpp"
#include "pdp/ledger.hpp"
#include "pdp/market.hpp"
#include "pdp/scenario.hpp"

namespace pdp {

struct DpOptions {
  /// Worker threads used to expand a layer. 1 is the reference mode.
  std::size_t workers = 1;
  /// Keep only the maximal-cash node per holdings vector.
  bool prune = true;
  /// Overrides the scenario's max_states when set.
  std::optional<std::size_t> max_states;
};

/// Reachable state at one decision time with its accumulated value R(t_i)
/// and the back-pointer to the node (in the previous layer) it came from.
struct ValueNode {
  LedgerState state;
  Decimal value;
  std::optional<std::size_t> parent;
  TradeVector trade;
  Lots traded_lots = 0;
};

struct TerminalValue {
  Decimal wealth;
  /// Liquidation trade; empty when holding to the end.
  TradeVector trade;
};

/// Layers of surviving nodes. Within a layer nodes are ordered
/// lexicographically by the trade sequence that reached them, so a node's
/// index is its tie-break rank.
struct ValueTable {
  std::vector<Tick> decision_times;
  std::vector<std::vector<ValueNode>> layers;
  /// Terminal outcome of each node in the last layer; nullopt if infeasible.
  std::vector<std::optional<TerminalValue>> terminal;
  std::optional<std::size_t> best;
  bool hold_to_end = false;
};

using ControlSet = std::vector<TradeVector>;

/// Every admissible trade from `state`, composed security by security with
/// the remaining budget bounding each component. Includes the zero trade.
/// Output is in ascending lexicographic order.
ControlSet enumerate_controls(const LedgerState& state, const Market& market,
                              const TradingRules& rules);

/// W(t_i) - W(t_{i-1}) between a state and its successor.
Decimal delta_wealth(const LedgerState& prev, const LedgerState& next, const Market& market);

/// Forward stagewise expansion from (t_1, S_0). Throws StateBudgetExceeded.
ValueTable build_value_table(const Market& market, const Decimal& initial_capital,
                             const TradingRules& rules, std::size_t max_states,
                             const DpOptions& options = {});

/// Walks back from the best terminal node. Throws EmptyTable.
Policy extract_policy(const ValueTable& table);

struct Solution {
  Policy policy;
  ValueTable table;
};

Solution solve(const Market& market, const Decimal& initial_capital, const TradingRules& rules,
               std::size_t max_states, const DpOptions& options = {});

/// Optimal policy over the scenario's deterministic quotes.
Solution solve_deterministic(const Scenario& scenario, const DpOptions& options = {});

}  // namespace pdp
