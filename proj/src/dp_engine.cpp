#include "pdp/dp_engine.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

namespace pdp {
namespace {

Lots lots_in(const TradeVector& trade) {
  Lots total = 0;
  for (Lots d : trade) total += d < 0 ? -d : d;
  return total;
}

struct Candidate {
  LedgerState state;
  std::size_t parent = 0;
  TradeVector trade;
  Lots traded_lots = 0;
};

// Total order used both for dominance among equal holdings and for the final
// tie-break: more cash, then fewer lots traded, then lexicographically smaller
// trade prefix (parent rank first, then this stage's trade).
bool preferred(const Candidate& a, const Candidate& b) {
  if (const auto c = a.state.cash <=> b.state.cash; c != 0) return c > 0;
  if (a.traded_lots != b.traded_lots) return a.traded_lots < b.traded_lots;
  if (a.parent != b.parent) return a.parent < b.parent;
  return a.trade < b.trade;
}

struct Bucket {
  std::map<Holdings, Candidate> best;
  std::vector<Candidate> all;
};

void keep(Bucket& bucket, Candidate&& c, bool prune) {
  if (!prune) {
    bucket.all.push_back(std::move(c));
    return;
  }
  auto [it, inserted] = bucket.best.try_emplace(c.state.holdings, c);
  if (!inserted && preferred(c, it->second)) it->second = std::move(c);
}

void expand_range(const std::vector<ValueNode>& frontier, std::size_t begin, std::size_t end,
                  const Market& market, const TradingRules& rules, bool prune, Bucket& out) {
  for (std::size_t i = begin; i < end; ++i) {
    const ValueNode& node = frontier[i];
    for (auto& trade : enumerate_controls(node.state, market, rules)) {
      auto next = try_apply_rebalance(node.state, trade, market, rules);
      // enumerate_controls only yields admissible trades.
      if (!next) throw std::logic_error("enumerated control rejected by the ledger");
      const Lots lots = node.traded_lots + lots_in(trade);
      keep(out, Candidate{std::move(*next), i, std::move(trade), lots}, prune);
    }
  }
}

std::vector<ValueNode> expand_layer(const std::vector<ValueNode>& frontier, const Market& market,
                                    const TradingRules& rules, std::size_t max_states,
                                    const DpOptions& options) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.workers, frontier.size()));
  std::vector<Bucket> buckets(workers);
  if (workers == 1) {
    expand_range(frontier, 0, frontier.size(), market, rules, options.prune, buckets[0]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> threads;
      const std::size_t chunk = (frontier.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(frontier.size(), w * chunk);
        const std::size_t end = std::min(frontier.size(), begin + chunk);
        threads.emplace_back([&, w, begin, end] {
          try {
            expand_range(frontier, begin, end, market, rules, options.prune, buckets[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // preferred() is a total order, so the merge result does not depend on
  // how the frontier was partitioned.
  Bucket merged = std::move(buckets[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    if (options.prune) {
      for (auto& [holdings, c] : buckets[w].best) keep(merged, std::move(c), true);
    } else {
      for (auto& c : buckets[w].all) merged.all.push_back(std::move(c));
    }
  }
  std::vector<Candidate> survivors;
  if (options.prune) {
    survivors.reserve(merged.best.size());
    for (auto& [holdings, c] : merged.best) survivors.push_back(std::move(c));
  } else {
    survivors = std::move(merged.all);
  }
  if (survivors.size() > max_states)
    throw Error(Errc::StateBudgetExceeded,
                std::to_string(survivors.size()) + " frontier states exceed max_states=" +
                    std::to_string(max_states));

  std::sort(survivors.begin(), survivors.end(), [](const Candidate& a, const Candidate& b) {
    if (a.parent != b.parent) return a.parent < b.parent;
    return a.trade < b.trade;
  });
  std::vector<ValueNode> layer;
  layer.reserve(survivors.size());
  for (auto& c : survivors) {
    Decimal value = wealth(c.state, market);
    layer.push_back(ValueNode{std::move(c.state), value, c.parent, std::move(c.trade), c.traded_lots});
  }
  return layer;
}

void compose_controls(std::size_t s, const Decimal& cash, const LedgerState& state,
                      const Market& market, const TradingRules& rules,
                      const std::vector<Decimal>& raise_after, TradeVector& trade,
                      ControlSet& out) {
  const std::size_t n = trade.size();
  if (s == n) {
    if (!cash.is_negative()) out.push_back(trade);
    return;
  }
  const std::size_t ti = state.time_index;
  if (!market.active(s, ti)) {
    trade[s] = 0;
    compose_controls(s + 1, cash, state, market, rules, raise_after, trade, out);
    return;
  }
  const Decimal& price = market.lot_price(s, ti);
  const Decimal& fee = market.lot_fee(s, ti);
  const Decimal& raise = raise_after[s + 1];
  const Lots lower = holding_floor(market, s, rules) - state.holdings[s];
  // Buying d lots costs d * (price + fee); whatever the later securities can
  // raise by selling is the most that could still fund it.
  const Lots upper = std::max<Lots>(0, floor_div(cash + raise, price + fee));
  for (Lots d = lower; d <= upper; ++d) {
    const Decimal next = cash - price * d - fee * (d < 0 ? -d : d);
    if ((next + raise).is_negative()) continue;
    trade[s] = d;
    compose_controls(s + 1, next, state, market, rules, raise_after, trade, out);
  }
  trade[s] = 0;
}

}  // namespace

ControlSet enumerate_controls(const LedgerState& state, const Market& market,
                              const TradingRules& rules) {
  const std::size_t n = market.security_count();
  const std::size_t ti = state.time_index;
  // raise_after[s]: most cash securities s..n-1 can free up by selling to their floor.
  std::vector<Decimal> raise_after(n + 1);
  for (std::size_t s = n; s-- > 0;) {
    raise_after[s] = raise_after[s + 1];
    if (!market.active(s, ti)) continue;
    const Decimal per_lot = market.lot_price(s, ti) - market.lot_fee(s, ti);
    const Lots sellable = state.holdings[s] - holding_floor(market, s, rules);
    if (per_lot.is_positive() && sellable > 0) raise_after[s] += per_lot * sellable;
  }
  ControlSet out;
  TradeVector trade(n, 0);
  compose_controls(0, state.cash, state, market, rules, raise_after, trade, out);
  return out;
}

Decimal delta_wealth(const LedgerState& prev, const LedgerState& next, const Market& market) {
  return wealth(next, market) - wealth(prev, market);
}

ValueTable build_value_table(const Market& market, const Decimal& initial_capital,
                             const TradingRules& rules, std::size_t max_states,
                             const DpOptions& options) {
  ValueTable table;
  table.hold_to_end = rules.hold_to_end;
  const auto& grid = market.grid();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) table.decision_times.push_back(grid[i]);

  LedgerState root = LedgerState::initial(market, initial_capital);
  Decimal root_value = wealth(root, market);
  table.layers.push_back({ValueNode{std::move(root), root_value, std::nullopt, {}, 0}});

  // Free rebalancing happens at t_1 .. t_{f-2}; t_{f-1} is the liquidation
  // unless holding to the end, in which case it is one more free stage.
  const std::size_t free_stages = rules.hold_to_end ? grid.size() - 1 : grid.size() - 2;
  for (std::size_t stage = 0; stage < free_stages; ++stage)
    table.layers.push_back(expand_layer(table.layers.back(), market, rules, max_states, options));

  const auto& last = table.layers.back();
  table.terminal.resize(last.size());
  Lots best_lots = 0;
  for (std::size_t i = 0; i < last.size(); ++i) {
    const ValueNode& node = last[i];
    std::optional<TerminalValue> outcome;
    if (rules.hold_to_end) {
      if (auto v = try_hold_to_end_value(node.state)) outcome = TerminalValue{*v, {}};
    } else {
      TradeVector trade = liquidation_trade(node.state, market);
      if (auto v = try_liquidate_all(node.state, market)) outcome = TerminalValue{*v, std::move(trade)};
    }
    if (!outcome) continue;
    const Lots lots = node.traded_lots + lots_in(outcome->trade);
    const auto& incumbent = table.best ? table.terminal[*table.best] : std::nullopt;
    if (!incumbent || outcome->wealth > incumbent->wealth ||
        (outcome->wealth == incumbent->wealth && lots < best_lots)) {
      table.best = i;
      best_lots = lots;
    }
    table.terminal[i] = std::move(outcome);
  }
  return table;
}

Policy extract_policy(const ValueTable& table) {
  if (table.layers.empty() || !table.best)
    throw Error(Errc::EmptyTable, "value table holds no feasible terminal node");
  Policy policy;
  const auto& terminal = *table.terminal.at(*table.best);
  policy.terminal_wealth = terminal.wealth;

  std::vector<TradeVector> trades;
  std::size_t index = *table.best;
  for (std::size_t layer = table.layers.size() - 1; layer > 0; --layer) {
    const ValueNode& node = table.layers[layer].at(index);
    trades.push_back(node.trade);
    index = *node.parent;
  }
  std::reverse(trades.begin(), trades.end());
  if (!table.hold_to_end) trades.push_back(terminal.trade);

  for (std::size_t k = 0; k < trades.size(); ++k)
    policy.steps.push_back(PolicyStep{k, table.decision_times.at(k), std::move(trades[k])});
  return policy;
}

Solution solve(const Market& market, const Decimal& initial_capital, const TradingRules& rules,
               std::size_t max_states, const DpOptions& options) {
  ValueTable table = build_value_table(market, initial_capital, rules, max_states, options);
  Policy policy = extract_policy(table);
  return Solution{std::move(policy), std::move(table)};
}

Solution solve_deterministic(const Scenario& scenario, const DpOptions& options) {
  const Market market = deterministic_market(scenario);
  return solve(market, scenario.initial_capital, scenario.options.rules(),
               options.max_states.value_or(scenario.options.max_states), options);
}

}  // namespace pdp
