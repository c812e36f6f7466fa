#include "pdp/trace.hpp"

#include <ostream>
#include <stdexcept>

namespace pdp {

void write_trace(std::ostream& out, const Market& market, const Policy& policy,
                 const Decimal& initial_capital) {
  out << kTraceHeader << '\n';
  Holdings holdings(market.security_count(), 0);
  Decimal cash = initial_capital;
  const Decimal zero = Decimal::from_integer(0, initial_capital.scale());

  for (const auto& step : policy.steps) {
    const std::size_t ti = step.time_index;
    // Rows that raise cash come first, so the running cash column stays
    // non-negative whenever the step as a whole is admissible.
    for (const bool selling : {true, false}) {
      for (std::size_t s = 0; s < holdings.size(); ++s) {
        const Lots before = holdings[s];
        const Lots delta = step.trade.at(s);
        if ((delta < 0) != selling || (before == 0 && delta == 0)) continue;
        Decimal trade_cash = zero;
        Decimal fee = zero;
        if (delta != 0) {
          trade_cash = market.lot_price(s, ti) * delta;
          fee = market.lot_fee(s, ti) * (delta < 0 ? -delta : delta);
        }
        cash = cash - trade_cash - fee;
        holdings[s] = before + delta;
        out << step.time << ',' << market.security(s).id << ',' << before << ',' << holdings[s] << ','
            << trade_cash << ',' << fee << ',' << cash << ','
            << mark_to_market(holdings, cash, market, ti) << '\n';
      }
    }
  }
  // Forced liquidation leaves only forfeited holdings; hold-to-end values
  // what remains at zero. Either way terminal wealth is the cash left.
  if (cash != policy.terminal_wealth)
    throw std::logic_error("trace cash " + cash.to_string() + " disagrees with terminal wealth " +
                           policy.terminal_wealth.to_string());
  out << market.grid().horizon() << ",,,," << zero << ',' << zero << ',' << cash << ','
      << policy.terminal_wealth << '\n';
}

}  // namespace pdp
