#pragma once

#include <iosfwd>

#include "pdp/decimal.hpp"
#include "pdp/ledger.hpp"
#include "pdp/market.hpp"

namespace pdp {

inline constexpr const char* kTraceHeader =
    "time,security,holdings_before,holdings_after,trade_cash,fee_paid,cash_after,wealth";

/// Writes the policy as CSV: one row per (decision time, security traded or
/// held), sales before purchases within a time, cash running down row by row as
///   cash_after = previous cash_after - trade_cash - fee_paid,
/// then a terminal summary row at the horizon with an empty security field.
/// `wealth` marks holdings to market at the row's time.
void write_trace(std::ostream& out, const Market& market, const Policy& policy,
                 const Decimal& initial_capital);

}  // namespace pdp
