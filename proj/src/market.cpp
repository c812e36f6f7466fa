#include "pdp/market.hpp"

#include <algorithm>
#include <set>

namespace pdp {

TimeGrid::TimeGrid(std::vector<Tick> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw ValidationError({Issue{Errc::Validation, {}, {}, {}, "time grid needs at least two points"}});
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] <= points_[i - 1])
      throw ValidationError(
          {Issue{Errc::Validation, {}, points_[i], {}, "time grid must be strictly increasing"}});
  }
}

std::optional<std::size_t> TimeGrid::index_of(Tick t) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), t);
  if (it == points_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

const FeeQuote* Broker::find(std::string_view security, Tick t) const {
  const auto by_security = fees.find(std::string(security));
  if (by_security == fees.end()) return nullptr;
  const auto by_time = by_security->second.find(t);
  return by_time == by_security->second.end() ? nullptr : &by_time->second;
}

bool is_active(const Security& security, Tick t) {
  return security.issue_time <= t && t <= security.issue_time + security.maturity;
}

Decimal price_at(const Security& security, Tick t) {
  if (!is_active(security, t))
    throw Error(Errc::InactiveSecurity,
                security.id + " is not in circulation at t=" + std::to_string(t));
  const auto it = security.quotes.find(t);
  if (it == security.quotes.end())
    throw Error(Errc::QuoteMissing, "no quote for " + security.id + " at t=" + std::to_string(t));
  return it->second;
}

Decimal effective_fee(std::span<const Decimal> broker_fees) {
  if (broker_fees.empty()) throw Error(Errc::FeeMissing, "no broker quotes a fee");
  return *std::min_element(broker_fees.begin(), broker_fees.end());
}

Decimal effective_fee(const Security& security, Tick t, const FeeTable& fees) {
  if (!is_active(security, t))
    throw Error(Errc::InactiveSecurity,
                security.id + " is not in circulation at t=" + std::to_string(t));
  std::vector<Decimal> quoted;
  for (const auto& broker : fees) {
    if (const auto* fee = broker.find(security.id, t)) {
      if (const auto* plain = std::get_if<Decimal>(fee)) quoted.push_back(*plain);
    }
  }
  if (quoted.empty())
    throw Error(Errc::FeeMissing, "no broker quotes " + security.id + " at t=" + std::to_string(t));
  return effective_fee(quoted);
}

namespace {

void check_normalization(const PriceDistribution& distribution, bool allow_zero_value) {
  Decimal sum;
  for (const auto& outcome : distribution.outcomes) {
    if (outcome.probability.is_negative())
      throw Error(Errc::NegativeWeight, "negative weight " + outcome.probability.to_string(),
                  outcome.probability);
    if (allow_zero_value ? outcome.value.is_negative() : !outcome.value.is_positive())
      throw Error(allow_zero_value ? Errc::NegativeFee : Errc::NonpositivePrice,
                  "outcome value " + outcome.value.to_string(), outcome.value);
    sum += outcome.probability;
  }
  if (distribution.outcomes.empty() || sum != Decimal::from_integer(1))
    throw Error(Errc::BadNormalization, "weights sum to " + sum.to_string(), sum);
}

}  // namespace

void validate_distribution(const PriceDistribution& distribution) {
  check_normalization(distribution, false);
}

void validate_fee_distribution(const PriceDistribution& distribution) {
  check_normalization(distribution, true);
}

std::vector<Issue> check_market(const TimeGrid& grid, std::span<const Security> securities,
                                const FeeTable& fees, PricingMode mode) {
  std::vector<Issue> issues;
  auto report = [&](Errc code, const std::string& security, std::optional<Tick> t,
                    const std::string& broker, std::string detail) {
    issues.push_back(Issue{code, security, t, broker, std::move(detail)});
  };
  const bool deterministic = mode == PricingMode::Deterministic;

  std::set<std::string> ids;
  for (const auto& sec : securities) {
    if (sec.id.empty()) report(Errc::Validation, sec.id, {}, {}, "empty security id");
    if (!ids.insert(sec.id).second) report(Errc::Validation, sec.id, {}, {}, "duplicate security id");
    if (sec.maturity < 0) report(Errc::Validation, sec.id, {}, {}, "negative maturity");
    if (!grid.index_of(sec.issue_time))
      report(Errc::Validation, sec.id, sec.issue_time, {}, "issue time is not a grid point");
    if (sec.issue_time + sec.maturity > grid.horizon())
      report(Errc::Validation, sec.id, {}, {}, "circulation window extends past the horizon");

    for (const auto& [t, price] : sec.quotes) {
      if (!grid.index_of(t) || !is_active(sec, t))
        report(Errc::Validation, sec.id, t, {}, "quote outside the circulation window or off-grid");
      if (!price.is_positive())
        report(Errc::NonpositivePrice, sec.id, t, {}, "price " + price.to_string());
      if (sec.distributions.count(t))
        report(Errc::Validation, sec.id, t, {}, "both a quote and a distribution given");
    }
    for (const auto& [t, dist] : sec.distributions) {
      if (!grid.index_of(t) || !is_active(sec, t))
        report(Errc::Validation, sec.id, t, {}, "distribution outside the circulation window or off-grid");
      try {
        validate_distribution(dist);
      } catch (const Error& e) {
        report(e.code(), sec.id, t, {}, e.detail());
      }
    }
    for (Tick t : grid.points()) {
      if (!is_active(sec, t)) continue;
      const bool has_quote = sec.quotes.count(t) != 0;
      const bool has_dist = sec.distributions.count(t) != 0;
      if (deterministic && !has_quote)
        report(Errc::QuoteMissing, sec.id, t, {},
               has_dist ? "only a price distribution is given" : "no quote");
      else if (!deterministic && !has_quote && !has_dist)
        report(Errc::QuoteMissing, sec.id, t, {}, "no quote or distribution");
    }
  }

  std::set<std::string> broker_ids;
  for (const auto& broker : fees) {
    if (!broker_ids.insert(broker.id).second)
      report(Errc::Validation, {}, {}, broker.id, "duplicate broker id");
    for (const auto& [sec_id, by_time] : broker.fees) {
      const auto sec = std::find_if(securities.begin(), securities.end(),
                                    [&](const Security& s) { return s.id == sec_id; });
      if (sec == securities.end()) {
        report(Errc::Validation, sec_id, {}, broker.id, "fee for an unknown security");
        continue;
      }
      for (const auto& [t, quote] : by_time) {
        if (!grid.index_of(t) || !is_active(*sec, t))
          report(Errc::Validation, sec_id, t, broker.id, "fee outside the circulation window or off-grid");
        if (const auto* plain = std::get_if<Decimal>(&quote)) {
          if (plain->is_negative()) report(Errc::NegativeFee, sec_id, t, broker.id, plain->to_string());
        } else {
          try {
            validate_fee_distribution(std::get<PriceDistribution>(quote));
          } catch (const Error& e) {
            report(e.code(), sec_id, t, broker.id, e.detail());
          }
        }
      }
    }
  }

  for (const auto& sec : securities) {
    for (Tick t : grid.points()) {
      if (!is_active(sec, t)) continue;
      bool plain = false;
      bool any = false;
      for (const auto& broker : fees) {
        if (const auto* fee = broker.find(sec.id, t)) {
          any = true;
          plain = plain || std::holds_alternative<Decimal>(*fee);
        }
      }
      if (deterministic && !plain)
        report(Errc::FeeMissing, sec.id, t, {},
               any ? "only fee distributions are given" : "no broker quotes a fee");
      else if (!deterministic && !any)
        report(Errc::FeeMissing, sec.id, t, {}, "no broker quotes a fee");
    }
  }
  return issues;
}

Market::Market(TimeGrid grid, std::vector<Security> securities, FeeTable fees, Decimal lot_size)
    : grid_(std::move(grid)),
      securities_(std::move(securities)),
      fees_(std::move(fees)),
      lot_size_(lot_size) {
  std::sort(securities_.begin(), securities_.end(),
            [](const Security& a, const Security& b) { return a.id < b.id; });
  auto issues = check_market(grid_, securities_, fees_, PricingMode::Deterministic);
  if (!lot_size_.is_positive())
    issues.push_back(Issue{Errc::Validation, {}, {}, {}, "lot size must be positive"});
  if (!issues.empty()) throw ValidationError(std::move(issues));

  const std::size_t f = grid_.size();
  cells_.resize(securities_.size() * f);
  for (std::size_t s = 0; s < securities_.size(); ++s) {
    const auto& sec = securities_[s];
    for (std::size_t ti = 0; ti < f; ++ti) {
      const Tick t = grid_[ti];
      if (!is_active(sec, t)) continue;
      Cell& c = cells_[s * f + ti];
      c.active = true;
      c.unit_price = price_at(sec, t);
      c.unit_fee = effective_fee(sec, t, fees_);
      const Decimal lot_price = multiply(c.unit_price, lot_size_);
      const Decimal lot_fee = multiply(c.unit_fee, lot_size_);
      if (!lot_price.representable_at(c.unit_price.scale()) ||
          !lot_fee.representable_at(c.unit_fee.scale()))
        issues.push_back(Issue{Errc::Validation, sec.id, t, {},
                               "price or fee per lot is not exact at the quote scale"});
      else {
        c.lot_price = lot_price.rescaled(c.unit_price.scale());
        c.lot_fee = lot_fee.rescaled(c.unit_fee.scale());
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::optional<std::size_t> Market::index_of(std::string_view id) const {
  const auto it = std::lower_bound(securities_.begin(), securities_.end(), id,
                                   [](const Security& s, std::string_view v) { return s.id < v; });
  if (it == securities_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - securities_.begin());
}

const Market::Cell& Market::cell(std::size_t security, std::size_t time_index) const {
  return cells_.at(security * grid_.size() + time_index);
}

const Market::Cell& Market::active_cell(std::size_t security, std::size_t time_index) const {
  const Cell& c = cell(security, time_index);
  if (!c.active)
    throw Error(Errc::InactiveSecurity, securities_.at(security).id +
                                            " is not in circulation at t=" +
                                            std::to_string(grid_[time_index]));
  return c;
}

bool Market::active(std::size_t security, std::size_t time_index) const {
  return cell(security, time_index).active;
}

Decimal Market::unit_price(std::size_t security, std::size_t time_index) const {
  return active_cell(security, time_index).unit_price;
}

Decimal Market::unit_fee(std::size_t security, std::size_t time_index) const {
  return active_cell(security, time_index).unit_fee;
}

const Decimal& Market::lot_price(std::size_t security, std::size_t time_index) const {
  return active_cell(security, time_index).lot_price;
}

const Decimal& Market::lot_fee(std::size_t security, std::size_t time_index) const {
  return active_cell(security, time_index).lot_fee;
}

}  // namespace pdp
