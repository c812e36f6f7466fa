#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdp/decimal.hpp"
#include "pdp/error.hpp"

namespace pdp {

/// Ordered decision times t_1 < ... < t_f. At least two points.
class TimeGrid {
public:
  /// Throws ValidationError unless strictly increasing with >= 2 points.
  explicit TimeGrid(std::vector<Tick> points);

  std::size_t size() const noexcept { return points_.size(); }
  Tick operator[](std::size_t index) const { return points_[index]; }
  Tick front() const { return points_.front(); }
  Tick horizon() const { return points_.back(); }
  const std::vector<Tick>& points() const noexcept { return points_; }
  std::optional<std::size_t> index_of(Tick t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
  std::vector<Tick> points_;
};

struct Outcome {
  Decimal value;
  Decimal probability;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Discrete law over prices (or fees): outcomes with weights summing to one.
struct PriceDistribution {
  std::vector<Outcome> outcomes;

  friend bool operator==(const PriceDistribution&, const PriceDistribution&) = default;
};

/// A broker's fee for one (security, time): a plain value or a distribution.
using FeeQuote = std::variant<Decimal, PriceDistribution>;

struct Security {
  std::string id;
  Tick issue_time = 0;
  Tick maturity = 0;
  std::map<Tick, Decimal> quotes;
  std::map<Tick, PriceDistribution> distributions;

  friend bool operator==(const Security&, const Security&) = default;
};

struct Broker {
  std::string id;
  /// security id -> time -> per-unit fee.
  std::map<std::string, std::map<Tick, FeeQuote>> fees;

  const FeeQuote* find(std::string_view security, Tick t) const;

  friend bool operator==(const Broker&, const Broker&) = default;
};

using FeeTable = std::vector<Broker>;

enum class PricingMode { Deterministic, Expected };

/// Circulation window [issue_time, issue_time + maturity], closed at both ends.
bool is_active(const Security& security, Tick t);

/// Deterministic quote. Throws InactiveSecurity outside the window and
/// QuoteMissing when no plain quote exists at an active time.
Decimal price_at(const Security& security, Tick t);

/// Minimum over broker fees. Throws FeeMissing on an empty list.
Decimal effective_fee(std::span<const Decimal> broker_fees);

/// Minimum over brokers quoting a plain fee for (security, t).
Decimal effective_fee(const Security& security, Tick t, const FeeTable& fees);

/// Throws NegativeWeight, NonpositivePrice or BadNormalization (with the actual sum).
void validate_distribution(const PriceDistribution& distribution);

/// Same normalization rules, but zero fees are allowed (NegativeFee otherwise).
void validate_fee_distribution(const PriceDistribution& distribution);

/// Structural checks on a market description. Deterministic mode requires a
/// plain quote and at least one plain broker fee at every active time;
/// expected mode accepts distributions in either place.
std::vector<Issue> check_market(const TimeGrid& grid, std::span<const Security> securities,
                                const FeeTable& fees, PricingMode mode);

/// Validated deterministic market with dense price/fee lookups.
///
/// Securities are held sorted by id, so a security's index is also its
/// position in id order. Immutable after construction.
class Market {
public:
  /// Throws ValidationError listing every problem found.
  Market(TimeGrid grid, std::vector<Security> securities, FeeTable fees,
         Decimal lot_size = Decimal::from_integer(1));

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t security_count() const noexcept { return securities_.size(); }
  const Security& security(std::size_t index) const { return securities_.at(index); }
  const std::vector<Security>& securities() const noexcept { return securities_; }
  const FeeTable& fees() const noexcept { return fees_; }
  const Decimal& lot_size() const noexcept { return lot_size_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  bool active(std::size_t security, std::size_t time_index) const;
  Decimal unit_price(std::size_t security, std::size_t time_index) const;
  Decimal unit_fee(std::size_t security, std::size_t time_index) const;
  /// Price and fee of one lot; exact at the quote's scale.
  const Decimal& lot_price(std::size_t security, std::size_t time_index) const;
  const Decimal& lot_fee(std::size_t security, std::size_t time_index) const;

private:
  struct Cell {
    bool active = false;
    Decimal unit_price;
    Decimal unit_fee;
    Decimal lot_price;
    Decimal lot_fee;
  };

  const Cell& cell(std::size_t security, std::size_t time_index) const;
  const Cell& active_cell(std::size_t security, std::size_t time_index) const;

  TimeGrid grid_;
  std::vector<Security> securities_;
  FeeTable fees_;
  Decimal lot_size_;
  std::vector<Cell> cells_;
};

}  // namespace pdp
