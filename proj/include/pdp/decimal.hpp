#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pdp {

/// Signed fixed-point decimal: value = raw / 10^scale.
///
/// Each value carries its own scale. Addition, subtraction and comparison
/// between values of different scales are exact (the coarser operand is
/// rescaled up). Nothing rounds implicitly; the only rounding entry point is
/// rounded(), which uses round-half-even. Overflow of the 64-bit raw value
/// throws std::overflow_error.
class Decimal {
public:
  static constexpr int kMaxScale = 18;

  constexpr Decimal() = default;

  static Decimal from_raw(std::int64_t raw, int scale);
  static Decimal from_integer(std::int64_t value, int scale = 0);

  /// Parses "[-]digits[.digits]". More fractional digits than `scale` are
  /// accepted only when the excess digits are all zero.
  /// Throws std::invalid_argument on malformed text or lost precision.
  static Decimal parse(std::string_view text, int scale);

  std::int64_t raw() const noexcept { return raw_; }
  int scale() const noexcept { return scale_; }

  bool is_zero() const noexcept { return raw_ == 0; }
  bool is_negative() const noexcept { return raw_ < 0; }
  bool is_positive() const noexcept { return raw_ > 0; }

  /// Exact change of scale; throws std::domain_error if digits would be lost.
  Decimal rescaled(int scale) const;
  /// Round-half-even to `scale` (no-op when scale >= this->scale()).
  Decimal rounded(int scale) const;
  /// True when rescaled(scale) would not lose digits.
  bool representable_at(int scale) const;

  std::string to_string() const;

  Decimal operator-() const;
  Decimal& operator+=(const Decimal& rhs);
  Decimal& operator-=(const Decimal& rhs);

  friend Decimal operator+(Decimal lhs, const Decimal& rhs) { return lhs += rhs; }
  friend Decimal operator-(Decimal lhs, const Decimal& rhs) { return lhs -= rhs; }
  friend Decimal operator*(const Decimal& lhs, std::int64_t factor);
  friend Decimal operator*(std::int64_t factor, const Decimal& rhs) { return rhs * factor; }

  friend std::strong_ordering operator<=>(const Decimal& lhs, const Decimal& rhs);
  friend bool operator==(const Decimal& lhs, const Decimal& rhs);

private:
  constexpr Decimal(std::int64_t raw, int scale) : raw_(raw), scale_(scale) {}

  std::int64_t raw_ = 0;
  int scale_ = 0;
};

/// Exact product; result scale is lhs.scale() + rhs.scale().
Decimal multiply(const Decimal& lhs, const Decimal& rhs);

/// floor(numerator / denominator) for a positive denominator.
std::int64_t floor_div(const Decimal& numerator, const Decimal& denominator);

Decimal abs(const Decimal& value);
Decimal min(const Decimal& a, const Decimal& b);
Decimal max(const Decimal& a, const Decimal& b);

std::ostream& operator<<(std::ostream& os, const Decimal& value);

}  // namespace pdp
