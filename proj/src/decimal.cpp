#include "pdp/decimal.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pdp {
namespace {

__extension__ typedef __int128 Wide;

constexpr Wide pow10(int exponent) {
  Wide r = 1;
  for (int i = 0; i < exponent; ++i) r *= 10;
  return r;
}

void check_scale(int scale) {
  if (scale < 0 || scale > Decimal::kMaxScale)
    throw std::invalid_argument("decimal scale out of range: " + std::to_string(scale));
}

std::int64_t narrow(Wide value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("decimal overflow");
  return static_cast<std::int64_t>(value);
}

// Raw value of `d` expressed at a finer-or-equal `scale`.
Wide widen(const Decimal& d, int scale) {
  return static_cast<Wide>(d.raw()) * pow10(scale - d.scale());
}

}  // namespace

Decimal Decimal::from_raw(std::int64_t raw, int scale) {
  check_scale(scale);
  return Decimal(raw, scale);
}

Decimal Decimal::from_integer(std::int64_t value, int scale) {
  check_scale(scale);
  return Decimal(narrow(static_cast<Wide>(value) * pow10(scale)), scale);
}

Decimal Decimal::parse(std::string_view text, int scale) {
  check_scale(scale);
  const std::string original(text);
  auto fail = [&](const char* why) -> Decimal {
    throw std::invalid_argument("invalid decimal '" + original + "': " + why);
  };
  if (text.empty()) return fail("empty");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return fail("no digits");
  if (dot != std::string_view::npos && frac.empty()) return fail("trailing point");

  Wide value = 0;
  const Wide limit = static_cast<Wide>(std::numeric_limits<std::int64_t>::max());
  for (char c : whole) {
    if (c < '0' || c > '9') return fail("unexpected character");
    value = value * 10 + (c - '0');
    if (value > limit) return fail("out of range");
  }
  int digits = 0;
  for (char c : frac) {
    if (c < '0' || c > '9') return fail("unexpected character");
    if (digits < scale) {
      value = value * 10 + (c - '0');
      ++digits;
    } else if (c != '0') {
      return fail("more fractional digits than the configured scale");
    }
  }
  value *= pow10(scale - digits);
  if (value > limit) return fail("out of range");
  return Decimal(static_cast<std::int64_t>(negative ? -value : value), scale);
}

Decimal Decimal::rescaled(int scale) const {
  check_scale(scale);
  if (scale >= scale_) return Decimal(narrow(widen(*this, scale)), scale);
  const Wide divisor = pow10(scale_ - scale);
  if (raw_ % divisor != 0)
    throw std::domain_error("rescaling " + to_string() + " to scale " + std::to_string(scale) +
                            " loses digits");
  return Decimal(static_cast<std::int64_t>(raw_ / divisor), scale);
}

bool Decimal::representable_at(int scale) const {
  if (scale >= scale_) return true;
  return raw_ % static_cast<std::int64_t>(pow10(scale_ - scale)) == 0;
}

Decimal Decimal::rounded(int scale) const {
  check_scale(scale);
  if (scale >= scale_) return rescaled(scale);
  const Wide divisor = pow10(scale_ - scale);
  Wide q = raw_ / divisor;
  Wide r = raw_ % divisor;
  // C++ division truncates toward zero; fix up to floor so the remainder is non-negative.
  if (r < 0) {
    r += divisor;
    q -= 1;
  }
  const Wide twice = 2 * r;
  if (twice > divisor || (twice == divisor && (q % 2 != 0))) q += 1;
  return Decimal(narrow(q), scale);
}

std::string Decimal::to_string() const {
  const bool negative = raw_ < 0;
  Wide magnitude = negative ? -static_cast<Wide>(raw_) : static_cast<Wide>(raw_);
  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  } while (magnitude != 0);
  while (static_cast<int>(digits.size()) <= scale_) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  if (scale_ > 0) digits.insert(digits.end() - scale_, '.');
  return negative ? "-" + digits : digits;
}

Decimal Decimal::operator-() const { return Decimal(narrow(-static_cast<Wide>(raw_)), scale_); }

Decimal& Decimal::operator+=(const Decimal& rhs) {
  const int s = std::max(scale_, rhs.scale_);
  raw_ = narrow(widen(*this, s) + widen(rhs, s));
  scale_ = s;
  return *this;
}

Decimal& Decimal::operator-=(const Decimal& rhs) {
  const int s = std::max(scale_, rhs.scale_);
  raw_ = narrow(widen(*this, s) - widen(rhs, s));
  scale_ = s;
  return *this;
}

Decimal operator*(const Decimal& lhs, std::int64_t factor) {
  return Decimal(narrow(static_cast<Wide>(lhs.raw_) * factor), lhs.scale_);
}

std::strong_ordering operator<=>(const Decimal& lhs, const Decimal& rhs) {
  const int s = std::max(lhs.scale_, rhs.scale_);
  const Wide a = widen(lhs, s);
  const Wide b = widen(rhs, s);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const Decimal& lhs, const Decimal& rhs) { return (lhs <=> rhs) == 0; }

Decimal multiply(const Decimal& lhs, const Decimal& rhs) {
  const int s = lhs.scale() + rhs.scale();
  if (s > Decimal::kMaxScale) throw std::overflow_error("decimal product scale too large");
  return Decimal::from_raw(narrow(static_cast<Wide>(lhs.raw()) * rhs.raw()), s);
}

std::int64_t floor_div(const Decimal& numerator, const Decimal& denominator) {
  if (!denominator.is_positive()) throw std::invalid_argument("floor_div needs a positive denominator");
  const int s = std::max(numerator.scale(), denominator.scale());
  const Wide n = widen(numerator, s);
  const Wide d = widen(denominator, s);
  Wide q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return narrow(q);
}

Decimal abs(const Decimal& value) { return value.is_negative() ? -value : value; }
Decimal min(const Decimal& a, const Decimal& b) { return b < a ? b : a; }
Decimal max(const Decimal& a, const Decimal& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Decimal& value) { return os << value.to_string(); }

}  // namespace pdp
