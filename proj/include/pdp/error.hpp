#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdp/decimal.hpp"

namespace pdp {

/// Grid time in abstract integer ticks.
using Tick = std::int64_t;

enum class Errc {
  QuoteMissing,
  InactiveSecurity,
  FeeMissing,
  BadNormalization,
  NonpositivePrice,
  NegativeWeight,
  NegativeFee,
  Inadmissible,
  ShortCapExceeded,
  StateBudgetExceeded,
  InstanceTooLarge,
  EmptyTable,
  Parse,
  Validation,
  Io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message, std::optional<Decimal> amount = std::nullopt);

  Errc code() const noexcept { return code_; }
  /// Message without the leading error-code name.
  const std::string& detail() const noexcept { return detail_; }
  /// Deficit for Inadmissible, actual sum for BadNormalization.
  const std::optional<Decimal>& amount() const noexcept { return amount_; }

private:
  Errc code_;
  std::string detail_;
  std::optional<Decimal> amount_;
};

/// One validation finding with as much (security, time, broker) context as applies.
struct Issue {
  Errc code = Errc::Validation;
  std::string security;
  std::optional<Tick> time;
  std::string broker;
  std::string detail;

  std::string to_string() const;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const noexcept { return issues_; }
  bool contains(Errc code) const;

private:
  std::vector<Issue> issues_;
};

}  // namespace pdp
