#include "pdp/error.hpp"

#include <algorithm>
#include <sstream>

namespace pdp {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::QuoteMissing: return "QuoteMissing";
    case Errc::InactiveSecurity: return "InactiveSecurity";
    case Errc::FeeMissing: return "FeeMissing";
    case Errc::BadNormalization: return "BadNormalization";
    case Errc::NonpositivePrice: return "NonpositivePrice";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NegativeFee: return "NegativeFee";
    case Errc::Inadmissible: return "Inadmissible";
    case Errc::ShortCapExceeded: return "ShortCapExceeded";
    case Errc::StateBudgetExceeded: return "StateBudgetExceeded";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::EmptyTable: return "EmptyTable";
    case Errc::Parse: return "ParseError";
    case Errc::Validation: return "ValidationError";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::optional<Decimal> amount)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message),
      amount_(amount) {}

std::string Issue::to_string() const {
  std::ostringstream os;
  os << pdp::to_string(code);
  const bool has_context = !security.empty() || time || !broker.empty();
  if (has_context) {
    os << " at (";
    const char* sep = "";
    if (!security.empty()) {
      os << security;
      sep = ", ";
    }
    if (time) {
      os << sep << "t=" << *time;
      sep = ", ";
    }
    if (!broker.empty()) os << sep << "broker " << broker;
    os << ")";
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

namespace {
std::string summarize(const std::vector<Issue>& issues) {
  std::string text = std::to_string(issues.size()) + " issue(s)";
  for (const auto& issue : issues) text += "\n  " + issue.to_string();
  return text;
}
}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(Errc::Validation, summarize(issues)), issues_(std::move(issues)) {}

bool ValidationError::contains(Errc code) const {
  return std::any_of(issues_.begin(), issues_.end(), [code](const Issue& i) { return i.code == code; });
}

}  // namespace pdp
