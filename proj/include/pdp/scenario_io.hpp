#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pdp/scenario.hpp"

namespace pdp {

/// Command-line adjustments applied after parsing and before validation.
struct ScenarioOverrides {
  std::optional<PricingMode> mode;
  std::optional<std::size_t> max_states;
};

/// Parses the JSON scenario format. Monetary and probability values are
/// decimal strings, parsed at options.price_scale / options.prob_scale.
/// Throws Error(Parse) on malformed JSON or schema mismatch; does not run
/// market validation.
Scenario parse_scenario(std::string_view json_text, const ScenarioOverrides& overrides = {});

/// Reads, parses and validates. Throws Error(Io), Error(Parse) or
/// ValidationError; never returns a partially valid scenario.
Scenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides = {});

/// Canonical serialization: sorted keys, decimals at their full scale.
std::string emit_scenario(const Scenario& scenario);

std::optional<PricingMode> parse_mode(std::string_view text);
std::string_view to_string(PricingMode mode);

}  // namespace pdp
