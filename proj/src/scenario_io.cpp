#include "pdp/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pdp {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(Errc::Parse, where + ": " + what);
}

void allow_keys(const json& object, const std::string& where, std::set<std::string> keys) {
  if (!object.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (!keys.count(key)) schema_error(where, "unknown field '" + key + "'");
  }
}

const json& require(const json& object, const std::string& key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error(where, "missing field '" + key + "'");
  return *it;
}

Decimal decimal_field(const json& value, int scale, const std::string& where) {
  if (!value.is_string()) schema_error(where, "expected a decimal string");
  try {
    return Decimal::parse(value.get<std::string>(), scale);
  } catch (const std::exception& e) {
    schema_error(where, e.what());
  }
}

std::int64_t integer_field(const json& value, const std::string& where) {
  if (!value.is_number_integer()) schema_error(where, "expected an integer");
  return value.get<std::int64_t>();
}

bool bool_field(const json& value, const std::string& where) {
  if (!value.is_boolean()) schema_error(where, "expected true or false");
  return value.get<bool>();
}

Tick tick_key(const std::string& key, const std::string& where) {
  Tick t = 0;
  const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), t);
  if (ec != std::errc{} || end != key.data() + key.size())
    schema_error(where, "time key '" + key + "' is not an integer");
  return t;
}

PriceDistribution distribution_field(const json& value, const char* value_key,
                                     const SolverOptions& o, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array of outcomes");
  PriceDistribution dist;
  for (std::size_t r = 0; r < value.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    allow_keys(value[r], at, {value_key, "prob"});
    dist.outcomes.push_back(Outcome{decimal_field(require(value[r], value_key, at), o.price_scale, at + "." + value_key),
                                    decimal_field(require(value[r], "prob", at), o.prob_scale, at + ".prob")});
  }
  return dist;
}

SolverOptions options_field(const json& root) {
  SolverOptions o;
  const auto it = root.find("options");
  if (it == root.end()) return o;
  const json& j = *it;
  const std::string where = "options";
  allow_keys(j, where, {"mode", "lot_size", "allow_short", "short_cap", "hold_to_end", "max_states",
                        "price_scale", "prob_scale"});
  // Scales first: lot_size is parsed at price_scale.
  if (j.contains("price_scale")) o.price_scale = static_cast<int>(integer_field(j["price_scale"], where + ".price_scale"));
  if (j.contains("prob_scale")) o.prob_scale = static_cast<int>(integer_field(j["prob_scale"], where + ".prob_scale"));
  if (o.price_scale < 0 || o.price_scale > 9) schema_error(where + ".price_scale", "must lie in [0, 9]");
  if (o.prob_scale < 0 || o.prob_scale > 12) schema_error(where + ".prob_scale", "must lie in [0, 12]");
  o.lot_size = Decimal::from_integer(1, o.price_scale);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) schema_error(where + ".mode", "expected a string");
    const auto mode = parse_mode(j["mode"].get<std::string>());
    if (!mode) schema_error(where + ".mode", "expected 'deterministic' or 'expected'");
    o.mode = *mode;
  }
  if (j.contains("lot_size")) o.lot_size = decimal_field(j["lot_size"], o.price_scale, where + ".lot_size");
  if (j.contains("allow_short")) o.allow_short = bool_field(j["allow_short"], where + ".allow_short");
  if (j.contains("short_cap")) o.short_cap = integer_field(j["short_cap"], where + ".short_cap");
  if (j.contains("hold_to_end")) o.hold_to_end = bool_field(j["hold_to_end"], where + ".hold_to_end");
  if (j.contains("max_states")) {
    const auto n = integer_field(j["max_states"], where + ".max_states");
    if (n < 1) schema_error(where + ".max_states", "must be at least 1");
    o.max_states = static_cast<std::size_t>(n);
  }
  return o;
}

Security security_field(const json& j, const SolverOptions& o, const std::string& where) {
  allow_keys(j, where, {"id", "issue_time", "maturity", "quotes", "distributions"});
  Security sec;
  const json& id = require(j, "id", where);
  if (!id.is_string()) schema_error(where + ".id", "expected a string");
  sec.id = id.get<std::string>();
  sec.issue_time = integer_field(require(j, "issue_time", where), where + ".issue_time");
  sec.maturity = integer_field(require(j, "maturity", where), where + ".maturity");
  if (j.contains("quotes")) {
    const std::string at = where + ".quotes";
    if (!j["quotes"].is_object()) schema_error(at, "expected an object");
    for (const auto& [key, value] : j["quotes"].items())
      sec.quotes[tick_key(key, at)] = decimal_field(value, o.price_scale, at + "." + key);
  }
  if (j.contains("distributions")) {
    const std::string at = where + ".distributions";
    if (!j["distributions"].is_object()) schema_error(at, "expected an object");
    for (const auto& [key, value] : j["distributions"].items())
      sec.distributions[tick_key(key, at)] = distribution_field(value, "price", o, at + "." + key);
  }
  return sec;
}

Broker broker_field(const json& j, const SolverOptions& o, const std::string& where) {
  allow_keys(j, where, {"id", "fees"});
  Broker broker;
  const json& id = require(j, "id", where);
  if (!id.is_string()) schema_error(where + ".id", "expected a string");
  broker.id = id.get<std::string>();
  const json& fees = require(j, "fees", where);
  if (!fees.is_object()) schema_error(where + ".fees", "expected an object");
  for (const auto& [sec, by_time] : fees.items()) {
    const std::string at = where + ".fees." + sec;
    if (!by_time.is_object()) schema_error(at, "expected an object");
    auto& out = broker.fees[sec];
    for (const auto& [key, value] : by_time.items()) {
      const Tick t = tick_key(key, at);
      if (value.is_array())
        out[t] = distribution_field(value, "fee", o, at + "." + key);
      else
        out[t] = decimal_field(value, o.price_scale, at + "." + key);
    }
  }
  return broker;
}

json distribution_json(const PriceDistribution& dist, const char* value_key) {
  json out = json::array();
  for (const auto& o : dist.outcomes)
    out.push_back({{value_key, o.value.to_string()}, {"prob", o.probability.to_string()}});
  return out;
}

}  // namespace

std::optional<PricingMode> parse_mode(std::string_view text) {
  if (text == "deterministic" || text == "det") return PricingMode::Deterministic;
  if (text == "expected" || text == "exp") return PricingMode::Expected;
  return std::nullopt;
}

std::string_view to_string(PricingMode mode) {
  return mode == PricingMode::Expected ? "expected" : "deterministic";
}

Scenario parse_scenario(std::string_view json_text, const ScenarioOverrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  allow_keys(root, "scenario", {"initial_capital", "times", "securities", "brokers", "options"});

  SolverOptions options = options_field(root);
  if (overrides.mode) options.mode = *overrides.mode;
  if (overrides.max_states) options.max_states = *overrides.max_states;

  const Decimal capital = decimal_field(require(root, "initial_capital", "scenario"),
                                        options.price_scale, "initial_capital");
  const json& times = require(root, "times", "scenario");
  if (!times.is_array()) schema_error("times", "expected an array of integers");
  std::vector<Tick> points;
  for (std::size_t i = 0; i < times.size(); ++i)
    points.push_back(integer_field(times[i], "times[" + std::to_string(i) + "]"));

  std::vector<Security> securities;
  if (root.contains("securities")) {
    if (!root["securities"].is_array()) schema_error("securities", "expected an array");
    for (std::size_t i = 0; i < root["securities"].size(); ++i)
      securities.push_back(security_field(root["securities"][i], options, "securities[" + std::to_string(i) + "]"));
  }
  FeeTable brokers;
  if (root.contains("brokers")) {
    if (!root["brokers"].is_array()) schema_error("brokers", "expected an array");
    for (std::size_t i = 0; i < root["brokers"].size(); ++i)
      brokers.push_back(broker_field(root["brokers"][i], options, "brokers[" + std::to_string(i) + "]"));
  }
  std::sort(securities.begin(), securities.end(),
            [](const Security& a, const Security& b) { return a.id < b.id; });
  return Scenario{capital, TimeGrid(std::move(points)), std::move(securities), std::move(brokers), options};
}

Scenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Scenario scenario = parse_scenario(text.str(), overrides);
  auto issues = validate_scenario(scenario);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return scenario;
}

std::string emit_scenario(const Scenario& scenario) {
  const auto& o = scenario.options;
  json root;
  root["initial_capital"] = scenario.initial_capital.to_string();
  root["times"] = scenario.grid.points();
  root["securities"] = json::array();
  for (const auto& sec : scenario.securities) {
    json j;
    j["id"] = sec.id;
    j["issue_time"] = sec.issue_time;
    j["maturity"] = sec.maturity;
    j["quotes"] = json::object();
    for (const auto& [t, price] : sec.quotes) j["quotes"][std::to_string(t)] = price.to_string();
    j["distributions"] = json::object();
    for (const auto& [t, dist] : sec.distributions)
      j["distributions"][std::to_string(t)] = distribution_json(dist, "price");
    root["securities"].push_back(std::move(j));
  }
  root["brokers"] = json::array();
  for (const auto& broker : scenario.brokers) {
    json fees = json::object();
    for (const auto& [sec, by_time] : broker.fees) {
      fees[sec] = json::object();
      for (const auto& [t, quote] : by_time) {
        if (const auto* plain = std::get_if<Decimal>(&quote))
          fees[sec][std::to_string(t)] = plain->to_string();
        else
          fees[sec][std::to_string(t)] = distribution_json(std::get<PriceDistribution>(quote), "fee");
      }
    }
    root["brokers"].push_back({{"id", broker.id}, {"fees", std::move(fees)}});
  }
  root["options"] = {{"mode", std::string(to_string(o.mode))},
                     {"lot_size", o.lot_size.to_string()},
                     {"allow_short", o.allow_short},
                     {"short_cap", o.short_cap},
                     {"hold_to_end", o.hold_to_end},
                     {"max_states", o.max_states},
                     {"price_scale", o.price_scale},
                     {"prob_scale", o.prob_scale}};
  return root.dump(2) + "\n";
}

}  // namespace pdp
