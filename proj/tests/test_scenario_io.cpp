#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "pdp/scenario_io.hpp"

using namespace pdp;
using testing::money;

namespace {

Errc parse_failure(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Validation;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("pdp_io_" + name);
  std::ofstream(path) << text;
  return path;
}

const char* kMinimal = R"({
  "initial_capital": "100.00",
  "times": [1, 2, 3],
  "securities": [{"id": "A", "issue_time": 1, "maturity": 2,
                  "quotes": {"1": "10.00", "2": "11.50", "3": "12.00"}}],
  "brokers": [{"id": "B1", "fees": {"A": {"1": "0.50", "2": "0.50", "3": "0.50"}}}]
})";

}  // namespace

TEST_CASE("parse a minimal scenario") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s == testing::single_security_scenario("0.50"));
  CHECK(s.options.mode == PricingMode::Deterministic);
  CHECK(s.initial_capital.scale() == 4);
}

TEST_CASE("overrides apply after parsing") {
  ScenarioOverrides o;
  o.mode = PricingMode::Expected;
  o.max_states = 7;
  const Scenario s = parse_scenario(kMinimal, o);
  CHECK(s.options.mode == PricingMode::Expected);
  CHECK(s.options.max_states == 7u);
}

TEST_CASE("property: emit then parse round-trips") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const Scenario s = i % 2 ? testing::random_scenario(rng) : testing::random_stochastic_scenario(rng);
    const std::string text = emit_scenario(s);
    const Scenario back = parse_scenario(text);
    CHECK(back == s);
    CHECK(emit_scenario(back) == text);
  }
}

TEST_CASE("malformed input is a parse error") {
  CHECK(parse_failure("{") == Errc::Parse);
  CHECK(parse_failure("[]") == Errc::Parse);
  CHECK(parse_failure(R"({"times": [1, 2]})") == Errc::Parse);
  CHECK(parse_failure(R"({"initial_capital": 100, "times": [1, 2]})") == Errc::Parse);
  CHECK(parse_failure(R"({"initial_capital": "1.000001", "times": [1, 2]})") == Errc::Parse);
  CHECK(parse_failure(R"({"initial_capital": "1", "times": [1, 2], "extra": 0})") == Errc::Parse);
  CHECK(parse_failure(R"({"initial_capital": "1", "times": [1, 2], "options": {"mode": "fast"}})") ==
        Errc::Parse);
  CHECK(parse_failure(R"({"initial_capital": "1", "times": [1, 2],
    "securities": [{"id": "A", "issue_time": 1, "maturity": 1, "quotes": {"one": "1"}}]})") == Errc::Parse);
}

TEST_CASE("load_scenario reports validation issues with context") {
  std::string text = kMinimal;
  text.replace(text.find(R"("2": "11.50", )"), 14, "");
  const auto path = write_temp("missing_quote.json", text);
  try {
    load_scenario(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.contains(Errc::QuoteMissing));
    CHECK(e.issues()[0].security == "A");
    CHECK(e.issues()[0].time == Tick{2});
  }
  std::filesystem::remove(path);
}

TEST_CASE("load_scenario: bad normalization in expected mode") {
  const std::string text = R"({
    "initial_capital": "100", "times": [1, 2, 3],
    "securities": [{"id": "A", "issue_time": 1, "maturity": 1, "quotes": {"1": "10"},
      "distributions": {"2": [{"price": "14", "prob": "0.5"}, {"price": "10", "prob": "0.6"}]}}],
    "brokers": [{"id": "B", "fees": {"A": {"1": "0", "2": "0"}}}],
    "options": {"mode": "expected"}})";
  const auto path = write_temp("bad_norm.json", text);
  try {
    load_scenario(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].code == Errc::BadNormalization);
    CHECK(e.issues()[0].security == "A");
    CHECK(e.issues()[0].time == Tick{2});
  }
  std::filesystem::remove(path);
}

TEST_CASE("load_scenario: missing file is an I/O error") {
  try {
    load_scenario("/nonexistent/dir/scenario.json");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Io);
  }
}

TEST_CASE("parse_mode") {
  CHECK(parse_mode("det") == PricingMode::Deterministic);
  CHECK(parse_mode("expected") == PricingMode::Expected);
  CHECK_FALSE(parse_mode("stochastic").has_value());
  CHECK(to_string(PricingMode::Expected) == "expected");
}
