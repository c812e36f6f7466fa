#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdp/decimal.hpp"
#include "pdp/ledger.hpp"
#include "pdp/scenario.hpp"

// Brute-force reference solver. Shares only the ledger (for replay and
// admissibility) with the DP engine; enumeration here is independent.
namespace pdp::oracle {

using Rational = boost::multiprecision::cpp_rational;

struct OracleOptions {
  std::size_t max_policies = 10'000'000;
};

struct OracleResult {
  Policy policy;
  std::size_t policies_enumerated = 0;
};

/// Exhaustive search over every admissible trade sequence under `mode`
/// (expected mode solves on mean prices and fees). Ties are broken exactly
/// like the DP engine: fewer traded lots, then the lexicographically
/// smallest trade sequence. Throws InstanceTooLarge past max_policies.
OracleResult brute_force_solve(const Scenario& scenario, PricingMode mode,
                               const OracleOptions& options = {});

struct JointOutcome {
  /// Deterministic scenario with one outcome substituted for every
  /// price and fee distribution.
  Scenario scenario;
  Rational probability;
};

/// Full joint outcome space assuming independence across securities, brokers
/// and times. Throws InstanceTooLarge if there are more than `max_outcomes`.
std::vector<JointOutcome> enumerate_joint_outcomes(const Scenario& scenario,
                                                   std::size_t max_outcomes = 64);

Rational to_rational(const Decimal& value);

/// Probability-weighted average of fixed-policy cash-flow replays over all
/// joint outcomes. Each (security, time) is traded through the broker with
/// the lowest expected fee, fixed before outcomes are drawn.
Rational expected_fixed_policy_value(const Scenario& scenario, const Policy& policy,
                                     std::size_t max_outcomes = 64);

}  // namespace pdp::oracle
