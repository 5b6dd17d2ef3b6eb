#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdplab/cdp.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string id;           ///< "AC1".."AC10" or a fixture check name
  std::string tag;          ///< result family, e.g. "pure-exactness"
  std::string description;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;       ///< worst observed error, counts, or the failure reason
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  double threshold = kDefaultOsrThreshold;
  std::string fixture_dir;
  EstimatorBudget budget;
};

/// OSR thresholds outside [1e-14, 1e-6] make rank-dependent checks meaningless;
/// those checks report "skipped: threshold override".
bool threshold_is_absurd(double threshold);

/// Canonical fixture states by name (bell_d2, product_d2, pure_82, iso_d2_p0,
/// iso_d2_p33, iso_d2_p50, iso_d2_p100, iso_d3_p50, classical_on_A_d2).
std::vector<std::string> fixture_state_names();
BipartiteState canonical_fixture_state(const std::string& name);
/// Canonical fixture channels: eq9_pair_d2_first, eq9_pair_d2_second, dephase_d2, random_unitary_d2.
std::vector<std::string> fixture_channel_names();
QuantumChannel canonical_fixture_channel(const std::string& name);

/// Criterion k in 1..10.
CheckResult run_criterion(int k, const VerifyOptions& options);
std::vector<CheckResult> run_acceptance(const VerifyOptions& options);
/// Named checks on the fixture files (values quoted for the canonical fixtures).
std::vector<CheckResult> run_fixture_checks(const VerifyOptions& options);
/// Acceptance criteria followed by the fixture checks.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

/// "[PASS] AC3 bracket: ... (detail, 1.2s)"
std::string format_check_line(const CheckResult& r);

}  // namespace cdplab
