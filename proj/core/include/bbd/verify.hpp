#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bbd {

/// Knobs for the property suites. Defaults are the documented tolerances.
struct VerifyOptions {
  /// Random instances for the pair-based suites.
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  /// Slack allowed on inequalities and exact identities.
  double slack = 1e-12;
  /// Agreement between the f-divergence route and the direct route.
  double fdiv_tolerance = 1e-10;
  /// |closed form - numeric| for the parametric families.
  double closed_form_tolerance = 1e-6;
  /// Random parameter pairs per family in the closed-forms suite.
  std::size_t closed_form_pairs = 100;
  /// Relative tolerance of the curvature identity.
  double curvature_tolerance = 1e-3;
  /// Instances and required hit rate for the prior-witness scan.
  std::size_t witness_instances = 100;
  double witness_fraction = 0.95;
  std::size_t witness_grid = 999;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// First few violation descriptions.
  std::vector<std::string> failures;
  /// Informational lines that never count as violations.
  std::vector<std::string> notes;

  bool passed() const noexcept { return violations == 0; }
};

/// Names accepted by run_suite, without "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite; "all" is not accepted here. Throws ParseError for an
/// unknown name.
SuiteResult run_suite(std::string_view name, const VerifyOptions& options);

/// Runs `name`, or every suite in suite_names() order when name is "all".
std::vector<SuiteResult> run_suites(std::string_view name, const VerifyOptions& options);

/// Per-trial random stream: seed xor trial index, so results do not depend on
/// how trials are scheduled.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(seed ^ trial);
}

}  // namespace bbd
