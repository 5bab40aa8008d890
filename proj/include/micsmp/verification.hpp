#pragma once

// Randomised theorem checks shared by `micsmp verify` and the acceptance
// binary. Every check is seeded and deterministic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "micsmp/analysis.hpp"

namespace micsmp::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// False for descriptive entries that never fail a run.
  bool asserted = true;
  /// Headline metric compared against `threshold`.
  double max_deviation = 0.0;
  double threshold = 0.0;
  std::optional<nlohmann::json> witness;
  std::string detail;
  double seconds = 0.0;
};

nlohmann::json to_json(const std::vector<CheckResult>& checks);
bool all_asserted_pass(const std::vector<CheckResult>& checks);

/// rho_x = moran_rho(level(x)) for random strongly connected W, mu = pi.
CheckResult stationary_selection_theorem(int count, std::uint64_t seed);
/// Same for random bistochastic W with uniform selection.
CheckResult isothermal_theorem(int count, std::uint64_t seed);
/// Two-vertex closed form against the exact solver on a (a, m) grid.
CheckResult n2_closed_form_agreement(int grid);
/// Stationary m gives r/(r+1) for every a; solved m gives F = 1.
CheckResult n2_moran_selection_check(int draws, std::uint64_t seed);
/// F(m,a|c,r) = F(m,1-a|c,1/r) = F(1-m,a|1/c,r), pointwise, as published.
CheckResult n2_published_symmetries(int grid);
/// Identities that hold for F: vertex relabelling
/// F(m,a|c,r) = F(1-m,1-a|1/c,r), type swap 1 - P(m,a|c,r) = P(m,1-a|c,1/r),
/// and the published first identity restricted to the F = 1 level set.
CheckResult n2_relabelling_symmetries(int grid);
CheckResult galanis_suite(int draws, std::uint64_t seed);
CheckResult martingale_identities(int count, std::uint64_t seed);
CheckResult ratio_law(int count, std::uint64_t seed);
CheckResult montecarlo_consistency(long trials, std::uint64_t seed,
                                   const std::vector<int>& worker_counts);
CheckResult classic_reduction();
CheckResult non_markov_projection();

/// Everything above at acceptance sizes.
std::vector<CheckResult> builtin_suite(std::uint64_t seed);

/// Checks on a user model. Validity and solver checks are asserted; the
/// theorem-specific ones are asserted only under stationary selection.
std::vector<CheckResult> model_checks(const MicSMPModel& model);

}  // namespace micsmp::verify
