#ifndef ESK_HARNESS_HPP
#define ESK_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esk/instance.hpp"

namespace esk {

struct RunConfig {
  std::string mode;  // "verify" or "hunt"
  int n = 0;
  int k_lo = 0, k_hi = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  long samples = 0;
  int jobs = 1;
  // relaxes the hypothesis to avedeg >= k-2 to surface the tightness examples
  bool threshold_allow_equal = false;
  std::string target_case;  // hunt: restrict reporting to one subcase label
  std::optional<int> delta_target;
};

struct FailureRecord {
  std::string kind;  // "counterexample" or "proof-gap"
  int k = 0;
  std::string graph6;
  std::string tree;  // parent array, see tree_to_string
  std::string case_label;
  std::string detail;
  std::int64_t index = -1;  // sample index, -1 for exhaustive instances
};

struct RunReport {
  RunConfig config;
  long instances = 0;
  long embedded = 0;
  long fallbacks = 0;
  long proof_gaps = 0;
  long counterexamples = 0;
  std::map<std::string, long> coverage;           // trace step -> count
  std::map<std::string, long> fallbacks_by_case;  // subcase label -> fallback runs
  std::map<std::string, long> gaps_by_case;
  std::vector<FailureRecord> failures;
  double wall_seconds = 0;

  int exit_code() const {
    if (counterexamples > 0) return 2;
    if (proof_gaps > 0) return 3;
    return 0;
  }
};

// Exhaustive sweep (all graph classes x all free trees at each k in range)
// or seeded random sampling with the constructive engine cross-check when
// n = k+4. Deterministic for fixed config+seed, independent of jobs.
RunReport run_verify(const RunConfig& cfg);

// Random sampling steered toward the open-flagged handlers; reports
// fallback and proof-gap frequencies per subcase. Findings are data, so the
// run itself never fails.
RunReport run_hunt(const RunConfig& cfg);

// JSON serialization, schema field "schema": 1. The "timestamp" object
// (wall time) is the only part excluded from determinism comparisons;
// include_timing=false omits it.
std::string run_report_json(const RunReport& report, bool include_timing = true);

// Human-readable one-screen summary.
std::string run_report_summary(const RunReport& report);

}  // namespace esk

#endif
