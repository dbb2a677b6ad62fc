#ifndef ESK_LEDGER_HPP
#define ESK_LEDGER_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace esk {

// a*k + b with integer coefficients
struct LinTerm {
  long a = 0;
  long b = 0;
  long at(long k) const { return a * k + b; }
};

// One edge-count chain from the corpus; see data/ledger_corpus.txt for the
// column meanings.
struct LedgerEntry {
  std::string case_id;
  std::vector<LinTerm> removed;
  long added_back = 0;
  LinTerm order_after;
  long quad_a = 0, quad_b = 0, quad_c = 0;  // e(G') > (a k^2 + b k + c)/2
  LinTerm target;
  int line = 0;
};

std::vector<LedgerEntry> parse_ledger(std::istream& in);
std::vector<LedgerEntry> parse_ledger_file(const std::string& path);

struct EntryCheck {
  std::string case_id;
  // (i) the doubled bound follows from the baseline minus the removals,
  //     exactly, at every k in range and as a polynomial for all k >= k_min
  bool edge_bound_ok = false;
  // (ii) the bound forces avedeg(G') to reach the target for all k >= k_min
  bool target_ok = false;
  bool target_strict = false;  // target exceeded (not just met) at every k >= k_min
  long slack_at_kmin = 0;      // margin polynomial of (ii) evaluated at k_min
  std::string detail;          // first failure, empty when both checks hold
};

struct LedgerReport {
  int k_min = 0, k_max = 0;
  std::vector<EntryCheck> entries;
  bool all_ok = false;
  int failures = 0;
};

// Exact integer arithmetic throughout; the per-k pass uses the floored
// baseline 1 + floor((k-2)(k+4)/2), the symbolic pass the margin polynomial.
LedgerReport verify_ledger(const std::vector<LedgerEntry>& entries, int k_min = 9,
                           int k_max = 60);

struct CrossCheck {
  std::vector<std::string> unknown_cases;     // corpus ids with no registry label
  std::vector<std::string> missing_cases;     // registry labels owed an entry
  bool ok() const { return unknown_cases.empty() && missing_cases.empty(); }
};

// Matches corpus ids (minus -i/-ii chain suffixes) against the labels that
// declare a displayed inequality.
CrossCheck cross_check_ledger(const std::vector<LedgerEntry>& entries,
                              const std::vector<std::string>& inequality_labels);

std::string ledger_report_json(const LedgerReport& report, const CrossCheck* cc = nullptr);

}  // namespace esk

#endif
