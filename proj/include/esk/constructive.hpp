#ifndef ESK_CONSTRUCTIVE_HPP
#define ESK_CONSTRUCTIVE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esk/embed.hpp"
#include "esk/errors.hpp"
#include "esk/instance.hpp"

namespace esk {

// One engine run, narrated. Steps are ordered: peels first, then the
// max-degree dispatch, the subcase label, recursion notes, and a final
// "extend", "swap+extend" or "fallback-oracle" step.
struct CaseTrace {
  std::vector<std::string> steps;
  bool used_fallback = false;

  bool contains(const std::string& step) const {
    for (const std::string& s : steps)
      if (s == step) return true;
    return false;
  }
};

struct EngineResult {
  Embedding embedding;
  CaseTrace trace;
};

// Which tree vertices are withheld from the recursive step and completed
// afterwards, all phrased against the longest-path decomposition.
enum class Prune {
  a1_branch,          // a_1 and its leaf fan (a_0 included)
  a1_branch_plus_ar,  // additionally a_r
  both_end_branches,  // both fans with a_1 and a_{r-1}
  a0_a1,              // just the first two path vertices
  a0_a1_ar,           // first two plus the far end
  ends4,              // a_0, a_1, a_{r-1}, a_r
  ar_end2,            // a_{r-1}, a_r
  a0_only,
};

// A fully bound reduction: which graph vertices leave, which edges are
// discarded, how the tree shrinks, and scripted image preferences for the
// re-attachment stage.
struct ReductionPlan {
  std::string label;
  bool open_flagged = false;
  std::vector<std::pair<std::string, int>> deleted;  // (role, graph vertex)
  std::vector<std::pair<int, int>> deleted_edges;    // among surviving vertices
  Prune prune = Prune::a1_branch;
  // per tree vertex, graph images to try first during completion
  std::vector<std::pair<int, std::vector<int>>> preferences;
};

struct CaseLabel {
  std::string label;
  bool open_flagged = false;    // the source argument has an acknowledged gap
  bool has_inequality = false;  // owns a displayed chain in the ledger corpus
};

// Every dispatchable subcase, in dispatch order.
const std::vector<CaseLabel>& case_registry();
std::vector<std::string> inequality_labels();

// Raised when scripted completion fails but the instance is embeddable and
// the subcase has no acknowledged gap: the run found a hole in the argument,
// not a counterexample. Carries the witness pieces for the report.
class ProofGapError : public Error {
 public:
  ProofGapError(std::string label, std::string msg, CaseTrace trace)
      : Error(Errc::proof_gap, std::move(msg)),
        label_(std::move(label)),
        trace_(std::move(trace)) {}
  const std::string& label() const { return label_; }
  const CaseTrace& trace() const { return trace_; }

 private:
  std::string label_;
  CaseTrace trace_;
};

// Raised when the oracle certifies there is no embedding at all: a genuine
// counterexample to the statement under test (or violated preconditions).
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string msg, CaseTrace trace)
      : Error(Errc::infeasible, std::move(msg)), trace_(std::move(trace)) {}
  const CaseTrace& trace() const { return trace_; }

 private:
  CaseTrace trace_;
};

// --- building blocks, exposed for direct testing ---

struct PeelResult {
  Instance inst;
  std::vector<int> old_of_new;
  std::vector<std::string> steps;  // "peel(v=<original index>)" per deletion
};

// Repeatedly deletes the smallest-index vertex of degree < floor(k/2).
PeelResult peel_low_degree(const Instance& inst);

// Smallest-index vertex z with floor(k/2) <= d(z) <= k-5, if any.
std::optional<int> select_z(const Graph& g, int k);

// "2.1" .. "2.5" from the max degree; throws DeltaOutOfRange outside
// [k-1, k+3].
std::string dispatch_delta_case(const Graph& g, int k);

// Appends leaves to a maximum-degree vertex until the order is reached;
// existing vertices keep their indices.
Tree pad_tree_to_order(const Tree& t, int order);

// Binds the subcase for an instance already past the base checks, with
// n = k+4 and a chosen z. decomp must be oriented so d_T(a_1) >= d_T(a_{r-1}).
ReductionPlan plan_reduction(const Instance& inst, const PathDecomposition& decomp, int z);

// Full engine: peel, dispatch, reduce, recurse, re-attach. Requires the
// standing hypotheses (PreconditionMismatch otherwise). Throws ProofGapError
// or InfeasibleError as above.
EngineResult embed_constructive(const Instance& inst);

}  // namespace esk

#endif
