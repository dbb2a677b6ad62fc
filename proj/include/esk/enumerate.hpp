#ifndef ESK_ENUMERATE_HPP
#define ESK_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esk/graph.hpp"
#include "esk/instance.hpp"
#include "esk/tree.hpp"

namespace esk {

// Deterministic substream RNG (xoshiro256** seeded through splitmix64 of
// master seed and stream index). Instance i of a run depends only on
// (seed, i), never on thread interleaving.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_index);
  std::uint64_t next();
  // uniform in [0, bound), bound >= 1, rejection sampled
  std::uint64_t below(std::uint64_t bound);
  int pick(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

 private:
  std::uint64_t s_[4];
};

// Canonical relabeling: the adjacency rows of the lexicographically least
// adjacency matrix over all orderings compatible with the stable degree
// refinement. Equal results iff isomorphic.
std::vector<Vset> canonical_adjacency(const Graph& g);

// Packed upper triangle of canonical_adjacency as a hashable key.
std::vector<std::uint64_t> canonical_key(const Graph& g);

bool graphs_isomorphic(const Graph& a, const Graph& b);

// All graphs on n vertices up to isomorphism (canonical representatives),
// optionally filtered to edge_count >= min_edges. Grown by vertex
// augmentation; n <= 10 is the supported envelope.
std::vector<Graph> all_graphs_upto_iso(int n, long min_edges = 0);

// Complete isomorphism invariant for free trees of order <= 32: the
// centroid-rooted subtree code packed into one word (1 = open, 0 = close),
// minimized over centroids.
std::uint64_t tree_canonical_code(const Tree& t);

// All free trees of order k (canonical representatives), k <= 16.
std::vector<Tree> all_free_trees(int k);

// Decodes a pruefer sequence over {0..k-1}, length k-2, into a tree.
Tree pruefer_to_tree(const std::vector<int>& seq);

// Independent census of free trees on k vertices: walks every pruefer
// sequence and dedups by canonical code. jobs > 1 shards the walk.
std::size_t count_free_trees_by_pruefer(int k, int jobs = 1);

struct GenOptions {
  std::optional<int> delta_target;  // exact max degree of G, in [k-1, k+3]
  std::optional<int> style;         // 0..5 texture styles; 6..9 planted shapes
  std::optional<int> tree_shape;    // 0 any, 1 both end fans trivial, 2 heavy a_1
};

// Seeded random instance on n = k+4 vertices satisfying the standing
// hypotheses: avedeg(G) > k-2, min degree >= floor(k/2), max degree equal
// to the delta target, D(T) >= 5. Throws TargetInfeasible when the request
// cannot be met.
Instance random_instance(int k, std::uint64_t seed, std::uint64_t index,
                         const GenOptions& opts = {});

// tree serialization for reports and corpus files: comma separated parent
// array rooted at 0, e.g. "-1,0,1,1"
std::string tree_to_string(const Tree& t);
Tree tree_from_string(const std::string& s);

}  // namespace esk

#endif
