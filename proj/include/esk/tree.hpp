#ifndef ESK_TREE_HPP
#define ESK_TREE_HPP

#include <utility>
#include <vector>

#include "esk/graph.hpp"

namespace esk {

// A tree of order k on vertices 0..k-1. Construction validates
// connectedness and edge count.
class Tree {
 public:
  static Tree from_edges(int order, const std::vector<std::pair<int, int>>& edges);

  // One tree per line formats: parent_of[i] is the parent of vertex i,
  // -1 for the root. Any vertex may be root; shape is what matters.
  static Tree from_parent_array(const std::vector<int>& parent_of);

  static Tree path(int order);
  static Tree star(int order);  // one center, order-1 leaves

  int order() const { return k_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  Vset neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1; }

  // Induced subtree on V \ dropped (caller guarantees the result is
  // connected, which holds for all prune recipes used here). Vertices are
  // relabeled in increasing old order; old_of_new records the map.
  Tree delete_vertices(Vset dropped, std::vector<int>* old_of_new = nullptr) const;

  std::vector<int> parent_array() const;  // rooted at vertex 0

 private:
  int k_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Vset> adj_;
};

// Longest-path decomposition a_0 a_1 ... a_r with the leaf fans at a_1
// and a_{r-1}. For diameter <= 3 the fans may overlap path vertices; the
// fields are computed literally from the definitions.
struct PathDecomposition {
  std::vector<int> path;  // a_0 .. a_r
  int r = 0;              // path length = diameter
  int s = 0;              // |N_T(a_1) \ {a_2}|
  int t = 0;              // |N_T(a_{r-1}) \ {a_{r-2}}|
  Vset b_leaves = 0;      // N_T(a_1) \ {a_2}, contains a_0
  Vset c_leaves = 0;      // N_T(a_{r-1}) \ {a_{r-2}}, contains a_r

  int a(int i) const { return path[i]; }
  PathDecomposition reversed() const;
};

// Deterministic: among maximum paths, the one rooted at the smallest-index
// eccentric vertex with the lexicographically smallest vertex sequence.
PathDecomposition longest_path_decomposition(const Tree& t);

int tree_diameter(const Tree& t);

}  // namespace esk

#endif
