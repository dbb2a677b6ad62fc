#ifndef ESK_GRAPH_HPP
#define ESK_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "esk/rational.hpp"

namespace esk {

using Vset = std::uint64_t;  // vertex subset of a graph of order <= 64

inline Vset vbit(int v) { return Vset{1} << v; }
inline int popcount(Vset s) { return std::popcount(s); }
inline int lowest(Vset s) { return std::countr_zero(s); }

// Immutable simple undirected graph with bitset adjacency rows.
// Order is capped at 64 so every neighborhood intersection is one word.
class Graph {
 public:
  static constexpr int kMaxOrder = 64;

  Graph() = default;

  // Builds from an edge list; duplicates are merged. Throws CapExceeded /
  // BadEdge on violated preconditions.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  // Complete graph, handy in tests and generators.
  static Graph complete(int n);

  int order() const { return n_; }
  long edge_count() const { return m_; }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1; }
  Vset neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  Vset all_vertices() const { return n_ == 64 ? ~Vset{0} : (vbit(n_) - 1); }

  // Induced subgraph on V \ dropped, vertices relabeled in increasing old
  // order. old_of_new[i] gives the original index of new vertex i.
  Graph delete_vertices(Vset dropped, std::vector<int>* old_of_new = nullptr) const;

  // Same vertex set with the listed edges removed. Throws MissingEdge.
  Graph delete_edges(const std::vector<std::pair<int, int>>& edges) const;

  Graph add_edge(int u, int v) const;
  Graph remove_edge(int u, int v) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  long m_ = 0;
  std::vector<Vset> adj_;
};

struct DegreeStats {
  int min = 0;
  int max = 0;
  std::vector<int> sequence;  // sorted ascending
};

Rational avedeg(const Graph& g);
DegreeStats degree_stats(const Graph& g);

// graph6 codec, bit-exact per the format spec (orders up to 64 use the
// long form prefix '~' for n in {63, 64}).
std::string graph6_encode(const Graph& g);
Graph graph6_decode(const std::string& line);

}  // namespace esk

#endif
