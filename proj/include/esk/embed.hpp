#ifndef ESK_EMBED_HPP
#define ESK_EMBED_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esk/graph.hpp"
#include "esk/tree.hpp"

namespace esk {

// Total embedding: map[v in V(T)] = image in V(G).
using Embedding = std::vector<int>;

// Injective partial map V(T) -> V(G); -1 marks unembedded vertices.
// The frontier is V(G) minus the image.
struct PartialEmbedding {
  std::vector<int> map;
  Vset used = 0;

  static PartialEmbedding empty(const Tree& t) {
    PartialEmbedding pe;
    pe.map.assign(t.order(), -1);
    return pe;
  }

  Vset frontier(const Graph& g) const { return g.all_vertices() & ~used; }
  bool is_total() const {
    for (int v : map)
      if (v < 0) return false;
    return true;
  }
  void assign(int tree_v, int graph_v) {
    map[tree_v] = graph_v;
    used |= vbit(graph_v);
  }
};

struct ValidationResult {
  bool ok = false;
  std::string violation;  // first collision or missing edge, empty when ok
};

// Checks injectivity and edge preservation of a total map.
// Throws DomainMismatch when the map is not total on V(T).
ValidationResult validate_embedding(const Tree& t, const Graph& g, const Embedding& map);

// Complete backtracking search; absence is a value.
std::optional<Embedding> embed_backtracking(const Tree& t, const Graph& g);

// Assigns the pending tree leaves to distinct frontier vertices adjacent to
// their anchors' images via maximum bipartite matching. pending holds
// (tree leaf, anchor tree vertex) pairs; anchors must be embedded already.
// Throws HallViolation when no perfect matching exists.
Embedding extend_leaves(const PartialEmbedding& pe, const Tree& t, const Graph& g,
                        const std::vector<std::pair<int, int>>& pending);

// Moves the image of embedded tree vertex w to frontier vertex u. Requires
// u adjacent to the images of all embedded T-neighbors of w (NotAdjacent).
PartialEmbedding swap_image(const PartialEmbedding& pe, const Tree& t, const Graph& g, int w,
                            int u);

// True iff G has a path on k vertices (exact search at desk scale).
bool contains_path(const Graph& g, int k);

}  // namespace esk

#endif
