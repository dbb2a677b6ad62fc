#include "esk/embed.hpp"

#include <algorithm>

#include "esk/errors.hpp"

namespace esk {

ValidationResult validate_embedding(const Tree& t, const Graph& g, const Embedding& map) {
  if (static_cast<int>(map.size()) != t.order())
    throw Error(Errc::domain_mismatch, "map size differs from tree order");
  for (int v = 0; v < t.order(); ++v)
    if (map[v] < 0 || map[v] >= g.order())
      throw Error(Errc::domain_mismatch, "map not total at tree vertex " + std::to_string(v));
  Vset seen = 0;
  for (int v = 0; v < t.order(); ++v) {
    if (seen & vbit(map[v]))
      return {false, "collision at graph vertex " + std::to_string(map[v])};
    seen |= vbit(map[v]);
  }
  for (auto [u, v] : t.edges())
    if (!g.has_edge(map[u], map[v]))
      return {false, "tree edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") maps to non-edge (" + std::to_string(map[u]) + "," +
                         std::to_string(map[v]) + ")"};
  return {true, ""};
}

namespace {

// DFS preorder from a_1, higher tree degree first among children.
std::vector<int> embed_order(const Tree& t) {
  int start = 0;
  if (t.order() >= 2) start = longest_path_decomposition(t).path[1];
  std::vector<int> order;
  std::vector<bool> seen(t.order(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    std::vector<int> children;
    Vset nb = t.neighbors(v);
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      if (!seen[w]) {
        seen[w] = true;
        children.push_back(w);
      }
    }
    // stack is LIFO: push low-degree first so high-degree pops first
    std::sort(children.begin(), children.end(),
              [&](int a, int b) { return t.degree(a) < t.degree(b); });
    for (int c : children) stack.push_back(c);
  }
  return order;
}

bool backtrack(const Tree& t, const Graph& g, const std::vector<int>& order,
               const std::vector<int>& parent_pos, const std::vector<int>& by_degree, size_t i,
               std::vector<int>& img, Vset& used) {
  if (i == order.size()) return true;
  int tv = order[i];
  Vset cands;
  if (i == 0)
    cands = g.all_vertices();
  else
    cands = g.neighbors(img[order[parent_pos[i]]]) & ~used;
  for (int gv : by_degree) {
    if (!(cands & vbit(gv))) continue;
    img[tv] = gv;
    used |= vbit(gv);
    if (backtrack(t, g, order, parent_pos, by_degree, i + 1, img, used)) return true;
    used &= ~vbit(gv);
    img[tv] = -1;
  }
  return false;
}

}  // namespace

std::optional<Embedding> embed_backtracking(const Tree& t, const Graph& g) {
  if (t.order() > g.order()) return std::nullopt;
  auto order = embed_order(t);
  // parent position in `order` for each position i > 0
  std::vector<int> pos_of(t.order(), -1), parent_pos(order.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos_of[order[i]] = static_cast<int>(i);
  for (size_t i = 1; i < order.size(); ++i) {
    Vset nb = t.neighbors(order[i]);
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      if (pos_of[w] < static_cast<int>(i) &&
          (parent_pos[i] < 0 || pos_of[w] < parent_pos[i]))
        parent_pos[i] = pos_of[w];
    }
  }
  std::vector<int> by_degree(g.order());
  for (int v = 0; v < g.order(); ++v) by_degree[v] = v;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> img(t.order(), -1);
  Vset used = 0;
  if (backtrack(t, g, order, parent_pos, by_degree, 0, img, used)) return img;
  return std::nullopt;
}

Embedding extend_leaves(const PartialEmbedding& pe, const Tree& t, const Graph& g,
                        const std::vector<std::pair<int, int>>& pending) {
  int p = static_cast<int>(pending.size());
  std::vector<Vset> cand(p);
  Vset frontier = pe.frontier(g);
  for (int i = 0; i < p; ++i) {
    auto [leaf, anchor] = pending[i];
    if (pe.map[anchor] < 0)
      throw Error(Errc::domain_mismatch, "anchor " + std::to_string(anchor) + " not embedded");
    if (pe.map[leaf] >= 0)
      throw Error(Errc::domain_mismatch, "pending leaf " + std::to_string(leaf) +
                                             " already embedded");
    cand[i] = g.neighbors(pe.map[anchor]) & frontier;
  }
  // Kuhn's augmenting paths; instances are tiny.
  std::vector<int> match_of_graph(g.order(), -1), match_of_leaf(p, -1);
  for (int i = 0; i < p; ++i) {
    Vset visited = 0;
    std::vector<int> via(g.order(), -1);  // leaf that reached each graph vertex
    // iterative alternating DFS from leaf i
    auto try_augment = [&](int start_leaf) -> bool {
      std::vector<int> leaf_stack{start_leaf};
      while (!leaf_stack.empty()) {
        int li = leaf_stack.back();
        leaf_stack.pop_back();
        Vset options = cand[li] & ~visited;
        while (options) {
          int gv = lowest(options);
          options &= options - 1;
          visited |= vbit(gv);
          via[gv] = li;
          if (match_of_graph[gv] < 0) {
            // augment backwards
            int cg = gv;
            while (cg >= 0) {
              int cl = via[cg];
              int prev = match_of_leaf[cl];
              match_of_graph[cg] = cl;
              match_of_leaf[cl] = cg;
              cg = prev;
            }
            return true;
          }
          leaf_stack.push_back(match_of_graph[gv]);
        }
      }
      return false;
    };
    if (!try_augment(i)) {
      // Hall witness: i plus every leaf reachable by alternating paths.
      std::vector<int> witness{pending[i].first};
      for (int j = 0; j < p; ++j)
        if (j != i && match_of_leaf[j] >= 0 && (visited & vbit(match_of_leaf[j])))
          witness.push_back(pending[j].first);
      std::sort(witness.begin(), witness.end());
      throw HallViolation(witness, "pending leaves have too small a joint frontier neighborhood");
    }
  }
  Embedding out = pe.map;
  for (int i = 0; i < p; ++i) out[pending[i].first] = match_of_leaf[i];
  for (int v : out)
    if (v < 0)
      throw Error(Errc::domain_mismatch, "pending list does not cover all unembedded vertices");
  return out;
}

PartialEmbedding swap_image(const PartialEmbedding& pe, const Tree& t, const Graph& g, int w,
                            int u) {
  if (pe.map[w] < 0) throw Error(Errc::domain_mismatch, "swap source not embedded");
  if (pe.used & vbit(u)) throw Error(Errc::not_adjacent, "swap target not in frontier");
  Vset nb = t.neighbors(w);
  while (nb) {
    int x = lowest(nb);
    nb &= nb - 1;
    if (pe.map[x] >= 0 && !g.has_edge(u, pe.map[x]))
      throw Error(Errc::not_adjacent,
                  "swap target misses the image of tree neighbor " + std::to_string(x));
  }
  PartialEmbedding out = pe;
  out.used &= ~vbit(out.map[w]);
  out.map[w] = u;
  out.used |= vbit(u);
  return out;
}

bool contains_path(const Graph& g, int k) {
  if (k < 1) throw Error(Errc::precondition_mismatch, "path order must be >= 1");
  if (k > g.order()) return false;
  return embed_backtracking(Tree::path(k), g).has_value();
}

}  // namespace esk
