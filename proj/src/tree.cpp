#include "esk/tree.hpp"

#include <algorithm>

#include "esk/errors.hpp"

namespace esk {

Tree Tree::from_edges(int order, const std::vector<std::pair<int, int>>& edges) {
  if (order < 1 || order > Graph::kMaxOrder)
    throw Error(Errc::cap_exceeded, "tree order must be in [1,64]");
  if (static_cast<int>(edges.size()) != order - 1)
    throw Error(Errc::bad_edge, "a tree on " + std::to_string(order) + " vertices needs " +
                                    std::to_string(order - 1) + " edges");
  Tree t;
  t.k_ = order;
  t.adj_.assign(order, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order || v >= order || u == v)
      throw Error(Errc::bad_edge, "bad tree edge");
    if (t.has_edge(u, v)) throw Error(Errc::bad_edge, "duplicate tree edge");
    t.adj_[u] |= vbit(v);
    t.adj_[v] |= vbit(u);
  }
  t.edges_ = edges;
  // connectivity (with k-1 distinct edges this also rules out cycles)
  Vset seen = vbit(0);
  Vset frontier = vbit(0);
  while (frontier) {
    Vset next = 0;
    while (frontier) {
      int v = lowest(frontier);
      frontier &= frontier - 1;
      next |= t.adj_[v] & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  if (popcount(seen) != order) throw Error(Errc::bad_edge, "tree edges do not connect");
  return t;
}

Tree Tree::from_parent_array(const std::vector<int>& parent_of) {
  int k = static_cast<int>(parent_of.size());
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < k; ++v)
    if (parent_of[v] >= 0) edges.emplace_back(parent_of[v], v);
  return from_edges(k, edges);
}

Tree Tree::path(int order) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < order; ++v) edges.emplace_back(v, v + 1);
  return from_edges(order, edges);
}

Tree Tree::star(int order) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < order; ++v) edges.emplace_back(0, v);
  return from_edges(order, edges);
}

Tree Tree::delete_vertices(Vset dropped, std::vector<int>* old_of_new) const {
  std::vector<int> keep, new_of_old(k_, -1);
  for (int v = 0; v < k_; ++v)
    if (!(dropped & vbit(v))) {
      new_of_old[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : edges_)
    if (new_of_old[u] >= 0 && new_of_old[v] >= 0)
      edges.emplace_back(new_of_old[u], new_of_old[v]);
  if (old_of_new) *old_of_new = keep;
  return from_edges(static_cast<int>(keep.size()), edges);
}

std::vector<int> Tree::parent_array() const {
  std::vector<int> parent(k_, -1), order;
  std::vector<bool> seen(k_, false);
  order.push_back(0);
  seen[0] = true;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    Vset nb = adj_[v];
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        order.push_back(w);
      }
    }
  }
  return parent;
}

namespace {

std::vector<int> bfs_dist(const Tree& t, int src) {
  std::vector<int> dist(t.order(), -1);
  std::vector<int> queue{src};
  dist[src] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    Vset nb = t.neighbors(v);
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// height of the subtree hanging at v when entered from `from` (-1 = none)
int down_height(const Tree& t, int v, int from, std::vector<std::vector<int>>& memo) {
  int& slot = memo[v][from + 1];
  if (slot >= 0) return slot;
  int h = 0;
  Vset nb = t.neighbors(v) & ~(from >= 0 ? vbit(from) : 0);
  while (nb) {
    int w = lowest(nb);
    nb &= nb - 1;
    h = std::max(h, 1 + down_height(t, w, v, memo));
  }
  return slot = h;
}

}  // namespace

PathDecomposition PathDecomposition::reversed() const {
  PathDecomposition d = *this;
  std::reverse(d.path.begin(), d.path.end());
  std::swap(d.s, d.t);
  std::swap(d.b_leaves, d.c_leaves);
  return d;
}

PathDecomposition longest_path_decomposition(const Tree& t) {
  PathDecomposition d;
  int k = t.order();
  if (k == 1) {
    d.path = {0};
    return d;
  }
  int diam = 0, root = 0;
  for (int v = 0; v < k; ++v) {
    auto dist = bfs_dist(t, v);
    int ecc = *std::max_element(dist.begin(), dist.end());
    if (ecc > diam) {
      diam = ecc;
      root = v;
    }
  }
  std::vector<std::vector<int>> memo(k, std::vector<int>(k + 1, -1));
  d.path.push_back(root);
  int cur = root, prev = -1, remaining = diam;
  while (remaining > 0) {
    Vset nb = t.neighbors(cur) & ~(prev >= 0 ? vbit(prev) : 0);
    int chosen = -1;
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      if (down_height(t, w, cur, memo) >= remaining - 1) {
        chosen = w;
        break;  // neighbors scan in increasing index: first fit is lex-min
      }
    }
    d.path.push_back(chosen);
    prev = cur;
    cur = chosen;
    --remaining;
  }
  d.r = diam;
  int a1 = d.path[1];
  Vset excl_b = d.r >= 2 ? vbit(d.path[2]) : 0;
  d.b_leaves = t.neighbors(a1) & ~excl_b;
  d.s = popcount(d.b_leaves);
  int ar1 = d.path[d.r >= 1 ? d.r - 1 : 0];
  Vset excl_c = d.r >= 2 ? vbit(d.path[d.r - 2]) : 0;
  d.c_leaves = t.neighbors(ar1) & ~excl_c;
  d.t = popcount(d.c_leaves);
  return d;
}

int tree_diameter(const Tree& t) { return longest_path_decomposition(t).r; }

}  // namespace esk
