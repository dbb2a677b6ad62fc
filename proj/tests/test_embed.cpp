#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "esk/embed.hpp"
#include "esk/errors.hpp"

using namespace esk;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, e);
}

// naive oracle: try all injections V(T) -> V(G)
bool naive_embeddable(const Tree& t, const Graph& g) {
  int k = t.order(), n = g.order();
  if (k > n) return false;
  std::vector<int> img(k, -1);
  std::function<bool(int, Vset)> go = [&](int tv, Vset used) {
    if (tv == k) return true;
    for (int gv = 0; gv < n; ++gv) {
      if (used & vbit(gv)) continue;
      bool ok = true;
      Vset nb = t.neighbors(tv);
      while (nb && ok) {
        int w = lowest(nb);
        nb &= nb - 1;
        if (w < tv && !g.has_edge(img[w], gv)) ok = false;
      }
      if (!ok) continue;
      img[tv] = gv;
      if (go(tv + 1, used | vbit(gv))) return true;
      img[tv] = -1;
    }
    return false;
  };
  return go(0, 0);
}

std::uint64_t rng_state = 4242;
std::uint64_t rnd() {
  rng_state ^= rng_state << 13;
  rng_state ^= rng_state >> 7;
  rng_state ^= rng_state << 17;
  return rng_state;
}

Tree random_tree(int k) {
  std::vector<int> parent(k, -1);
  for (int v = 1; v < k; ++v) parent[v] = static_cast<int>(rnd() % v);
  return Tree::from_parent_array(parent);
}

Graph random_graph(int n, int percent) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rnd() % 100 < static_cast<std::uint64_t>(percent)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("embed_backtracking basics") {
  CHECK(embed_backtracking(Tree::path(4), cycle(4)).has_value());
  CHECK(!embed_backtracking(Tree::star(4), cycle(4)).has_value());
  CHECK(!embed_backtracking(random_tree(9), Graph::complete(8)).has_value());
}

TEST_CASE("validate_embedding") {
  Tree p4 = Tree::path(4);
  Graph gp4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(validate_embedding(p4, gp4, {0, 1, 2, 3}).ok);
  auto bad = validate_embedding(p4, gp4, {0, 1, 1, 3});
  CHECK(!bad.ok);
  CHECK(bad.violation.find("collision") != std::string::npos);
  auto nonedge = validate_embedding(p4, gp4, {0, 1, 3, 2});
  CHECK(!nonedge.ok);
  CHECK_THROWS_AS(validate_embedding(p4, gp4, {0, 1, 2}), Error);
}

TEST_CASE("oracle output validates on seeded random instances") {
  for (int i = 0; i < 1000; ++i) {
    int k = 3 + static_cast<int>(rnd() % 5);
    int n = k + static_cast<int>(rnd() % 4);
    Tree t = random_tree(k);
    Graph g = random_graph(n, 40 + static_cast<int>(rnd() % 55));
    auto e = embed_backtracking(t, g);
    if (e) CHECK(validate_embedding(t, g, *e).ok);
  }
}

TEST_CASE("completeness against naive injection oracle") {
  for (int i = 0; i < 400; ++i) {
    int k = 2 + static_cast<int>(rnd() % 6);  // up to 7
    int n = k + static_cast<int>(rnd() % 3);  // up to 8... bounded by k+2
    Tree t = random_tree(k);
    Graph g = random_graph(n, 20 + static_cast<int>(rnd() % 70));
    CHECK(embed_backtracking(t, g).has_value() == naive_embeddable(t, g));
  }
}

TEST_CASE("monotonicity: adding edges never breaks embeddability") {
  for (int i = 0; i < 200; ++i) {
    int k = 3 + static_cast<int>(rnd() % 5);
    int n = k + static_cast<int>(rnd() % 3);
    Tree t = random_tree(k);
    Graph g = random_graph(n, 50);
    if (!embed_backtracking(t, g)) continue;
    int u = static_cast<int>(rnd() % n), v = static_cast<int>(rnd() % n);
    if (u == v) continue;
    CHECK(embed_backtracking(t, g.add_edge(u, v)).has_value());
  }
}

TEST_CASE("extend_leaves via matching") {
  // star K_{1,2} embedded center only, 2 pending leaves
  Tree star3 = Tree::star(3);
  Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}});
  PartialEmbedding pe = PartialEmbedding::empty(star3);
  pe.assign(0, 0);
  auto full = extend_leaves(pe, star3, g, {{1, 0}, {2, 0}});
  CHECK(validate_embedding(star3, g, full).ok);

  // 3 pending leaves, only 2 frontier neighbors -> HallViolation
  Tree star4 = Tree::star(4);
  PartialEmbedding pe4 = PartialEmbedding::empty(star4);
  pe4.assign(0, 0);
  CHECK_THROWS_AS(extend_leaves(pe4, star4, g, {{1, 0}, {2, 0}, {3, 0}}), HallViolation);
}

TEST_CASE("extend_leaves succeeds where greedy order could fail") {
  // two anchors share one frontier neighbor each plus one private each
  // tree: 0-1, 0-2, 3-0? build: anchors 0 and 1 adjacent, leaves 2 (on 0), 3 (on 1)
  Tree t = Tree::from_edges(4, {{0, 1}, {0, 2}, {1, 3}});
  // graph: anchors at 0,1; frontier {2,3}; 2 adjacent to both anchors, 3 only to 0
  Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  PartialEmbedding pe = PartialEmbedding::empty(t);
  pe.assign(0, 0);
  pe.assign(1, 1);
  auto full = extend_leaves(pe, t, g, {{2, 0}, {3, 1}});
  CHECK(validate_embedding(t, g, full).ok);
  CHECK(full[3] == 2);  // forced: leaf on anchor 1 must take the shared vertex
  CHECK(full[2] == 3);
}

TEST_CASE("extend_leaves matches Hall's condition exactly on exhaustive small frontiers") {
  // all bipartite candidate structures with 3 leaves over a 3-vertex
  // frontier, realized through three distinct anchors
  Tree t3 = Tree::from_edges(6, {{0, 1}, {1, 2}, {0, 3}, {1, 4}, {2, 5}});
  // anchors 0,1,2 mapped to graph 0,1,2 (path), leaves 3,4,5 pending
  for (int mask = 0; mask < (1 << 9); ++mask) {
    std::vector<std::pair<int, int>> ge{{0, 1}, {1, 2}};
    for (int leaf = 0; leaf < 3; ++leaf)
      for (int f = 0; f < 3; ++f)
        if ((mask >> (leaf * 3 + f)) & 1) ge.emplace_back(leaf, 3 + f);
    Graph g = Graph::from_edges(6, ge);
    PartialEmbedding pe = PartialEmbedding::empty(t3);
    pe.assign(0, 0);
    pe.assign(1, 1);
    pe.assign(2, 2);
    // Hall's condition over the three pending leaves
    bool hall = true;
    for (int sub = 1; sub < 8; ++sub) {
      Vset joint = 0;
      int size = 0;
      for (int leaf = 0; leaf < 3; ++leaf)
        if ((sub >> leaf) & 1) {
          ++size;
          joint |= g.neighbors(leaf) & pe.frontier(g);
        }
      if (popcount(joint) < size) hall = false;
    }
    bool matched = true;
    try {
      auto full = extend_leaves(pe, t3, g, {{3, 0}, {4, 1}, {5, 2}});
      CHECK(validate_embedding(t3, g, full).ok);
    } catch (const HallViolation& hv) {
      matched = false;
      CHECK(!hv.violating_leaves().empty());
    }
    CHECK(matched == hall);
  }
}

TEST_CASE("swap_image") {
  Tree p3 = Tree::path(3);
  Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}});
  PartialEmbedding pe = PartialEmbedding::empty(p3);
  pe.assign(0, 0);
  pe.assign(1, 1);
  pe.assign(2, 2);
  // swap leaf 2's image from 2 to 3: 3 hits image of its embedded neighbor (1)
  auto pe2 = swap_image(pe, p3, g, 2, 3);
  CHECK(pe2.map[2] == 3);
  CHECK((pe2.frontier(g) & vbit(2)) != 0);
  CHECK(validate_embedding(p3, g, pe2.map).ok);
  // 0 is not adjacent to 3... swapping vertex 1's image to 0 must fail
  CHECK_THROWS_AS(swap_image(pe, p3, g, 1, 3), Error);

  // property: swap preserves validity on seeded random instances
  int done = 0;
  for (int i = 0; i < 5000 && done < 1000; ++i) {
    int k = 3 + static_cast<int>(rnd() % 4);
    int n = k + 1 + static_cast<int>(rnd() % 3);
    Tree t = random_tree(k);
    Graph g2 = random_graph(n, 70);
    auto e = embed_backtracking(t, g2);
    if (!e) continue;
    PartialEmbedding p;
    p.map = *e;
    for (int v : *e) p.used |= vbit(v);
    int w = static_cast<int>(rnd() % k);
    Vset fr = p.frontier(g2);
    while (fr) {
      int u = lowest(fr);
      fr &= fr - 1;
      bool pre = true;
      Vset nb = t.neighbors(w);
      while (nb) {
        int x = lowest(nb);
        nb &= nb - 1;
        if (!g2.has_edge(u, p.map[x])) pre = false;
      }
      if (!pre) continue;
      auto swapped = swap_image(p, t, g2, w, u);
      CHECK(validate_embedding(t, g2, swapped.map).ok);
      ++done;
      break;
    }
  }
  CHECK(done > 100);
}

TEST_CASE("contains_path") {
  Graph c5chord = cycle(5).add_edge(0, 2);
  CHECK(contains_path(c5chord, 4));
  CHECK(!contains_path(Graph::complete(8), 9));
  CHECK(contains_path(Graph::complete(3), 1));
}
