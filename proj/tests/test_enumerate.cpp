#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "esk/embed.hpp"
#include "esk/enumerate.hpp"
#include "esk/errors.hpp"
#include "esk/instance.hpp"
#include "esk/rational.hpp"

using namespace esk;

namespace {

// independent canonical form: minimum adjacency bitstring over all n! orders
std::vector<std::uint64_t> brute_min_key(const Graph& g) {
  int n = g.order();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::uint64_t> best;
  do {
    std::vector<std::uint64_t> key;
    std::uint64_t word = 0;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        word = (word << 1) | (g.has_edge(perm[i], perm[j]) ? 1u : 0u);
        if (++bits == 64) {
          key.push_back(word);
          word = 0;
          bits = 0;
        }
      }
    if (bits) key.push_back(word << (64 - bits));
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::size_t brute_class_count(int n, long min_edges = 0) {
  int m = n * (n - 1) / 2;
  std::set<std::vector<std::uint64_t>> seen;
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (mask & (1L << bit)) edges.emplace_back(i, j);
        ++bit;
      }
    if (static_cast<long>(edges.size()) < min_edges) continue;
    seen.insert(brute_min_key(Graph::from_edges(n, edges)));
  }
  return seen.size();
}

Graph relabeled(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j)
      if (g.has_edge(i, j)) edges.emplace_back(perm[i], perm[j]);
  return Graph::from_edges(g.order(), edges);
}

}  // namespace

TEST_CASE("rng determinism and substreams") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.next();
    if (x != b.next()) all_equal = false;
    if (x != c.next()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
  Rng d(1, 1);
  for (int i = 0; i < 1000; ++i) CHECK(d.below(7) < 7);
  CHECK_THROWS_AS(d.below(0), Error);
}

TEST_CASE("canonical labeling agrees with brute force on small orders") {
  CHECK(all_graphs_upto_iso(1).size() == 1);
  CHECK(all_graphs_upto_iso(2).size() == 2);
  CHECK(all_graphs_upto_iso(3).size() == brute_class_count(3));  // 4
  CHECK(all_graphs_upto_iso(4).size() == brute_class_count(4));  // 11
  CHECK(all_graphs_upto_iso(5).size() == brute_class_count(5));  // 34
  CHECK(all_graphs_upto_iso(4).size() == 11);
  CHECK(all_graphs_upto_iso(5).size() == 34);
  CHECK(all_graphs_upto_iso(6).size() == 156);
  CHECK(all_graphs_upto_iso(3, 3).size() == 1);
  CHECK(all_graphs_upto_iso(5, 8).size() == brute_class_count(5, 8));
}

TEST_CASE("canonical key is invariant under relabeling") {
  Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
  std::vector<int> perm{3, 5, 0, 2, 4, 1};
  Graph h = relabeled(g, perm);
  CHECK(canonical_key(g) == canonical_key(h));
  CHECK(graphs_isomorphic(g, h));
  Graph other = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 2}});
  CHECK(canonical_key(g) != canonical_key(other));
  CHECK(!graphs_isomorphic(g, other));
}

TEST_CASE("free tree enumeration matches the pruefer census") {
  std::size_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47};  // orders 1..9
  for (int k = 1; k <= 9; ++k) CHECK(all_free_trees(k).size() == expected[k - 1]);
  for (int k = 3; k <= 9; ++k)
    CHECK(count_free_trees_by_pruefer(k) == all_free_trees(k).size());
  CHECK(count_free_trees_by_pruefer(8, 3) == 23);  // sharded walk, same census
}

TEST_CASE("pruefer decode covers all labeled trees") {
  // Cayley: k^(k-2) distinct labeled trees on k vertices
  int k = 6;
  std::set<std::string> seen;
  std::vector<int> seq(k - 2, 0);
  for (;;) {
    Tree t = pruefer_to_tree(seq);
    auto edges = t.edges();
    for (auto& [a, b] : edges)
      if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    std::string key;
    for (auto [a, b] : edges) key += std::to_string(a) + "-" + std::to_string(b) + ";";
    seen.insert(key);
    int i = 0;
    while (i < k - 2 && seq[i] == k - 1) seq[i++] = 0;
    if (i == k - 2) break;
    ++seq[i];
  }
  CHECK(seen.size() == 1296);
}

TEST_CASE("tree canonical code separates and unifies correctly") {
  CHECK(tree_canonical_code(Tree::path(7)) != tree_canonical_code(Tree::star(7)));
  Tree t = Tree::from_parent_array({-1, 0, 0, 1, 1, 2});
  Tree same = Tree::from_parent_array({-1, 0, 1, 1, 0, 4});  // relabeled shape
  CHECK(tree_canonical_code(t) == tree_canonical_code(same));
}

TEST_CASE("tree serialization roundtrip") {
  Tree t = Tree::from_parent_array({-1, 0, 0, 1, 3, 3});
  Tree back = tree_from_string(tree_to_string(t));
  CHECK(back.order() == t.order());
  CHECK(tree_canonical_code(back) == tree_canonical_code(t));
  CHECK_THROWS_AS(tree_from_string("not a tree"), Error);
}

TEST_CASE("random instances satisfy their postconditions") {
  for (int k : {9, 11}) {
    for (int delta = k - 1; delta <= k + 3; ++delta) {
      GenOptions opts;
      opts.delta_target = delta;
      for (std::uint64_t idx = 0; idx < 6; ++idx) {
        opts.style = static_cast<int>(idx % 6);
        Instance inst = random_instance(k, 5, idx, opts);
        CHECK(inst.g.order() == k + 4);
        CHECK(inst.t.order() == k);
        DegreeStats st = degree_stats(inst.g);
        CHECK(st.max == delta);
        CHECK(st.min >= k / 2);
        CHECK(inst.g.edge_count() >= paper_edge_threshold(k));
        CHECK(inst.avedeg_ok);
        CHECK(tree_diameter(inst.t) >= 5);
      }
    }
  }
}

TEST_CASE("random instances are reproducible from seed and index") {
  GenOptions opts;
  opts.delta_target = 12;
  Instance a = random_instance(9, 123, 4, opts);
  Instance b = random_instance(9, 123, 4, opts);
  CHECK(a.g == b.g);
  CHECK(tree_to_string(a.t) == tree_to_string(b.t));
  Instance c = random_instance(9, 123, 5, opts);
  bool differs = !(a.g == c.g) || tree_to_string(a.t) != tree_to_string(c.t);
  CHECK(differs);
}

TEST_CASE("infeasible generator targets are reported") {
  GenOptions opts;
  opts.delta_target = 4;  // below k-1
  CHECK_THROWS_AS(random_instance(9, 1, 0, opts), Error);
}
