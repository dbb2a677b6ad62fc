#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esk/errors.hpp"
#include "esk/graph.hpp"

using namespace esk;

TEST_CASE("build_graph basics") {
  Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(k4.edge_count() == 6);
  CHECK(k4.order() == 4);

  Graph k2 = Graph::from_edges(2, {{0, 1}});
  CHECK(k2.edge_count() == 1);

  Graph empty5 = Graph::from_edges(5, {});
  CHECK(empty5.edge_count() == 0);
  CHECK(avedeg(empty5) == Rational(0));

  // duplicates merge
  Graph dup = Graph::from_edges(3, {{0, 1}, {1, 0}, {0, 1}});
  CHECK(dup.edge_count() == 1);
}

TEST_CASE("build_graph errors") {
  CHECK_THROWS_AS(Graph::from_edges(65, {}), Error);
  CHECK_THROWS_AS(Graph::from_edges(0, {}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), Error);
}

TEST_CASE("avedeg is exact") {
  CHECK(avedeg(Graph::complete(4)) == Rational(3));
  CHECK(avedeg(Graph::complete(8)) == Rational(7));  // = k-2 at k=9: tightness witness

  // n=13, m=46 is the paper threshold at k=9: avedeg = 92/13 > 7
  Graph g = Graph::complete(13);
  std::vector<std::pair<int, int>> trim;
  int need = static_cast<int>(g.edge_count()) - 46;
  for (int u = 0; u < 13 && need > 0; ++u)
    for (int v = u + 1; v < 13 && need > 0; ++v)
      if ((u + v) % 2 == 0) {
        trim.emplace_back(u, v);
        --need;
      }
  g = g.delete_edges(trim);
  REQUIRE(g.edge_count() == 46);
  CHECK(avedeg(g) == Rational(92, 13));
  CHECK(avedeg(g) > Rational(7));
}

TEST_CASE("degree_stats") {
  auto s = degree_stats(Graph::complete(4));
  CHECK(s.min == 3);
  CHECK(s.max == 3);
  CHECK(s.sequence == std::vector<int>{3, 3, 3, 3});

  Graph star5 = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto ss = degree_stats(star5);
  CHECK(ss.min == 1);
  CHECK(ss.max == 4);

  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto ps = degree_stats(p4);
  CHECK(ps.min == 1);
  CHECK(ps.max == 2);
}

TEST_CASE("delete_vertices and delete_edges") {
  Graph k4 = Graph::complete(4);
  std::vector<int> old_of_new;
  Graph k3 = k4.delete_vertices(vbit(2), &old_of_new);
  CHECK(k3 == Graph::complete(3));
  CHECK(old_of_new == std::vector<int>{0, 1, 3});

  Graph m5 = k4.delete_edges({{0, 1}});
  CHECK(m5.edge_count() == 5);
  CHECK_THROWS_AS(m5.delete_edges({{0, 1}}), Error);

  // deleting u,z with d(u)=12, d(z)=4, u~z from (13,46) leaves 31 edges
  Graph g = Graph::complete(13);
  std::vector<std::pair<int, int>> trim;
  for (int v = 5; v < 13; ++v) trim.emplace_back(1, v);  // d(1) = 4
  int need = static_cast<int>(g.edge_count() - trim.size()) - 46;
  for (int u = 2; u < 13 && need > 0; ++u)
    for (int v = u + 1; v < 13 && need > 0; ++v)
      if (u != 1 && v != 1 && (u + v) % 2 == 0) {
        trim.emplace_back(u, v);
        --need;
      }
  g = g.delete_edges(trim);
  REQUIRE(g.edge_count() == 46);
  REQUIRE(g.degree(0) == 12);
  REQUIRE(g.degree(1) == 4);
  REQUIRE(g.has_edge(0, 1));
  Graph gp = g.delete_vertices(vbit(0) | vbit(1));
  CHECK(gp.edge_count() == 46 - 12 - 4 + 1);
}

TEST_CASE("graph6 round trip") {
  Graph k2 = Graph::complete(2);
  CHECK(graph6_encode(k2) == "A_");
  CHECK(graph6_decode("A_") == k2);

  // a few fixed encodings cross-checked against the format spec examples
  CHECK(graph6_encode(Graph::from_edges(5, {})) == "D??");
  Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(graph6_decode(graph6_encode(c4)) == c4);

  Graph k64 = Graph::complete(64);
  CHECK(graph6_decode(graph6_encode(k64)) == k64);

  CHECK_THROWS_AS(graph6_decode("A"), Error);
  CHECK_THROWS_AS(graph6_decode("A_x"), Error);
  CHECK_THROWS_AS(graph6_decode(""), Error);
}

TEST_CASE("graph6 matches reference codec on random graphs") {
  // reference: independent bit-by-bit re-encoder
  std::uint64_t state = 12345;
  auto rnd = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + static_cast<int>(rnd() % 12);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rnd() & 1) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, edges);
    // reference encoding
    std::string ref;
    ref.push_back(static_cast<char>(n + 63));
    std::vector<int> bits;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? 1 : 0);
    while (bits.size() % 6) bits.push_back(0);
    for (size_t i = 0; i < bits.size(); i += 6) {
      int val = 0;
      for (int b = 0; b < 6; ++b) val = val * 2 + bits[i + b];
      ref.push_back(static_cast<char>(val + 63));
    }
    CHECK(graph6_encode(g) == ref);
    CHECK(graph6_decode(ref) == g);
  }
}
