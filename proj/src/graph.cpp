#include "esk/graph.hpp"

#include <algorithm>

#include "esk/errors.hpp"

namespace esk {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1 || n > kMaxOrder)
    throw Error(Errc::cap_exceeded, "graph order must be in [1,64], got " + std::to_string(n));
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw Error(Errc::bad_edge,
                  "bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    g.adj_[u] |= vbit(v);
    g.adj_[v] |= vbit(u);
  }
  long deg_sum = 0;
  for (int v = 0; v < n; ++v) deg_sum += g.degree(v);
  g.m_ = deg_sum / 2;
  return g;
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_edges(n, edges);
}

Graph Graph::delete_vertices(Vset dropped, std::vector<int>* old_of_new) const {
  std::vector<int> keep;
  for (int v = 0; v < n_; ++v)
    if (!(dropped & vbit(v))) keep.push_back(v);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(keep.size()); ++j)
      if (has_edge(keep[i], keep[j])) edges.emplace_back(i, j);
  if (old_of_new) *old_of_new = keep;
  return from_edges(static_cast<int>(keep.size()), edges);
}

Graph Graph::delete_edges(const std::vector<std::pair<int, int>>& edges) const {
  Graph g = *this;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || !g.has_edge(u, v))
      throw Error(Errc::missing_edge,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") not present");
    g.adj_[u] &= ~vbit(v);
    g.adj_[v] &= ~vbit(u);
    --g.m_;
  }
  return g;
}

Graph Graph::add_edge(int u, int v) const {
  Graph g = *this;
  if (!g.has_edge(u, v)) {
    g.adj_[u] |= vbit(v);
    g.adj_[v] |= vbit(u);
    ++g.m_;
  }
  return g;
}

Graph Graph::remove_edge(int u, int v) const { return delete_edges({{u, v}}); }

Rational avedeg(const Graph& g) { return Rational(2 * g.edge_count(), g.order()); }

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.sequence.reserve(g.order());
  for (int v = 0; v < g.order(); ++v) s.sequence.push_back(g.degree(v));
  std::sort(s.sequence.begin(), s.sequence.end());
  s.min = s.sequence.front();
  s.max = s.sequence.back();
  return s;
}

std::string graph6_encode(const Graph& g) {
  int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    // 18-bit long form: '~' then three 6-bit groups.
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph graph6_decode(const std::string& line) {
  size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= line.size())
      throw Error(Errc::parse_error, "graph6: truncated input at byte " + std::to_string(pos));
    int c = static_cast<unsigned char>(line[pos++]);
    if (c < 63 || c > 126)
      throw Error(Errc::parse_error, "graph6: byte out of range at " + std::to_string(pos - 1));
    return c - 63;
  };
  long n;
  int c0 = next();
  if (c0 < 63) {
    n = c0;
  } else {
    long a = next(), b = next(), c = next();
    if (a == 63)  // '~~' would start the 36-bit form; beyond our cap anyway
      throw Error(Errc::cap_exceeded, "graph6: order beyond supported range");
    n = (a << 12) | (b << 6) | c;
  }
  if (n < 1 || n > Graph::kMaxOrder)
    throw Error(Errc::cap_exceeded, "graph6: order " + std::to_string(n) + " outside [1,64]");
  std::vector<std::pair<int, int>> edges;
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (nbits == 0) {
        acc = next();
        nbits = 6;
      }
      if ((acc >> (nbits - 1)) & 1) edges.emplace_back(i, j);
      --nbits;
    }
  if (pos != line.size())
    throw Error(Errc::parse_error, "graph6: trailing bytes after graph data");
  return Graph::from_edges(static_cast<int>(n), edges);
}

}  // namespace esk
