#include "esk/enumerate.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "esk/errors.hpp"

namespace esk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t x = master_seed ^ (0xA0761D6478BD642FULL * (stream_index + 1));
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t Rng::next() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::empty_range, "Rng::below: bound must be positive");
  std::uint64_t cutoff = (-bound) % bound;  // 2^64 - cutoff is a multiple of bound
  std::uint64_t r;
  do {
    r = next();
  } while (r < cutoff);
  return r % bound;
}

// ---------------------------------------------------------------------------
// canonical labeling

namespace {

// stable color refinement; color ids are assigned in signature order, so
// they are independent of the input labeling
std::vector<int> stable_colors(const Graph& g) {
  int n = g.order();
  std::vector<int> color(n, 0);
  int classes = 1;
  for (;;) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s;
      s.push_back(color[v]);
      Vset nb = g.neighbors(v);
      std::vector<int> ncol;
      while (nb) {
        int w = lowest(nb);
        nb &= nb - 1;
        ncol.push_back(color[w]);
      }
      std::sort(ncol.begin(), ncol.end());
      s.insert(s.end(), ncol.begin(), ncol.end());
      sig[v] = std::move(s);
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) -
                                  uniq.begin());
    int nc = static_cast<int>(uniq.size());
    if (nc == classes) return color;
    classes = nc;
  }
}

struct CanonSearch {
  const Graph* g;
  int n;
  std::vector<int> want_color;  // color required at each position
  std::vector<int> color;
  std::vector<int> placed;
  std::vector<std::uint64_t> rows;  // rows[i]: adjacency of placed[i] to placed[0..i-1]
  Vset used = 0;
  std::vector<std::uint64_t> best_rows;
  std::vector<int> best_perm;

  void run() {
    go(0, true);
  }

  // tight: the prefix rows equal the incumbent's prefix so far
  void go(int level, bool tight) {
    if (level == n) {
      if (best_perm.empty() || rows < best_rows) {
        best_rows = rows;
        best_perm = placed;
      }
      return;
    }
    // candidates from the forced color class, minimal prefix row only
    struct Cand {
      int v;
      std::uint64_t row;
    };
    std::vector<Cand> cands;
    std::uint64_t best = ~std::uint64_t{0};
    for (int v = 0; v < n; ++v) {
      if ((used & vbit(v)) || color[v] != want_color[level]) continue;
      std::uint64_t row = 0;
      for (int j = 0; j < level; ++j)
        if (g->has_edge(v, placed[j])) row |= std::uint64_t{1} << (63 - j);
      if (row < best) {
        best = row;
        cands.clear();
      }
      if (row == best) cands.push_back({v, row});
    }
    // interchangeable candidates (swap is an automorphism): keep one
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = i + 1; j < cands.size();) {
        Vset mask = ~(vbit(cands[i].v) | vbit(cands[j].v));
        if (((g->neighbors(cands[i].v) ^ g->neighbors(cands[j].v)) & mask) == 0)
          cands.erase(cands.begin() + static_cast<long>(j));
        else
          ++j;
      }
    // prune against the incumbent, valid only while the prefix is tight
    if (!best_perm.empty() && tight) {
      if (best > best_rows[level]) return;
      if (best < best_rows[level]) tight = false;
    }
    for (const Cand& c : cands) {
      placed.push_back(c.v);
      rows.push_back(c.row);
      used |= vbit(c.v);
      go(level + 1, tight);
      used &= ~vbit(c.v);
      rows.pop_back();
      placed.pop_back();
    }
  }
};

std::vector<int> canonical_perm(const Graph& g) {
  int n = g.order();
  CanonSearch cs;
  cs.g = &g;
  cs.n = n;
  cs.color = stable_colors(g);
  cs.want_color = cs.color;
  std::sort(cs.want_color.begin(), cs.want_color.end());
  cs.placed.reserve(n);
  cs.rows.reserve(n);
  cs.run();
  return cs.best_perm;
}

}  // namespace

std::vector<Vset> canonical_adjacency(const Graph& g) {
  std::vector<int> perm = canonical_perm(g);  // new index -> old vertex
  int n = g.order();
  std::vector<Vset> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.has_edge(perm[i], perm[j])) adj[i] |= vbit(j);
  return adj;
}

std::vector<std::uint64_t> canonical_key(const Graph& g) {
  std::vector<Vset> adj = canonical_adjacency(g);
  int n = g.order();
  std::vector<std::uint64_t> key{static_cast<std::uint64_t>(n)};
  std::uint64_t word = 0;
  int fill = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      word = (word << 1) | ((adj[i] >> j) & 1);
      if (++fill == 64) {
        key.push_back(word);
        word = 0;
        fill = 0;
      }
    }
  if (fill) key.push_back(word << (64 - fill));
  return key;
}

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_key(a) == canonical_key(b);
}

std::vector<Graph> all_graphs_upto_iso(int n, long min_edges) {
  if (n < 1 || n > 10)
    throw Error(Errc::cap_exceeded, "all_graphs_upto_iso: order must be in [1, 10]");
  std::vector<Graph> reps{Graph::from_edges(1, {})};
  for (int m = 2; m <= n; ++m) {
    std::unordered_set<std::string> seen;
    std::vector<Graph> next;
    for (const Graph& g : reps) {
      std::vector<std::pair<int, int>> base;
      for (int u = 0; u < m - 1; ++u)
        for (int v = u + 1; v < m - 1; ++v)
          if (g.has_edge(u, v)) base.emplace_back(u, v);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        std::vector<std::pair<int, int>> edges = base;
        for (int v = 0; v < m - 1; ++v)
          if ((mask >> v) & 1) edges.emplace_back(v, m - 1);
        Graph h = Graph::from_edges(m, edges);
        std::vector<std::uint64_t> key = canonical_key(h);
        std::string packed(reinterpret_cast<const char*>(key.data()),
                           key.size() * sizeof(std::uint64_t));
        if (seen.insert(packed).second) next.push_back(std::move(h));
      }
    }
    reps = std::move(next);
  }
  if (min_edges > 0) {
    std::vector<Graph> filtered;
    for (Graph& g : reps)
      if (g.edge_count() >= min_edges) filtered.push_back(std::move(g));
    reps = std::move(filtered);
  }
  return reps;
}

// ---------------------------------------------------------------------------
// free trees

namespace {

constexpr int kRawMax = 32;

struct RawAdj {
  int k = 0;
  std::uint64_t nb[kRawMax];
};

void raw_from_pruefer(const int* seq, int k, RawAdj& a) {
  a.k = k;
  int deg[kRawMax];
  for (int i = 0; i < k; ++i) {
    deg[i] = 1;
    a.nb[i] = 0;
  }
  for (int i = 0; i < k - 2; ++i) ++deg[seq[i]];
  auto link = [&](int x, int y) {
    a.nb[x] |= std::uint64_t{1} << y;
    a.nb[y] |= std::uint64_t{1} << x;
  };
  if (k == 2) {
    link(0, 1);
    return;
  }
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int i = 0; i < k - 2; ++i) {
    int x = seq[i];
    link(leaf, x);
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  link(leaf, k - 1);
}

// rooted subtree code as a balanced bit string (1 open, 0 close), children
// ordered by descending (length, code)
std::uint64_t raw_rooted_code(const RawAdj& a, int v, int parent, int* len) {
  std::uint64_t ccode[kRawMax];
  int clen[kRawMax];
  int cnt = 0;
  std::uint64_t nb = a.nb[v];
  if (parent >= 0) nb &= ~(std::uint64_t{1} << parent);
  while (nb) {
    int w = lowest(nb);
    nb &= nb - 1;
    ccode[cnt] = raw_rooted_code(a, w, v, &clen[cnt]);
    ++cnt;
  }
  for (int i = 1; i < cnt; ++i) {
    std::uint64_t c = ccode[i];
    int l = clen[i];
    int j = i - 1;
    while (j >= 0 && (clen[j] < l || (clen[j] == l && ccode[j] < c))) {
      ccode[j + 1] = ccode[j];
      clen[j + 1] = clen[j];
      --j;
    }
    ccode[j + 1] = c;
    clen[j + 1] = l;
  }
  std::uint64_t code = 1;
  int total = 1;
  for (int i = 0; i < cnt; ++i) {
    code = (code << clen[i]) | ccode[i];
    total += clen[i];
  }
  code <<= 1;
  ++total;
  *len = total;
  return code;
}

std::uint64_t raw_code(const RawAdj& a) {
  int k = a.k;
  if (k == 1) return 2;  // "10"
  // centroid(s): minimize the largest component after removal
  int size[kRawMax];
  int order[kRawMax];
  int parent[kRawMax];
  int top = 0;
  // iterative post-order from 0
  {
    int stk[kRawMax];
    int sp = 0;
    stk[sp++] = 0;
    parent[0] = -1;
    while (sp) {
      int v = stk[--sp];
      order[top++] = v;
      std::uint64_t nb = a.nb[v];
      if (parent[v] >= 0) nb &= ~(std::uint64_t{1} << parent[v]);
      while (nb) {
        int w = lowest(nb);
        nb &= nb - 1;
        parent[w] = v;
        stk[sp++] = w;
      }
    }
  }
  for (int i = 0; i < k; ++i) size[i] = 1;
  for (int i = k - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
  int best_worst = k + 1;
  int cents[2] = {-1, -1};
  for (int v = 0; v < k; ++v) {
    int worst = k - size[v];
    std::uint64_t nb = a.nb[v];
    if (parent[v] >= 0) nb &= ~(std::uint64_t{1} << parent[v]);
    while (nb) {
      int w = lowest(nb);
      nb &= nb - 1;
      worst = std::max(worst, size[w]);
    }
    if (worst < best_worst) {
      best_worst = worst;
      cents[0] = v;
      cents[1] = -1;
    } else if (worst == best_worst) {
      cents[1] = v;
    }
  }
  int len;
  std::uint64_t code = raw_rooted_code(a, cents[0], -1, &len);
  if (cents[1] >= 0) code = std::min(code, raw_rooted_code(a, cents[1], -1, &len));
  return code;
}

RawAdj raw_from_tree(const Tree& t) {
  RawAdj a;
  a.k = t.order();
  for (int v = 0; v < a.k; ++v) a.nb[v] = t.neighbors(v);
  return a;
}

}  // namespace

std::uint64_t tree_canonical_code(const Tree& t) {
  if (t.order() > kRawMax)
    throw Error(Errc::cap_exceeded, "tree_canonical_code: order must be <= 32");
  RawAdj a = raw_from_tree(t);
  return raw_code(a);
}

std::vector<Tree> all_free_trees(int k) {
  if (k < 1 || k > 16)
    throw Error(Errc::cap_exceeded, "all_free_trees: order must be in [1, 16]");
  std::vector<Tree> reps{Tree::from_edges(1, {})};
  for (int m = 2; m <= k; ++m) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Tree> next;
    for (const Tree& t : reps) {
      for (int v = 0; v < m - 1; ++v) {
        std::vector<std::pair<int, int>> edges = t.edges();
        edges.emplace_back(v, m - 1);
        Tree grown = Tree::from_edges(m, edges);
        if (seen.insert(tree_canonical_code(grown)).second) next.push_back(std::move(grown));
      }
    }
    reps = std::move(next);
  }
  return reps;
}

Tree pruefer_to_tree(const std::vector<int>& seq) {
  int k = static_cast<int>(seq.size()) + 2;
  if (k > kRawMax) throw Error(Errc::cap_exceeded, "pruefer_to_tree: order must be <= 32");
  for (int x : seq)
    if (x < 0 || x >= k) throw Error(Errc::parse_error, "pruefer_to_tree: value out of range");
  RawAdj a;
  raw_from_pruefer(seq.data(), k, a);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < k; ++u) {
    std::uint64_t nb = a.nb[u] >> (u + 1) << (u + 1);
    while (nb) {
      int v = lowest(nb);
      nb &= nb - 1;
      edges.emplace_back(u, v);
    }
  }
  return Tree::from_edges(k, edges);
}

std::size_t count_free_trees_by_pruefer(int k, int jobs) {
  if (k < 3) return 1;
  if (k > 12) throw Error(Errc::cap_exceeded, "count_free_trees_by_pruefer: k must be <= 12");
  std::uint64_t total = 1;
  for (int i = 0; i < k - 2; ++i) total *= static_cast<std::uint64_t>(k);
  if (jobs < 1) jobs = 1;
  auto worker = [k](std::uint64_t lo, std::uint64_t hi,
                    std::unordered_set<std::uint64_t>* out) {
    int seq[kRawMax] = {0};
    std::uint64_t x = lo;
    for (int i = k - 3; i >= 0; --i) {
      seq[i] = static_cast<int>(x % k);
      x /= k;
    }
    RawAdj a;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      raw_from_pruefer(seq, k, a);
      out->insert(raw_code(a));
      // odometer increment
      for (int i = k - 3; i >= 0; --i) {
        if (++seq[i] < k) break;
        seq[i] = 0;
      }
    }
  };
  std::vector<std::unordered_set<std::uint64_t>> partial(static_cast<std::size_t>(jobs));
  std::vector<std::thread> threads;
  for (int j = 0; j < jobs; ++j) {
    std::uint64_t lo = total / jobs * j + std::min<std::uint64_t>(j, total % jobs);
    std::uint64_t hi = total / jobs * (j + 1) + std::min<std::uint64_t>(j + 1, total % jobs);
    threads.emplace_back(worker, lo, hi, &partial[j]);
  }
  for (auto& th : threads) th.join();
  std::unordered_set<std::uint64_t> all;
  for (auto& p : partial) all.insert(p.begin(), p.end());
  return all.size();
}

// ---------------------------------------------------------------------------
// seeded instance generator

namespace {

// Builds G as the complement of an edge set H grown under per-vertex
// bounds: every vertex needs at least `need` H-edges (caps G-degrees at
// delta), at most `cap` (keeps G-degrees >= floor(k/2)), and the witness
// w sits at exactly `need_w` forever.
struct ComplementBuilder {
  int n;
  std::vector<Vset> h;
  std::vector<int> hdeg;
  long hm = 0;
  long max_hm;
  int w;
  std::vector<int> cap;

  ComplementBuilder(int n_, long max_hm_, int w_, int common_cap)
      : n(n_), h(n_, 0), hdeg(n_, 0), max_hm(max_hm_), w(w_), cap(n_, common_cap) {}

  bool can_add(int u, int v) const {
    return u != v && !((h[u] >> v) & 1) && hdeg[u] < cap[u] && hdeg[v] < cap[v] &&
           hm < max_hm;
  }
  void add(int u, int v) {
    h[u] |= vbit(v);
    h[v] |= vbit(u);
    ++hdeg[u];
    ++hdeg[v];
    ++hm;
  }
  // random eligible partner for v, preferring the pool when given
  int partner(Rng& rng, int v, Vset pool = 0) {
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<int> elig;
      for (int u = 0; u < n; ++u) {
        if (!can_add(v, u)) continue;
        if (pass == 0 && pool && !(pool & vbit(u))) continue;
        elig.push_back(u);
      }
      if (!elig.empty()) return elig[rng.pick(static_cast<int>(elig.size()))];
      if (!pool) break;
    }
    return -1;
  }

  Graph to_graph() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!((h[u] >> v) & 1)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
  }
};

}  // namespace

std::string tree_to_string(const Tree& t) {
  std::ostringstream os;
  std::vector<int> p = t.parent_array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  return os.str();
}

Tree tree_from_string(const std::string& s) {
  std::vector<int> p;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      p.push_back(v);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "tree_from_string: bad token '" + tok + "'");
    }
  }
  if (p.empty()) throw Error(Errc::parse_error, "tree_from_string: empty input");
  return Tree::from_parent_array(p);
}

Instance random_instance(int k, std::uint64_t seed, std::uint64_t index,
                         const GenOptions& opts) {
  if (k < 9 || k > 60)
    throw Error(Errc::target_infeasible, "random_instance: k must be in [9, 60]");
  int n = k + 4;
  Rng rng(seed, index);

  int delta = opts.delta_target ? *opts.delta_target : k - 1 + rng.pick(5);
  if (delta < k - 1 || delta > k + 3)
    throw Error(Errc::target_infeasible, "random_instance: delta target out of [k-1, k+3]");
  int style = opts.style ? *opts.style : rng.pick(6);
  if (style < 0 || style > 9)
    throw Error(Errc::target_infeasible, "random_instance: style out of [0, 9]");
  // styles 6..9 plant fixed substructures and dictate the max degree
  if (style >= 6) {
    int want = style == 9 ? k - 1 : style == 8 ? k + 1 : k + 2;
    if (opts.delta_target && *opts.delta_target != want)
      throw Error(Errc::target_infeasible, "random_instance: style fixes a different max degree");
    delta = want;
  }

  long full = static_cast<long>(n) * (n - 1) / 2;
  long max_hm = full - paper_edge_threshold(k);
  int need = n - 1 - delta;  // H-degree floor for every vertex
  int cap = n - 1 - k / 2;   // H-degree ceiling (G min degree floor)

  int wpick = rng.pick(n);
  ComplementBuilder cb(n, max_hm, style >= 6 ? 0 : wpick, cap);
  cb.cap[cb.w] = need;  // witness pinned at G-degree exactly delta

  // planted substructures; caps freeze the shapes against later fills
  int core_hi = -1;
  if (style == 6 || style == 7) {
    // u misses only x; x sits at degree k-1 missing u and three more
    cb.add(0, 1);
    for (int y : {2, 3, 4}) cb.add(1, y);
    cb.cap[1] = 4;
    if (style == 6) {
      cb.cap[2] = 1;  // one missed vertex stays at degree k+2
    } else {
      for (int y : {2, 3, 4}) {  // the whole missed fan settles at degree k-1
        while (cb.hdeg[y] < 4) {
          int p = cb.partner(rng, y, ~Vset(0) << 5);
          if (p < 0)
            throw Error(Errc::target_infeasible, "random_instance: fan fill failed");
          cb.add(y, p);
        }
        cb.cap[y] = 4;
      }
    }
    core_hi = 4;
  } else if (style == 8) {
    // u misses x1 and x2; every other vertex misses at least one of them
    cb.add(0, 1);
    cb.add(0, 2);
    cb.add(1, 2);
    for (int v = 3; v < n; ++v) cb.add(v % 2 ? 1 : 2, v);
    core_hi = 2;
  } else if (style == 9) {
    // four independent degree k-1 witnesses with split private misses
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) cb.add(i, j);
    cb.add(0, 4);
    cb.add(1, 5);
    cb.add(2, 6);
    cb.add(3, 6);
    for (int i = 0; i < 4; ++i) cb.cap[i] = 4;
    core_hi = 6;
  }

  // planted low-degree vertex in the z-window [floor(k/2), k-5]
  int z0 = -1, z_hdeg = 0;
  if (style != 5 && k - 5 >= k / 2) {
    do {
      z0 = rng.pick(n);
    } while (z0 == cb.w || z0 <= core_hi);
    int dz = k / 2 + rng.pick(k - 5 - k / 2 + 1);
    z_hdeg = n - 1 - dz;
  }

  // style pools steer where misses concentrate
  Vset pool = 0;
  if (style == 2 || style == 3) {
    int sz = style == 2 ? 3 : 5;
    while (popcount(pool) < sz) {
      int v = rng.pick(n);
      if (v != cb.w) pool |= vbit(v);
    }
  }

  // forced fills: witness, planted z, then everyone up to `need`
  while (cb.hdeg[cb.w] < need) {
    int u = cb.partner(rng, cb.w);
    if (u < 0) throw Error(Errc::target_infeasible, "random_instance: witness fill failed");
    cb.add(cb.w, u);
  }
  if (z0 >= 0) {
    while (cb.hdeg[z0] < z_hdeg) {
      int u = cb.partner(rng, z0, pool);
      if (u < 0) break;  // z window is best effort; hard targets are checked below
      cb.add(z0, u);
    }
  }
  std::vector<int> fill_order;
  for (int v = 0; v < n; ++v)
    if (v != cb.w) fill_order.push_back(v);
  for (int i = static_cast<int>(fill_order.size()) - 1; i > 0; --i)
    std::swap(fill_order[i], fill_order[rng.pick(i + 1)]);
  for (int v : fill_order) {
    while (cb.hdeg[v] < need) {
      // prefer partners that are themselves short of the floor
      Vset deficient = 0;
      for (int u = 0; u < n; ++u)
        if (u != cb.w && cb.hdeg[u] < need) deficient |= vbit(u);
      int u = cb.partner(rng, v, (pool & vbit(v)) ? (pool & deficient ? pool & deficient : pool)
                                                  : deficient);
      if (u < 0) u = cb.partner(rng, v);
      if (u < 0)
        throw Error(Errc::target_infeasible, "random_instance: degree floor unreachable");
      cb.add(v, u);
    }
  }

  // style extras within the remaining edge budget
  long slack = cb.max_hm - cb.hm;
  long extra = 0;
  switch (style) {
    case 0:
      extra = 0;
      break;
    case 1:
    case 5:
      extra = slack > 0 ? static_cast<long>(rng.below(static_cast<std::uint64_t>(slack) + 1))
                        : 0;
      break;
    case 2:
    case 3:
      extra = slack;  // concentrate as much as fits into the pool
      break;
    case 4:
      extra = slack / 2;
      break;
    default:
      break;
  }
  for (long i = 0; i < extra; ++i) {
    int a = -1, b = -1;
    if (pool) {
      // inside the pool first, then pool-to-rest
      std::vector<std::pair<int, int>> cand;
      Vset p1 = pool;
      while (p1) {
        int u = lowest(p1);
        p1 &= p1 - 1;
        Vset p2 = pool & ~(vbit(u) | (vbit(u) - 1));
        while (p2) {
          int v = lowest(p2);
          p2 &= p2 - 1;
          if (cb.can_add(u, v)) cand.emplace_back(u, v);
        }
      }
      if (!cand.empty()) {
        auto [u, v] = cand[rng.pick(static_cast<int>(cand.size()))];
        a = u;
        b = v;
      } else {
        Vset p3 = pool;
        while (p3 && a < 0) {
          int u = lowest(p3);
          p3 &= p3 - 1;
          int v = cb.partner(rng, u);
          if (v >= 0) {
            a = u;
            b = v;
          }
        }
      }
    }
    if (a < 0) {
      if (style == 4) {
        // level the complement: pick the two lowest joinable H-degrees
        for (int u = 0; u < n; ++u)
          if (u != cb.w && (a < 0 || cb.hdeg[u] < cb.hdeg[a]) && cb.hdeg[u] < cb.cap[u]) a = u;
        if (a >= 0) b = cb.partner(rng, a);
      } else {
        a = rng.pick(n);
        b = cb.partner(rng, a);
      }
    }
    if (a < 0 || b < 0) break;
    cb.add(a, b);
  }

  Graph g = cb.to_graph();

  // hard postconditions
  DegreeStats st = degree_stats(g);
  if (st.max != delta || st.min < k / 2 || g.edge_count() < paper_edge_threshold(k))
    throw Error(Errc::target_infeasible, "random_instance: constraints not realizable");

  // tree: rejection sample pruefer sequences for diameter and shape
  int shape = opts.tree_shape ? *opts.tree_shape : rng.pick(3);
  if (shape < 0 || shape > 2)
    throw Error(Errc::target_infeasible, "random_instance: tree shape out of [0, 2]");
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<int> seq(static_cast<std::size_t>(k - 2));
    for (int& x : seq) x = rng.pick(k);
    Tree t = pruefer_to_tree(seq);
    if (tree_diameter(t) < 5) continue;
    if (shape != 0) {
      PathDecomposition d = longest_path_decomposition(t);
      if (shape == 1 && (d.s != 1 || d.t != 1)) continue;
      if (shape == 2 && d.s < 2) continue;
    }
    return Instance::make(std::move(g), std::move(t));
  }
  throw Error(Errc::target_infeasible, "random_instance: no tree with the requested shape");
}

}  // namespace esk
