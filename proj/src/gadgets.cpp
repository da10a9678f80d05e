#include "gisim/gadgets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gisim/error.hpp"

namespace gisim {

namespace {

std::vector<uint64_t> sequential_ids(int n) {
  std::vector<uint64_t> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

// Rotates/reflects a cycle list so it starts at its smallest node and walks
// toward the smaller of that node's two cycle neighbors.
std::vector<int> canonical_cycle(std::vector<int> c) {
  size_t n = c.size();
  if (n < 3) return c;
  size_t at = static_cast<size_t>(std::min_element(c.begin(), c.end()) - c.begin());
  std::rotate(c.begin(), c.begin() + static_cast<long>(at), c.end());
  if (c[1] > c[n - 1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

}  // namespace

GadgetFamily build_Qn(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "family needs n >= 2");
  int total = 5 * n;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t + 1 < total; ++t) edges.push_back({t, t + 1});
  // Shortcut across the middle triple of each block: {v_{5i-3}, v_{5i-1}}.
  for (int i = 1; i <= n; ++i) edges.push_back({5 * i - 4, 5 * i - 2});
  GadgetFamily fam{Graph(sequential_ids(total), edges), {}};
  for (int i = 1; i <= n; ++i) fam.units.push_back({5 * i - 3, 5 * i - 2});
  return fam;
}

GadgetFamily build_Mn(int n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "family needs n >= 3");
  int total = 6 * n;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t + 1 < 4 * n; ++t) edges.push_back({t, t + 1});
  edges.push_back({0, 4 * n - 1});  // closed ring
  for (int i = 1; i <= n; ++i) {
    int a = 4 * i - 4, b = 4 * i - 3;          // ring anchors v_{4i-3}, v_{4i-2}
    int x = 4 * n + i - 1, y = 5 * n + i - 1;  // apex pair
    edges.push_back({a, x});
    edges.push_back({b, y});
    edges.push_back({x, y});
  }
  GadgetFamily fam{Graph(sequential_ids(total), edges), {}};
  for (int i = 1; i <= n; ++i) fam.units.push_back({4 * n + i - 1, 5 * n + i - 1});
  return fam;
}

CrossingSpec crossing_spec(const GadgetFamily& fam, int i, int j) {
  int units = static_cast<int>(fam.units.size());
  if (i < 1 || j < 1 || i > units || j > units || i == j)
    throw Error(Errc::InvalidArgument, "unit pair out of range");
  CrossingSpec spec;
  spec.h1 = fam.units[static_cast<size_t>(i - 1)];
  spec.h2 = fam.units[static_cast<size_t>(j - 1)];
  return spec;
}

Graph cross(const Graph& g, const CrossingSpec& spec) {
  size_t m = spec.h1.size();
  if (m == 0 || spec.h2.size() != m)
    throw Error(Errc::InvalidArgument, "paired node sets must have equal nonzero size");
  std::vector<int> iso = spec.iso;
  if (iso.empty()) {
    iso.resize(m);
    std::iota(iso.begin(), iso.end(), 0);
  }
  if (iso.size() != m) throw Error(Errc::InvalidArgument, "pairing has wrong size");
  std::vector<char> hit(m, 0);
  for (int t : iso) {
    if (t < 0 || static_cast<size_t>(t) >= m || hit[static_cast<size_t>(t)])
      throw Error(Errc::InvalidArgument, "pairing is not a permutation");
    hit[static_cast<size_t>(t)] = 1;
  }
  std::set<int> nodes;
  for (int v : spec.h1) nodes.insert(v);
  for (int v : spec.h2) nodes.insert(v);
  if (nodes.size() != 2 * m)
    throw Error(Errc::SpecsNotIndependent, "paired node sets overlap");
  for (int v : nodes)
    if (v < 0 || v >= g.n()) throw Error(Errc::InvalidArgument, "node index out of range");

  std::set<std::pair<int, int>> edge_set(g.edges().begin(), g.edges().end());
  auto has = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return edge_set.count({a, b}) > 0;
  };
  auto toggle = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (!edge_set.erase({a, b})) edge_set.insert({a, b});
  };
  for (size_t s = 0; s < m; ++s)
    for (size_t t = s + 1; t < m; ++t) {
      int u = spec.h1[s], v = spec.h1[t];
      int u2 = spec.h2[static_cast<size_t>(iso[s])], v2 = spec.h2[static_cast<size_t>(iso[t])];
      bool within = has(u, v);
      if (within != has(u2, v2))
        throw Error(Errc::NotIsomorphic, "paired subgraphs are not isomorphic");
      bool across = has(u, v2);
      if (across != has(u2, v))
        throw Error(Errc::InvalidArgument, "inconsistent cross-pair adjacency");
      if (within != across) {
        toggle(u, v);
        toggle(u2, v2);
        toggle(u, v2);
        toggle(u2, v);
      }
    }
  return Graph(g.ids(), {edge_set.begin(), edge_set.end()});
}

Graph crossed(const GadgetFamily& fam, int i, int j) {
  return cross(fam.graph, crossing_spec(fam, i, j));
}

PermutationModel qn_permutation_model(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "family needs n >= 1");
  PermutationModel m;
  m.l1.resize(static_cast<size_t>(5 * n));
  m.l2.resize(static_cast<size_t>(5 * n));
  // Per block: segments ordered c2 c1 c3 c5 c4 on the top line; on the
  // bottom line c1 dips below the block, the shortcut triple reverses, and
  // c5 pokes past the next block's c1 to cross it.
  for (int i = 0; i < n; ++i) {
    int t = 5 * i;
    m.l1[static_cast<size_t>(t + 0)] = t + 1;
    m.l1[static_cast<size_t>(t + 1)] = t + 0;
    m.l1[static_cast<size_t>(t + 2)] = t + 2;
    m.l1[static_cast<size_t>(t + 3)] = t + 4;
    m.l1[static_cast<size_t>(t + 4)] = t + 3;
    m.l2[static_cast<size_t>(t + 0)] = i == 0 ? 0 : t - 1;
    m.l2[static_cast<size_t>(t + 1)] = t + 3;
    m.l2[static_cast<size_t>(t + 2)] = t + 2;
    m.l2[static_cast<size_t>(t + 3)] = t + 1;
    m.l2[static_cast<size_t>(t + 4)] = i == n - 1 ? 5 * n - 1 : t + 5;
  }
  return m;
}

TrapezoidModel qn_trapezoid_model(int n) {
  PermutationModel pm = qn_permutation_model(n);
  TrapezoidModel tm;
  for (size_t v = 0; v < pm.l1.size(); ++v)
    tm.entries.push_back(
        {2 * pm.l1[v], 2 * pm.l1[v] + 1, 2 * pm.l2[v], 2 * pm.l2[v] + 1});
  return tm;
}

ChordModel mn_chord_model(int n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "family needs n >= 3");
  // Endpoints on a virtual circle of 80n positions, then rank-compressed.
  int wrap = 80 * n;
  std::vector<std::pair<int, int>> raw;
  for (int j = 0; j < 4 * n; ++j) {
    int a = 20 * j, b = (20 * j + 30) % wrap;
    raw.push_back({std::min(a, b), std::max(a, b)});
  }
  for (int i = 1; i <= n; ++i) {
    int base = 80 * (i - 1);
    raw.push_back({base + 21, base + 32});  // apexes come after the ring block
  }
  for (int i = 1; i <= n; ++i) {
    int base = 80 * (i - 1);
    raw.push_back({base + 15, base + 28});
  }
  std::vector<int> all;
  for (auto [a, b] : raw) {
    all.push_back(a);
    all.push_back(b);
  }
  std::sort(all.begin(), all.end());
  auto rank = [&](int x) {
    return static_cast<int>(std::lower_bound(all.begin(), all.end(), x) - all.begin());
  };
  ChordModel m;
  for (auto [a, b] : raw) m.entries.push_back({rank(a), rank(b)});
  return m;
}

std::vector<int> crossed_qn_c6(int n, int i, int j) {
  if (n < 2 || i < 1 || j < 1 || i > n || j > n || i == j)
    throw Error(Errc::InvalidArgument, "unit pair out of range");
  return canonical_cycle(
      {5 * j - 4, 5 * j - 3, 5 * i - 2, 5 * i - 4, 5 * i - 3, 5 * j - 2});
}

std::vector<int> crossed_mn_c2(int n, int i, int j) {
  if (n < 3 || i < 1 || j < 1 || i > n || j > n || i == j)
    throw Error(Errc::InvalidArgument, "unit pair out of range");
  return canonical_cycle({4 * j - 4, 4 * n + j - 1, 5 * n + i - 1, 4 * i - 3, 4 * i - 4,
                          4 * n + i - 1, 5 * n + j - 1, 4 * j - 3});
}

std::optional<std::vector<int>> find_induced_cycle(const Graph& g, int length) {
  if (length < 3 || length > g.n()) return std::nullopt;
  if (g.n() > 60) throw Error(Errc::BudgetExceeded, "induced-cycle search limited to 60 nodes");
  std::vector<int> path;
  std::vector<char> used(static_cast<size_t>(g.n()), 0);
  // Extends an induced path: each new node adjacent to the last only; the
  // final node must additionally close back to the start.
  auto extend = [&](auto&& self) -> bool {
    if (static_cast<int>(path.size()) == length)
      return g.adjacent(path.back(), path.front());
    int last = path.back();
    for (int w : g.neighbors(last)) {
      if (used[static_cast<size_t>(w)] || w < path.front()) continue;
      bool chord = false;
      size_t limit = path.size() - 1;
      for (size_t t = 0; t < limit && !chord; ++t) {
        if (t == 0 && static_cast<int>(path.size()) == length - 1) continue;  // closing edge
        if (g.adjacent(w, path[t])) chord = true;
      }
      if (chord) continue;
      if (static_cast<int>(path.size()) == length - 1 && path.size() > 1 && w < path[1])
        continue;  // direction dedupe: second node smaller than last
      path.push_back(w);
      used[static_cast<size_t>(w)] = 1;
      if (self(self)) return true;
      used[static_cast<size_t>(w)] = 0;
      path.pop_back();
    }
    return false;
  };
  for (int s = 0; s < g.n(); ++s) {
    path = {s};
    std::fill(used.begin(), used.end(), 0);
    used[static_cast<size_t>(s)] = 1;
    if (extend(extend)) return path;
  }
  return std::nullopt;
}

namespace {

bool is_induced_cycle(const Graph& g, const std::vector<int>& c) {
  size_t L = c.size();
  if (L < 3) return false;
  std::set<int> distinct(c.begin(), c.end());
  if (distinct.size() != L) return false;
  for (int v : c)
    if (v < 0 || v >= g.n()) return false;
  for (size_t s = 0; s < L; ++s)
    for (size_t t = s + 1; t < L; ++t) {
      bool consecutive = t == s + 1 || (s == 0 && t == L - 1);
      if (g.adjacent(c[s], c[t]) != consecutive) return false;
    }
  return true;
}

}  // namespace

TwoCycleCheck two_cycle_witness(const Graph& g, const std::vector<int>& c1,
                                const std::vector<int>& c2) {
  if (!is_induced_cycle(g, c1)) return {false, "c1-not-induced-cycle"};
  if (!is_induced_cycle(g, c2)) return {false, "c2-not-induced-cycle"};
  std::set<int> s1(c1.begin(), c1.end()), s2(c2.begin(), c2.end());
  std::vector<int> both;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(both));
  if (both.size() < 4) return {false, "intersection-too-small"};
  if (s1.size() - both.size() < 2 || s2.size() - both.size() < 2)
    return {false, "difference-too-small"};
  return {true, {}};
}

}  // namespace gisim
