#include "gisim/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gisim/error.hpp"

namespace gisim {

namespace {

// ---- permutation ----------------------------------------------------------
//
// In any Proper model the bottom label is forced: l2 = l1 + (#neighbors with
// larger l1) - (#neighbors with smaller l1). Enumerating top labels alone is
// therefore a complete search.

std::optional<PermutationModel> forced_l2(const Graph& g, const std::vector<int>& l1) {
  int n = g.n();
  PermutationModel m;
  m.l1 = l1;
  m.l2.assign(static_cast<size_t>(n), 0);
  std::vector<char> used(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    int up = 0, down = 0;
    for (int u : g.neighbors(v)) (l1[static_cast<size_t>(u)] > l1[static_cast<size_t>(v)] ? up : down)++;
    int l2 = l1[static_cast<size_t>(v)] + up - down;
    if (l2 < 0 || l2 >= n || used[static_cast<size_t>(l2)]) return std::nullopt;
    used[static_cast<size_t>(l2)] = 1;
    m.l2[static_cast<size_t>(v)] = l2;
  }
  return m;
}

bool proper_for(const Graph& g, const GeometricModel& m) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (model_pair_predicate(m, u, v) != g.adjacent(u, v)) return false;
  return true;
}

std::optional<GeometricModel> search_permutation(const Graph& g) {
  int n = g.n();
  std::vector<int> l1(static_cast<size_t>(n));
  std::iota(l1.begin(), l1.end(), 0);
  do {
    auto m = forced_l2(g, l1);
    if (m && proper_for(g, GeometricModel{*m})) return GeometricModel{*m};
  } while (std::next_permutation(l1.begin(), l1.end()));
  return std::nullopt;
}

// ---- slot assignment enumerator (circle / polygon) -------------------------
//
// Assigns positions 0..slots-1 in increasing order to nodes with remaining
// capacity; every division of positions into per-node sorted lists is visited
// exactly once, in lexicographic order of the ownership sequence.

struct SlotSearch {
  const Graph& g;
  int k;
  bool semi_only;  // search for SemiProperOnly instead of Proper
  std::function<bool(const std::vector<int>&, const std::vector<int>&)> meet;
  std::vector<std::vector<int>> lists;

  bool pair_ok(int done, int other) const {
    bool pred = meet(lists[static_cast<size_t>(done)], lists[static_cast<size_t>(other)]);
    bool edge = g.adjacent(done, other);
    if (semi_only) return !(edge && !pred);  // edges must intersect
    return pred == edge;
  }

  bool extra_intersection() const {
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v)
        if (!g.adjacent(u, v) && meet(lists[static_cast<size_t>(u)], lists[static_cast<size_t>(v)]))
          return true;
    return false;
  }

  bool place(int pos, int slots) {
    if (pos == slots) return !semi_only || extra_intersection();
    for (int v = 0; v < g.n(); ++v) {
      auto& lv = lists[static_cast<size_t>(v)];
      if (static_cast<int>(lv.size()) == k) continue;
      lv.push_back(pos);
      bool ok = true;
      if (static_cast<int>(lv.size()) == k)
        for (int u = 0; u < g.n() && ok; ++u)
          if (u != v && static_cast<int>(lists[static_cast<size_t>(u)].size()) == k)
            ok = pair_ok(v, u);
      if (ok && place(pos + 1, slots)) return true;
      lv.pop_back();
    }
    return false;
  }
};

std::optional<std::vector<std::vector<int>>> search_slots(
    const Graph& g, int k, bool semi_only,
    std::function<bool(const std::vector<int>&, const std::vector<int>&)> meet) {
  SlotSearch s{g, k, semi_only, std::move(meet), {}};
  s.lists.assign(static_cast<size_t>(g.n()), {});
  if (s.place(0, k * g.n())) return s.lists;
  return std::nullopt;
}

bool lists_cross(const std::vector<int>& a, const std::vector<int>& b) {
  return chords_cross({a[0], a[1]}, {b[0], b[1]});
}

// ---- trapezoid two-stage backtracking --------------------------------------
//
// Stage 1 fixes the top intervals: completed non-adjacent pairs must be
// disjoint on the top line (otherwise they would intersect regardless of the
// bottom). Stage 2 fixes the bottom intervals under the direction constraints
// the top stage induced.

struct TrapSearch {
  const Graph& g;
  bool semi_only;
  std::vector<std::pair<int, int>> top, bottom;  // (-1,-1) while unassigned

  bool top_pair_ok(int v, int u) const {
    auto [vt1, vt2] = top[static_cast<size_t>(v)];
    auto [ut1, ut2] = top[static_cast<size_t>(u)];
    bool disjoint = vt2 < ut1 || ut2 < vt1;
    if (semi_only) return true;  // only edges constrain, and only via the bottom
    if (!g.adjacent(u, v)) return disjoint;
    return true;
  }

  bool bottom_pair_ok(int v, int u) const {
    auto [vt1, vt2] = top[static_cast<size_t>(v)];
    auto [ut1, ut2] = top[static_cast<size_t>(u)];
    auto [vb1, vb2] = bottom[static_cast<size_t>(v)];
    auto [ub1, ub2] = bottom[static_cast<size_t>(u)];
    bool edge = g.adjacent(u, v);
    bool v_top_left = vt2 < ut1, u_top_left = ut2 < vt1;
    if (edge) {
      if (v_top_left) return !(vb2 < ub1);
      if (u_top_left) return !(ub2 < vb1);
      return true;  // tops overlap: intersection already certain
    }
    if (semi_only) return true;
    // Non-edge with stage-1-guaranteed disjoint tops: same direction below.
    if (v_top_left) return vb2 < ub1;
    return ub2 < vb1;
  }

  bool extra_intersection() const {
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) {
        if (g.adjacent(u, v)) continue;
        TrapezoidModel::Entry eu{top[static_cast<size_t>(u)].first, top[static_cast<size_t>(u)].second,
                                 bottom[static_cast<size_t>(u)].first, bottom[static_cast<size_t>(u)].second};
        TrapezoidModel::Entry ev{top[static_cast<size_t>(v)].first, top[static_cast<size_t>(v)].second,
                                 bottom[static_cast<size_t>(v)].first, bottom[static_cast<size_t>(v)].second};
        if (trapezoids_intersect(eu, ev)) return true;
      }
    return false;
  }

  bool place(std::vector<std::pair<int, int>>& line, int pos, bool is_top) {
    int n = g.n();
    if (pos == 2 * n) {
      if (is_top) {
        bottom.assign(static_cast<size_t>(n), {-1, -1});
        return place(bottom, 0, false);
      }
      return !semi_only || extra_intersection();
    }
    for (int v = 0; v < n; ++v) {
      auto& pv = line[static_cast<size_t>(v)];
      if (pv.first < 0) {
        pv.first = pos;
        if (place(line, pos + 1, is_top)) return true;
        pv.first = -1;
      } else if (pv.second < 0) {
        pv.second = pos;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
          if (u != v && line[static_cast<size_t>(u)].second >= 0)
            ok = is_top ? top_pair_ok(v, u) : bottom_pair_ok(v, u);
        if (ok && place(line, pos + 1, is_top)) return true;
        pv.second = -1;
      }
    }
    return false;
  }

  std::optional<TrapezoidModel> run() {
    top.assign(static_cast<size_t>(g.n()), {-1, -1});
    if (!place(top, 0, true)) return std::nullopt;
    TrapezoidModel m;
    for (int v = 0; v < g.n(); ++v)
      m.entries.push_back({top[static_cast<size_t>(v)].first, top[static_cast<size_t>(v)].second,
                           bottom[static_cast<size_t>(v)].first, bottom[static_cast<size_t>(v)].second});
    return m;
  }
};

std::optional<GeometricModel> search_permutation_semi(const Graph& g) {
  int n = g.n();
  std::vector<int> l1(static_cast<size_t>(n)), l2(static_cast<size_t>(n));
  std::iota(l1.begin(), l1.end(), 0);
  do {
    std::iota(l2.begin(), l2.end(), 0);
    do {
      PermutationModel m{l1, l2};
      GeometricModel gm{m};
      bool semi = true, extra = false;
      for (int u = 0; u < n && semi; ++u)
        for (int v = u + 1; v < n && semi; ++v) {
          bool pred = model_pair_predicate(gm, u, v);
          bool edge = g.adjacent(u, v);
          if (edge && !pred) semi = false;
          if (!edge && pred) extra = true;
        }
      if (semi && extra) return gm;
    } while (std::next_permutation(l2.begin(), l2.end()));
  } while (std::next_permutation(l1.begin(), l1.end()));
  return std::nullopt;
}

void check_polygon_k(int k) {
  if (k < 2) throw Error(Errc::InvalidArgument, "polygon class needs k >= 2");
}

}  // namespace

std::optional<GeometricModel> brute_force_model(const Graph& g, ClassTag cls, int k) {
  int n = g.n();
  switch (cls) {
    case ClassTag::Permutation:
      if (n > OracleBudget::permutation)
        throw Error(Errc::BudgetExceeded, "permutation search limited to n <= 8");
      return search_permutation(g);
    case ClassTag::Trapezoid: {
      if (n > OracleBudget::trapezoid)
        throw Error(Errc::BudgetExceeded, "trapezoid search limited to n <= 6");
      TrapSearch s{g, false, {}, {}};
      auto m = s.run();
      if (!m) return std::nullopt;
      return GeometricModel{*m};
    }
    case ClassTag::Circle: {
      if (n > OracleBudget::circle)
        throw Error(Errc::BudgetExceeded, "circle search limited to n <= 5");
      auto lists = search_slots(g, 2, false, lists_cross);
      if (!lists) return std::nullopt;
      ChordModel m;
      for (auto& l : *lists) m.entries.push_back({l[0], l[1]});
      return GeometricModel{m};
    }
    case ClassTag::Polygon: {
      check_polygon_k(k);
      if (k * n > OracleBudget::polygon_slots)
        throw Error(Errc::BudgetExceeded, "polygon search limited to k*n <= 10");
      auto lists = search_slots(g, k, false, polygons_intersect);
      if (!lists) return std::nullopt;
      return GeometricModel{PolygonModel{k, *lists}};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown class");
}

GeometricModel closed_form_semi_proper(const Graph& g, ClassTag cls, int k) {
  int n = g.n();
  switch (cls) {
    case ClassTag::Permutation: {
      // Reversal: every pair is an inversion.
      PermutationModel m;
      m.l1.resize(static_cast<size_t>(n));
      std::iota(m.l1.begin(), m.l1.end(), 0);
      for (int v = 0; v < n; ++v) m.l2.push_back(n - 1 - v);
      return m;
    }
    case ClassTag::Trapezoid: {
      // All intervals overlap pairwise on both lines.
      TrapezoidModel m;
      for (int v = 0; v < n; ++v) m.entries.push_back({v, v + n, v, v + n});
      return m;
    }
    case ClassTag::Circle: {
      // Fan of mutually crossing chords.
      ChordModel m;
      for (int v = 0; v < n; ++v) m.entries.push_back({v, v + n});
      return m;
    }
    case ClassTag::Polygon: {
      check_polygon_k(k);
      PolygonModel m;
      m.k = k;
      for (int v = 0; v < n; ++v) {
        std::vector<int> p;
        for (int i = 0; i < k; ++i) p.push_back(i * n + v);
        m.vertices.push_back(std::move(p));
      }
      return m;
    }
  }
  throw Error(Errc::InvalidArgument, "unknown class");
}

GeometricModel find_semi_proper_model(const Graph& g, ClassTag cls, int k) {
  return closed_form_semi_proper(g, cls, k);
}

std::optional<GeometricModel> first_semi_proper_only(const Graph& g, ClassTag cls, int k) {
  int n = g.n();
  switch (cls) {
    case ClassTag::Permutation:
      if (n > OracleBudget::permutation_semi)
        throw Error(Errc::BudgetExceeded, "semi-proper permutation search limited to n <= 6");
      return search_permutation_semi(g);
    case ClassTag::Trapezoid: {
      if (n > OracleBudget::trapezoid_semi)
        throw Error(Errc::BudgetExceeded, "semi-proper trapezoid search limited to n <= 4");
      TrapSearch s{g, true, {}, {}};
      auto m = s.run();
      if (!m) return std::nullopt;
      return GeometricModel{*m};
    }
    case ClassTag::Circle: {
      if (n > OracleBudget::circle)
        throw Error(Errc::BudgetExceeded, "circle search limited to n <= 5");
      auto lists = search_slots(g, 2, true, lists_cross);
      if (!lists) return std::nullopt;
      ChordModel m;
      for (auto& l : *lists) m.entries.push_back({l[0], l[1]});
      return GeometricModel{m};
    }
    case ClassTag::Polygon: {
      check_polygon_k(k);
      if (k * n > OracleBudget::polygon_slots)
        throw Error(Errc::BudgetExceeded, "polygon search limited to k*n <= 10");
      auto lists = search_slots(g, k, true, polygons_intersect);
      if (!lists) return std::nullopt;
      return GeometricModel{PolygonModel{k, *lists}};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown class");
}

}  // namespace gisim
