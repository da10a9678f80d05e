#include "gisim/models.hpp"

#include <algorithm>
#include <numeric>

#include "gisim/error.hpp"

namespace gisim {

const char* class_name(ClassTag cls) {
  switch (cls) {
    case ClassTag::Permutation: return "permutation";
    case ClassTag::Trapezoid: return "trapezoid";
    case ClassTag::Circle: return "circle";
    case ClassTag::Polygon: return "polygon";
  }
  return "?";
}

ClassTag model_class(const GeometricModel& m) {
  switch (m.index()) {
    case 0: return ClassTag::Permutation;
    case 1: return ClassTag::Trapezoid;
    case 2: return ClassTag::Circle;
    default: return ClassTag::Polygon;
  }
}

int model_size(const GeometricModel& m) {
  return std::visit(
      [](const auto& mm) -> int {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, PermutationModel>)
          return static_cast<int>(mm.l1.size());
        else if constexpr (std::is_same_v<T, PolygonModel>)
          return static_cast<int>(mm.vertices.size());
        else
          return static_cast<int>(mm.entries.size());
      },
      m);
}

bool is_inversion(int l1u, int l2u, int l1v, int l2v) {
  return (static_cast<long long>(l1u) - l1v) * (static_cast<long long>(l2u) - l2v) < 0;
}

bool trapezoids_intersect(const TrapezoidModel::Entry& u, const TrapezoidModel::Entry& v) {
  bool u_left = u.t2 < v.t1 && u.b2 < v.b1;
  bool v_left = v.t2 < u.t1 && v.b2 < u.b1;
  return !(u_left || v_left);
}

bool chords_cross(const ChordModel::Entry& u, const ChordModel::Entry& v) {
  return (u.m < v.m && v.m < u.M && u.M < v.M) || (v.m < u.m && u.m < v.M && v.M < u.M);
}

namespace {

// True iff all of pv lies strictly inside one circular gap of pu.
bool separated_from(const std::vector<int>& pu, const std::vector<int>& pv) {
  size_t k = pu.size();
  for (size_t i = 0; i < k; ++i) {
    int a = pu[i];
    int b = pu[(i + 1) % k];
    bool all_inside = true;
    for (int q : pv) {
      bool inside = (i + 1 < k) ? (a < q && q < b) : (q > a || q < b);
      if (!inside) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) return true;
  }
  return false;
}

}  // namespace

bool polygons_intersect(const std::vector<int>& pu, const std::vector<int>& pv) {
  return !separated_from(pu, pv);
}

bool model_pair_predicate(const GeometricModel& m, int u, int v) {
  return std::visit(
      [&](const auto& mm) -> bool {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, PermutationModel>)
          return is_inversion(mm.l1[u], mm.l2[u], mm.l1[v], mm.l2[v]);
        else if constexpr (std::is_same_v<T, TrapezoidModel>)
          return trapezoids_intersect(mm.entries[u], mm.entries[v]);
        else if constexpr (std::is_same_v<T, ChordModel>)
          return chords_cross(mm.entries[u], mm.entries[v]);
        else
          return polygons_intersect(mm.vertices[u], mm.vertices[v]);
      },
      m);
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw Error(Errc::InvalidArgument, msg);
}

// Each value in 0..total-1 must appear exactly once across all lists.
void check_coverage(const std::vector<int>& values, int total, const char* what) {
  require(static_cast<int>(values.size()) == total, what);
  std::vector<char> seen(static_cast<size_t>(total), 0);
  for (int x : values) {
    require(x >= 0 && x < total, what);
    require(!seen[static_cast<size_t>(x)], what);
    seen[static_cast<size_t>(x)] = 1;
  }
}

}  // namespace

void validate_model(const GeometricModel& m) {
  int n = model_size(m);
  require(n >= 1, "empty model");
  std::visit(
      [&](const auto& mm) {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, PermutationModel>) {
          require(mm.l1.size() == mm.l2.size(), "label vectors differ in length");
          check_coverage(mm.l1, n, "top labels must be a bijection onto 0..n-1");
          check_coverage(mm.l2, n, "bottom labels must be a bijection onto 0..n-1");
        } else if constexpr (std::is_same_v<T, TrapezoidModel>) {
          std::vector<int> top, bottom;
          for (const auto& e : mm.entries) {
            require(e.t1 < e.t2, "top interval must be increasing");
            require(e.b1 < e.b2, "bottom interval must be increasing");
            top.push_back(e.t1);
            top.push_back(e.t2);
            bottom.push_back(e.b1);
            bottom.push_back(e.b2);
          }
          check_coverage(top, 2 * n, "top coordinates must cover 0..2n-1");
          check_coverage(bottom, 2 * n, "bottom coordinates must cover 0..2n-1");
        } else if constexpr (std::is_same_v<T, ChordModel>) {
          std::vector<int> ends;
          for (const auto& e : mm.entries) {
            require(e.m < e.M, "chord endpoints must be increasing");
            ends.push_back(e.m);
            ends.push_back(e.M);
          }
          check_coverage(ends, 2 * n, "chord endpoints must cover 0..2n-1");
        } else {
          require(mm.k >= 2, "polygons need at least two vertices");
          std::vector<int> verts;
          for (const auto& p : mm.vertices) {
            require(static_cast<int>(p.size()) == mm.k, "polygon vertex count mismatch");
            for (size_t i = 0; i + 1 < p.size(); ++i)
              require(p[i] < p[i + 1], "polygon vertices must be sorted and distinct");
            verts.insert(verts.end(), p.begin(), p.end());
          }
          check_coverage(verts, mm.k * n, "polygon vertices must cover 0..kn-1");
        }
      },
      m);
}

Graph model_induced_graph(const GeometricModel& m, std::vector<uint64_t> ids) {
  validate_model(m);
  int n = model_size(m);
  if (ids.empty()) {
    ids.resize(static_cast<size_t>(n));
    std::iota(ids.begin(), ids.end(), 1ull);
  }
  if (static_cast<int>(ids.size()) != n)
    throw Error(Errc::NodeSetMismatch, "id list does not match model size");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (model_pair_predicate(m, u, v)) edges.push_back({u, v});
  if (!is_connected_edge_list(n, edges))
    throw Error(Errc::DisconnectedResult, "model induces a disconnected graph");
  return Graph(std::move(ids), std::move(edges));
}

Properness is_proper_model(const Graph& g, const GeometricModel& m) {
  validate_model(m);
  if (model_size(m) != g.n())
    throw Error(Errc::NodeSetMismatch, "model size does not match graph");
  bool extra_intersection = false;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      bool pred = model_pair_predicate(m, u, v);
      bool edge = g.adjacent(u, v);
      if (edge && !pred) return Properness::NotSemiProper;
      if (!edge && pred) extra_intersection = true;
    }
  return extra_intersection ? Properness::SemiProperOnly : Properness::Proper;
}

}  // namespace gisim
