#include "gisim/generate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gisim/error.hpp"
#include "gisim/rng.hpp"

namespace gisim {

namespace {

std::vector<int> random_coords(Rng& rng, int total) {
  std::vector<int> coords(static_cast<size_t>(total));
  std::iota(coords.begin(), coords.end(), 0);
  rng.shuffle(coords);
  return coords;
}

GeometricModel draw_model(ClassTag cls, int n, int k, Rng& rng) {
  switch (cls) {
    case ClassTag::Permutation: {
      // Top labels are the node order itself; only the bottom order is drawn.
      PermutationModel m;
      m.l1.resize(static_cast<size_t>(n));
      std::iota(m.l1.begin(), m.l1.end(), 0);
      m.l2 = m.l1;
      rng.shuffle(m.l2);
      return m;
    }
    case ClassTag::Trapezoid: {
      TrapezoidModel m;
      auto top = random_coords(rng, 2 * n);
      auto bottom = random_coords(rng, 2 * n);
      for (int v = 0; v < n; ++v) {
        int t1 = top[static_cast<size_t>(2 * v)], t2 = top[static_cast<size_t>(2 * v + 1)];
        int b1 = bottom[static_cast<size_t>(2 * v)], b2 = bottom[static_cast<size_t>(2 * v + 1)];
        if (t1 > t2) std::swap(t1, t2);
        if (b1 > b2) std::swap(b1, b2);
        m.entries.push_back({t1, t2, b1, b2});
      }
      return m;
    }
    case ClassTag::Circle: {
      ChordModel m;
      auto ends = random_coords(rng, 2 * n);
      for (int v = 0; v < n; ++v) {
        int a = ends[static_cast<size_t>(2 * v)], b = ends[static_cast<size_t>(2 * v + 1)];
        if (a > b) std::swap(a, b);
        m.entries.push_back({a, b});
      }
      return m;
    }
    case ClassTag::Polygon: {
      PolygonModel m;
      m.k = k;
      auto verts = random_coords(rng, k * n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> p(verts.begin() + static_cast<long>(v) * k,
                           verts.begin() + static_cast<long>(v + 1) * k);
        std::sort(p.begin(), p.end());
        m.vertices.push_back(std::move(p));
      }
      return m;
    }
  }
  throw Error(Errc::InvalidArgument, "unknown class");
}

std::vector<uint64_t> draw_ids(Rng& rng, int n) {
  // Injective draw from 1..2n-1 keeps identifier width within one bit of
  // the minimum for n nodes.
  std::vector<uint64_t> pool(static_cast<size_t>(2 * n - 1));
  std::iota(pool.begin(), pool.end(), 1ull);
  rng.shuffle(pool);
  pool.resize(static_cast<size_t>(n));
  return pool;
}

}  // namespace

Instance generate(ClassTag cls, int n, int k, uint64_t seed) {
  if (n < 2) throw Error(Errc::InvalidArgument, "need n >= 2");
  if (cls == ClassTag::Polygon && k < 2)
    throw Error(Errc::InvalidArgument, "polygon class needs k >= 2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GeometricModel m = draw_model(cls, n, k, rng);
    int edge_count = 0;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (model_pair_predicate(m, u, v)) {
          edges.push_back({u, v});
          ++edge_count;
        }
    (void)edge_count;
    if (!is_connected_edge_list(n, edges)) continue;
    return Instance{Graph(draw_ids(rng, n), std::move(edges)), std::move(m)};
  }
  throw Error(Errc::GenerationFailed,
              "no connected draw after 1000 attempts (class " +
                  std::string(class_name(cls)) + ", n " + std::to_string(n) +
                  ", seed " + std::to_string(seed) + ")");
}

}  // namespace gisim
