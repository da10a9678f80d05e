#include "gisim/recognizers.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>

#include "gisim/error.hpp"
#include "gisim/oracle.hpp"

namespace gisim {

namespace {

uint64_t uv(int x) { return static_cast<uint64_t>(x); }

// Rank of each entry among distinct values (rank = number of smaller values).
std::vector<int> dense_ranks(const std::vector<int>& vals) {
  std::vector<int> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return vals[static_cast<size_t>(a)] < vals[static_cast<size_t>(b)];
  });
  std::vector<int> rank(vals.size());
  for (size_t i = 0; i < order.size(); ++i) rank[static_cast<size_t>(order[i])] = static_cast<int>(i);
  return rank;
}

// Smallest value above `lo` and below `limit` that is not in sorted
// `excluded`; returns `limit` as the sentinel when the range is exhausted.
uint64_t min_excluded(uint64_t lo, uint64_t limit, const std::vector<uint64_t>& excluded) {
  uint64_t j = lo + 1;
  while (j < limit && std::binary_search(excluded.begin(), excluded.end(), j)) ++j;
  return j < limit ? j : limit;
}

void merge_into(CertMap& base, CertMap extra) {
  for (auto& [v, stack] : extra)
    for (auto& r : stack.records) base[v].records.push_back(std::move(r));
}

std::optional<uint64_t> nb1(const NeighborMsg& nb, std::string_view tag, std::string_view name) {
  if (!nb.round1) return std::nullopt;
  return get_value(*nb.round1, tag, name);
}

// ---- certificate construction ----------------------------------------------

CertMap perm_round1(const Graph& g, const PermutationModel& m, int claimed) {
  int n = g.n();
  TreeCerts tree = tree_size_certs(g, claimed);
  CertMap certs = std::move(tree.certs);
  int lw = bit_width_for(uv(claimed - 1));
  int pw = bit_width_for(uv(claimed));
  for (int v = 0; v < n; ++v) {
    std::vector<uint64_t> img1, img2;
    for (int u : g.neighbors(v)) {
      img1.push_back(uv(m.l1[static_cast<size_t>(u)]));
      img2.push_back(uv(m.l2[static_cast<size_t>(u)]));
    }
    std::sort(img1.begin(), img1.end());
    std::sort(img2.begin(), img2.end());
    uint64_t p = min_excluded(uv(m.l1[static_cast<size_t>(v)]), uv(claimed), img1);
    uint64_t q = min_excluded(uv(m.l2[static_cast<size_t>(v)]), uv(claimed), img2);
    certs[v].records.push_back(CertRecord{"perm",
                                          {{"l1", uv(m.l1[static_cast<size_t>(v)]), lw},
                                           {"l2", uv(m.l2[static_cast<size_t>(v)]), lw},
                                           {"p", p, pw},
                                           {"q", q, pw}}});
  }
  auto extremes = [&](const std::vector<int>& lab) {
    int s = 0, t = 0;
    for (int v = 1; v < n; ++v) {
      if (lab[static_cast<size_t>(v)] < lab[static_cast<size_t>(s)]) s = v;
      if (lab[static_cast<size_t>(v)] > lab[static_cast<size_t>(t)]) t = v;
    }
    return std::pair<int, int>{s, t};
  };
  auto [s1, t1] = extremes(m.l1);
  merge_into(certs, path_certs(g, bfs_path(g, s1, t1), "path1", claimed));
  auto [s2, t2] = extremes(m.l2);
  merge_into(certs, path_certs(g, bfs_path(g, s2, t2), "path2", claimed));
  return certs;
}

CertMap trap_round1(const Graph& g, const TrapezoidModel& m, int claimed) {
  int n = g.n();
  TreeCerts tree = tree_size_certs(g, claimed);
  CertMap certs = std::move(tree.certs);
  uint64_t two = 2 * uv(claimed);
  int cw = bit_width_for(two - 1);
  int pw = bit_width_for(two);
  for (int v = 0; v < n; ++v) {
    const auto& e = m.entries[static_cast<size_t>(v)];
    std::vector<uint64_t> top{uv(e.t2)}, bottom{uv(e.b2)};
    for (int u : g.neighbors(v)) {
      const auto& f = m.entries[static_cast<size_t>(u)];
      top.push_back(uv(f.t1));
      top.push_back(uv(f.t2));
      bottom.push_back(uv(f.b1));
      bottom.push_back(uv(f.b2));
    }
    std::sort(top.begin(), top.end());
    std::sort(bottom.begin(), bottom.end());
    uint64_t p = min_excluded(uv(e.t1), two, top);
    uint64_t q = min_excluded(uv(e.b1), two, bottom);
    certs[v].records.push_back(CertRecord{"trap",
                                          {{"t1", uv(e.t1), cw},
                                           {"t2", uv(e.t2), cw},
                                           {"b1", uv(e.b1), cw},
                                           {"b2", uv(e.b2), cw},
                                           {"p", p, pw},
                                           {"q", q, pw}}});
  }
  auto extremes = [&](auto lo_of, auto hi_of) {
    int s = 0, t = 0;
    for (int v = 1; v < n; ++v) {
      if (lo_of(m.entries[static_cast<size_t>(v)]) < lo_of(m.entries[static_cast<size_t>(s)])) s = v;
      if (hi_of(m.entries[static_cast<size_t>(v)]) > hi_of(m.entries[static_cast<size_t>(t)])) t = v;
    }
    return std::pair<int, int>{s, t};
  };
  auto [st, tt] = extremes([](const auto& e) { return e.t1; }, [](const auto& e) { return e.t2; });
  merge_into(certs, path_certs(g, bfs_path(g, st, tt), "path-t", claimed));
  auto [sb, tb] = extremes([](const auto& e) { return e.b1; }, [](const auto& e) { return e.b2; });
  merge_into(certs, path_certs(g, bfs_path(g, sb, tb), "path-b", claimed));
  return certs;
}

CertMap chord_round1(const Graph& g, const ChordModel& m, int claimed) {
  int n = g.n();
  TreeCerts tree = tree_size_certs(g, claimed);
  CertMap certs = std::move(tree.certs);
  std::vector<int> ms, Ms;
  for (const auto& e : m.entries) {
    ms.push_back(e.m);
    Ms.push_back(e.M);
  }
  std::vector<int> rm = dense_ranks(ms), rM = dense_ranks(Ms);
  std::vector<int> by_rm(static_cast<size_t>(n)), by_rM(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    by_rm[static_cast<size_t>(rm[static_cast<size_t>(v)])] = v;
    by_rM[static_cast<size_t>(rM[static_cast<size_t>(v)])] = v;
  }
  uint64_t two = 2 * uv(claimed);
  int cw = bit_width_for(two - 1);
  int pw = bit_width_for(uv(claimed) - 1);
  for (int v = 0; v < n; ++v) {
    int succ_m = by_rm[static_cast<size_t>((rm[static_cast<size_t>(v)] + 1) % n)];
    int succ_M = by_rM[static_cast<size_t>((rM[static_cast<size_t>(v)] + 1) % n)];
    certs[v].records.push_back(
        CertRecord{"chord",
                   {{"m", uv(m.entries[static_cast<size_t>(v)].m), cw},
                    {"M", uv(m.entries[static_cast<size_t>(v)].M), cw},
                    {"pi_m", uv(rm[static_cast<size_t>(v)]), pw},
                    {"pi_M", uv(rM[static_cast<size_t>(v)]), pw},
                    {"y_m", uv(m.entries[static_cast<size_t>(succ_m)].m), cw},
                    {"y_M", uv(m.entries[static_cast<size_t>(succ_M)].M), cw}}});
  }
  return certs;
}

CertMap poly_round1(const Graph& g, const PolygonModel& m, int claimed) {
  int n = g.n();
  int k = m.k;
  TreeCerts tree = tree_size_certs(g, claimed);
  CertMap certs = std::move(tree.certs);
  std::vector<int> firsts, lasts;
  for (const auto& p : m.vertices) {
    firsts.push_back(p.front());
    lasts.push_back(p.back());
  }
  std::vector<int> r1 = dense_ranks(firsts), rk = dense_ranks(lasts);
  std::vector<int> by_r1(static_cast<size_t>(n)), by_rk(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    by_r1[static_cast<size_t>(r1[static_cast<size_t>(v)])] = v;
    by_rk[static_cast<size_t>(rk[static_cast<size_t>(v)])] = v;
  }
  // Combined order over all first/last values (2n of them).
  std::vector<int> combined;
  for (int v = 0; v < n; ++v) {
    combined.push_back(firsts[static_cast<size_t>(v)]);
    combined.push_back(lasts[static_cast<size_t>(v)]);
  }
  std::vector<int> crank = dense_ranks(combined);
  std::vector<int> by_crank(combined.size());
  for (size_t i = 0; i < combined.size(); ++i)
    by_crank[static_cast<size_t>(crank[i])] = combined[i];

  uint64_t kc = uv(k) * uv(claimed);
  uint64_t two = 2 * uv(claimed);
  int vw = bit_width_for(kc - 1);
  int pw = bit_width_for(uv(claimed) - 1);
  int sw = bit_width_for(two - 1);
  for (int v = 0; v < n; ++v) {
    std::vector<CertField> fields;
    for (int i = 0; i < k; ++i)
      fields.push_back({"p" + std::to_string(i + 1),
                        uv(m.vertices[static_cast<size_t>(v)][static_cast<size_t>(i)]), vw});
    int sig1 = crank[static_cast<size_t>(2 * v)];
    int sigk = crank[static_cast<size_t>(2 * v + 1)];
    int succ1 = by_r1[static_cast<size_t>((r1[static_cast<size_t>(v)] + 1) % n)];
    int succk = by_rk[static_cast<size_t>((rk[static_cast<size_t>(v)] + 1) % n)];
    fields.push_back({"pi1", uv(r1[static_cast<size_t>(v)]), pw});
    fields.push_back({"pik", uv(rk[static_cast<size_t>(v)]), pw});
    fields.push_back({"sig1", uv(sig1), sw});
    fields.push_back({"sigk", uv(sigk), sw});
    fields.push_back({"yp1", uv(firsts[static_cast<size_t>(succ1)]), vw});
    fields.push_back({"ypk", uv(lasts[static_cast<size_t>(succk)]), vw});
    fields.push_back({"ys1", uv(by_crank[static_cast<size_t>((sig1 + 1) % (2 * n))]), vw});
    fields.push_back({"ysk", uv(by_crank[static_cast<size_t>((sigk + 1) % (2 * n))]), vw});
    certs[v].records.push_back(CertRecord{"poly", std::move(fields)});
  }
  return certs;
}

CertMap class_round1(const Graph& g, const GeometricModel& model, int claimed) {
  return std::visit(
      [&](const auto& mm) -> CertMap {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, PermutationModel>)
          return perm_round1(g, mm, claimed);
        else if constexpr (std::is_same_v<T, TrapezoidModel>)
          return trap_round1(g, mm, claimed);
        else if constexpr (std::is_same_v<T, ChordModel>)
          return chord_round1(g, mm, claimed);
        else
          return poly_round1(g, mm, claimed);
      },
      model);
}

// ---- fingerprint plans -------------------------------------------------------

// Channel factors a node contributes, derived from its first-round records.
// `with_target` additionally fills the root-side reference multiset.
bool circle_plan_factors(const CertificateStack& s, bool with_target, NodeFactors& f) {
  auto c = get_value(s, "tree", "n");
  auto m = get_value(s, "chord", "m");
  auto M = get_value(s, "chord", "M");
  auto pim = get_value(s, "chord", "pi_m");
  auto piM = get_value(s, "chord", "pi_M");
  auto ym = get_value(s, "chord", "y_m");
  auto yM = get_value(s, "chord", "y_M");
  if (!c || !m || !M || !pim || !piM || !ym || !yM) return false;
  uint64_t base = std::max<uint64_t>(*c, 1);
  f.left = {enc_channel(*m, 5, 0),
            enc_channel(*M, 5, 0),
            enc_channel(*pim, 5, 1),
            enc_channel(*piM, 5, 2),
            enc_channel(enc_pair(*m, *pim % base, base), 5, 3),
            enc_channel(enc_pair(*M, *piM % base, base), 5, 4)};
  f.right = {enc_channel(enc_pair(*ym, (*pim + 1) % base, base), 5, 3),
             enc_channel(enc_pair(*yM, (*piM + 1) % base, base), 5, 4)};
  if (with_target) {
    for (uint64_t j = 0; j < 2 * base; ++j) f.target.push_back(enc_channel(j, 5, 0));
    for (uint64_t i = 0; i < base; ++i) f.target.push_back(enc_channel(i, 5, 1));
    for (uint64_t i = 0; i < base; ++i) f.target.push_back(enc_channel(i, 5, 2));
  }
  return true;
}

bool poly_plan_factors(const CertificateStack& s, int k, bool with_target, NodeFactors& f) {
  auto c = get_value(s, "tree", "n");
  if (!c) return false;
  std::vector<uint64_t> p;
  for (int i = 0; i < k; ++i) {
    auto x = get_value(s, "poly", "p" + std::to_string(i + 1));
    if (!x) return false;
    p.push_back(*x);
  }
  auto pi1 = get_value(s, "poly", "pi1");
  auto pik = get_value(s, "poly", "pik");
  auto sig1 = get_value(s, "poly", "sig1");
  auto sigk = get_value(s, "poly", "sigk");
  auto yp1 = get_value(s, "poly", "yp1");
  auto ypk = get_value(s, "poly", "ypk");
  auto ys1 = get_value(s, "poly", "ys1");
  auto ysk = get_value(s, "poly", "ysk");
  if (!pi1 || !pik || !sig1 || !sigk || !yp1 || !ypk || !ys1 || !ysk) return false;
  uint64_t base = std::max<uint64_t>(*c, 1);
  uint64_t two = 2 * base;
  f.left.clear();
  for (uint64_t x : p) f.left.push_back(enc_channel(x, 7, 0));
  f.left.push_back(enc_channel(*pi1, 7, 1));
  f.left.push_back(enc_channel(*pik, 7, 2));
  f.left.push_back(enc_channel(enc_pair(p.front(), *pi1 % base, base), 7, 3));
  f.left.push_back(enc_channel(enc_pair(p.back(), *pik % base, base), 7, 4));
  f.left.push_back(enc_channel(*sig1, 7, 5));
  f.left.push_back(enc_channel(*sigk, 7, 5));
  f.left.push_back(enc_channel(enc_pair(p.front(), *sig1 % two, two), 7, 6));
  f.left.push_back(enc_channel(enc_pair(p.back(), *sigk % two, two), 7, 6));
  f.right = {enc_channel(enc_pair(*yp1, (*pi1 + 1) % base, base), 7, 3),
             enc_channel(enc_pair(*ypk, (*pik + 1) % base, base), 7, 4),
             enc_channel(enc_pair(*ys1, (*sig1 + 1) % two, two), 7, 6),
             enc_channel(enc_pair(*ysk, (*sigk + 1) % two, two), 7, 6)};
  if (with_target) {
    for (uint64_t j = 0; j < uv(k) * base; ++j) f.target.push_back(enc_channel(j, 7, 0));
    for (uint64_t i = 0; i < base; ++i) f.target.push_back(enc_channel(i, 7, 1));
    for (uint64_t i = 0; i < base; ++i) f.target.push_back(enc_channel(i, 7, 2));
    for (uint64_t j = 0; j < two; ++j) f.target.push_back(enc_channel(j, 7, 5));
  }
  return true;
}

// Second-round aggregation computed from whatever the first round says, so
// tampered first rounds still get internally-consistent partial products.
CertMap fp_from_round1(const Graph& g, const CertMap& r1, ClassTag cls, int k,
                       const SharedRandomness& rnd) {
  int n = g.n();
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<NodeFactors> factors(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto it = r1.find(v);
    if (it == r1.end()) continue;
    const CertificateStack& s = it->second;
    auto hp = get_value(s, "tree", "has_parent");
    auto pid = get_value(s, "tree", "parent_id");
    if (hp && pid && *hp) {
      int pix = g.index_of_id(*pid);
      if (pix >= 0) parent[static_cast<size_t>(v)] = pix;
    }
    NodeFactors f;
    bool ok = cls == ClassTag::Circle ? circle_plan_factors(s, false, f)
                                      : poly_plan_factors(s, k, false, f);
    if (ok) factors[static_cast<size_t>(v)] = std::move(f);
  }
  return fp_round2(g, parent, factors, F61(rnd.field_point));
}

// ---- verifiers ---------------------------------------------------------------

OwnPred holder(const char* tag, const char* field, uint64_t want) {
  std::string t = tag, f = field;
  return [t, f, want](const NodeView& nv) {
    if (!nv.own1) return false;
    auto x = get_value(*nv.own1, t, f);
    return x && *x == want;
  };
}

Verdict perm_verify(const NodeView& view) {
  Verdict t = tree_verify(view);
  if (!t.accept) return Verdict::fail("a:" + t.reason);
  uint64_t claimed = *get_value(*view.own1, "tree", "n");
  auto l1 = get_value(*view.own1, "perm", "l1");
  auto l2 = get_value(*view.own1, "perm", "l2");
  auto p = get_value(*view.own1, "perm", "p");
  auto q = get_value(*view.own1, "perm", "q");
  if (!l1 || !l2 || !p || !q) return Verdict::fail("malformed");

  Verdict pv = path_verify(view, "path1", claimed, holder("perm", "l1", 0),
                           holder("perm", "l1", claimed - 1));
  if (!pv.accept) return Verdict::fail("b:" + pv.reason);
  pv = path_verify(view, "path2", claimed, holder("perm", "l2", 0),
                   holder("perm", "l2", claimed - 1));
  if (!pv.accept) return Verdict::fail("b:" + pv.reason);

  if (*l1 >= claimed || *l2 >= claimed) return Verdict::fail("c:range");

  struct Nb {
    uint64_t l1, l2, p, q;
  };
  std::vector<Nb> nbs;
  for (const auto& nb : view.neighbors) {
    auto a = nb1(nb, "perm", "l1");
    auto b = nb1(nb, "perm", "l2");
    auto c = nb1(nb, "perm", "p");
    auto d = nb1(nb, "perm", "q");
    if (!a || !b || !c || !d) return Verdict::fail("malformed");
    if (*a >= claimed || *b >= claimed) return Verdict::fail("d:inversion");
    nbs.push_back({*a, *b, *c, *d});
  }
  for (const auto& nb : nbs)
    if (!is_inversion(static_cast<int>(*l1), static_cast<int>(*l2), static_cast<int>(nb.l1),
                      static_cast<int>(nb.l2)))
      return Verdict::fail("d:inversion");

  std::vector<uint64_t> img1, img2;
  for (const auto& nb : nbs) {
    img1.push_back(nb.l1);
    img2.push_back(nb.l2);
  }
  auto [dplus, dminus] = degree_split(*l1, img1);
  if (static_cast<int64_t>(*l1) + dplus != static_cast<int64_t>(*l2) + dminus)
    return Verdict::fail("e:balance");

  std::sort(img1.begin(), img1.end());
  std::sort(img2.begin(), img2.end());
  if (min_excluded(*l1, claimed, img1) != *p) return Verdict::fail("f:p-check");
  for (const auto& nb : nbs)
    if (nb.l1 < nb.p && nb.p < *l1 && !std::binary_search(img1.begin(), img1.end(), nb.p))
      return Verdict::fail("f:p-witness");
  if (min_excluded(*l2, claimed, img2) != *q) return Verdict::fail("g:q-check");
  for (const auto& nb : nbs)
    if (nb.l2 < nb.q && nb.q < *l2 && !std::binary_search(img2.begin(), img2.end(), nb.q))
      return Verdict::fail("g:q-witness");
  return Verdict::ok();
}

Verdict trap_verify(const NodeView& view) {
  Verdict t = tree_verify(view);
  if (!t.accept) return Verdict::fail("a:" + t.reason);
  uint64_t claimed = *get_value(*view.own1, "tree", "n");
  uint64_t two = 2 * claimed;
  auto t1 = get_value(*view.own1, "trap", "t1");
  auto t2 = get_value(*view.own1, "trap", "t2");
  auto b1 = get_value(*view.own1, "trap", "b1");
  auto b2 = get_value(*view.own1, "trap", "b2");
  auto p = get_value(*view.own1, "trap", "p");
  auto q = get_value(*view.own1, "trap", "q");
  if (!t1 || !t2 || !b1 || !b2 || !p || !q) return Verdict::fail("malformed");

  Verdict pv = path_verify(view, "path-t", claimed, holder("trap", "t1", 0),
                           holder("trap", "t2", two - 1));
  if (!pv.accept) return Verdict::fail("b:" + pv.reason);
  pv = path_verify(view, "path-b", claimed, holder("trap", "b1", 0),
                   holder("trap", "b2", two - 1));
  if (!pv.accept) return Verdict::fail("b:" + pv.reason);

  if (!(*t1 < *t2 && *t2 < two && *b1 < *b2 && *b2 < two)) return Verdict::fail("c:range");

  struct Nb {
    uint64_t t1, t2, b1, b2, p, q;
  };
  std::vector<Nb> nbs;
  for (const auto& nb : view.neighbors) {
    auto a = nb1(nb, "trap", "t1");
    auto b = nb1(nb, "trap", "t2");
    auto c = nb1(nb, "trap", "b1");
    auto d = nb1(nb, "trap", "b2");
    auto e = nb1(nb, "trap", "p");
    auto f = nb1(nb, "trap", "q");
    if (!a || !b || !c || !d || !e || !f) return Verdict::fail("malformed");
    if (*a >= two || *b >= two || *c >= two || *d >= two) return Verdict::fail("d:intersection");
    nbs.push_back({*a, *b, *c, *d, *e, *f});
  }
  TrapezoidModel::Entry own{static_cast<int>(*t1), static_cast<int>(*t2), static_cast<int>(*b1),
                            static_cast<int>(*b2)};
  for (const auto& nb : nbs) {
    TrapezoidModel::Entry other{static_cast<int>(nb.t1), static_cast<int>(nb.t2),
                                static_cast<int>(nb.b1), static_cast<int>(nb.b2)};
    if (!trapezoids_intersect(own, other)) return Verdict::fail("d:intersection");
  }

  // Every value strictly inside the own interval must be a neighbor coordinate.
  auto covered = [](uint64_t lo, uint64_t hi, std::vector<uint64_t> coords) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    uint64_t inside = 0;
    for (uint64_t x : coords)
      if (lo < x && x < hi) ++inside;
    return inside == hi - lo - 1;
  };
  std::vector<uint64_t> tops, bottoms;
  for (const auto& nb : nbs) {
    tops.push_back(nb.t1);
    tops.push_back(nb.t2);
    bottoms.push_back(nb.b1);
    bottoms.push_back(nb.b2);
  }
  if (!covered(*t1, *t2, tops) || !covered(*b1, *b2, bottoms)) return Verdict::fail("e:coverage");

  std::vector<uint64_t> excl_t = tops, excl_b = bottoms;
  excl_t.push_back(*t2);
  excl_b.push_back(*b2);
  std::sort(excl_t.begin(), excl_t.end());
  std::sort(excl_b.begin(), excl_b.end());
  if (min_excluded(*t1, two, excl_t) != *p || !(*t2 < *p)) return Verdict::fail("f:pq-bound");
  if (min_excluded(*b1, two, excl_b) != *q || !(*b2 < *q)) return Verdict::fail("f:pq-bound");

  for (size_t i = 0; i < nbs.size(); ++i) {
    if (nbs[i].p < *t2) {
      bool witness = false;
      for (size_t j = 0; j < nbs.size() && !witness; ++j)
        if (j != i && (nbs[j].t1 == nbs[i].p || nbs[j].t2 == nbs[i].p)) witness = true;
      if (!witness) return Verdict::fail("g:p-witness");
    }
    if (nbs[i].q < *b2) {
      bool witness = false;
      for (size_t j = 0; j < nbs.size() && !witness; ++j)
        if (j != i && (nbs[j].b1 == nbs[i].q || nbs[j].b2 == nbs[i].q)) witness = true;
      if (!witness) return Verdict::fail("h:q-witness");
    }
  }

  auto [ft, fb] = f_counts(*t1, *b1, tops, bottoms);
  if (ft != fb) return Verdict::fail("i:balance");
  return Verdict::ok();
}

Verdict circle_verify(const NodeView& view) {
  Verdict t = tree_verify(view);
  if (!t.accept) return Verdict::fail("tree:" + t.reason);
  uint64_t claimed = *get_value(*view.own1, "tree", "n");
  uint64_t two = 2 * claimed;
  auto m = get_value(*view.own1, "chord", "m");
  auto M = get_value(*view.own1, "chord", "M");
  auto pim = get_value(*view.own1, "chord", "pi_m");
  auto piM = get_value(*view.own1, "chord", "pi_M");
  auto ym = get_value(*view.own1, "chord", "y_m");
  auto yM = get_value(*view.own1, "chord", "y_M");
  if (!m || !M || !pim || !piM || !ym || !yM) return Verdict::fail("malformed");

  if (!(*m < *M && *M < two && *pim < claimed && *piM < claimed && *ym < two && *yM < two))
    return Verdict::fail("range");
  if (*pim + 1 < claimed && !(*m < *ym)) return Verdict::fail("cop:order");
  if (*piM + 1 < claimed && !(*M < *yM)) return Verdict::fail("cop:order");

  struct Nb {
    uint64_t m, M;
  };
  std::vector<Nb> nbs;
  for (const auto& nb : view.neighbors) {
    auto a = nb1(nb, "chord", "m");
    auto b = nb1(nb, "chord", "M");
    if (!a || !b) return Verdict::fail("malformed");
    if (!(*a < *b && *b < two)) return Verdict::fail("a:crossing");
    nbs.push_back({*a, *b});
  }
  ChordModel::Entry own{static_cast<int>(*m), static_cast<int>(*M)};
  for (const auto& nb : nbs)
    if (!chords_cross(own, ChordModel::Entry{static_cast<int>(nb.m), static_cast<int>(nb.M)}))
      return Verdict::fail("a:crossing");

  int64_t n_m = 0, n_M = 0;
  for (const auto& nb : nbs) {
    if (*m <= nb.m && nb.m <= *M) ++n_m;
    if (*m <= nb.M && nb.M <= *M) ++n_M;
  }
  if (2 * (static_cast<int64_t>(*piM) + static_cast<int64_t>(*pim)) !=
      static_cast<int64_t>(*M) + static_cast<int64_t>(*m) - 1 + n_M - n_m)
    return Verdict::fail("b:balance");

  NodeFactors own_factors;
  auto root_id = get_value(*view.own1, "tree", "root_id");
  bool is_root = root_id && *root_id == view.id;
  if (!circle_plan_factors(*view.own1, is_root, own_factors)) return Verdict::fail("fp:malformed");
  return fp_verify(view, own_factors);
}

Verdict poly_verify_k(const NodeView& view, int k) {
  Verdict t = tree_verify(view);
  if (!t.accept) return Verdict::fail("tree:" + t.reason);
  uint64_t claimed = *get_value(*view.own1, "tree", "n");
  uint64_t kc = uv(k) * claimed;
  uint64_t two = 2 * claimed;
  std::vector<uint64_t> p;
  for (int i = 0; i < k; ++i) {
    auto x = get_value(*view.own1, "poly", "p" + std::to_string(i + 1));
    if (!x) return Verdict::fail("malformed");
    p.push_back(*x);
  }
  auto pi1 = get_value(*view.own1, "poly", "pi1");
  auto pik = get_value(*view.own1, "poly", "pik");
  auto sig1 = get_value(*view.own1, "poly", "sig1");
  auto sigk = get_value(*view.own1, "poly", "sigk");
  auto yp1 = get_value(*view.own1, "poly", "yp1");
  auto ypk = get_value(*view.own1, "poly", "ypk");
  auto ys1 = get_value(*view.own1, "poly", "ys1");
  auto ysk = get_value(*view.own1, "poly", "ysk");
  if (!pi1 || !pik || !sig1 || !sigk || !yp1 || !ypk || !ys1 || !ysk)
    return Verdict::fail("malformed");

  for (int i = 0; i + 1 < k; ++i)
    if (!(p[static_cast<size_t>(i)] < p[static_cast<size_t>(i + 1)]))
      return Verdict::fail("range");
  if (!(p.back() < kc && *pi1 < claimed && *pik < claimed && *sig1 < two && *sigk < two &&
        *yp1 < kc && *ypk < kc && *ys1 < kc && *ysk < kc))
    return Verdict::fail("range");
  if (*pi1 + 1 < claimed && !(p.front() < *yp1)) return Verdict::fail("cop:order");
  if (*pik + 1 < claimed && !(p.back() < *ypk)) return Verdict::fail("cop:order");
  if (*sig1 + 1 < two && !(p.front() < *ys1)) return Verdict::fail("cop:order");
  if (*sigk + 1 < two && !(p.back() < *ysk)) return Verdict::fail("cop:order");

  std::vector<std::vector<int>> nb_polys;
  std::vector<uint64_t> nb_p1, nb_vertices;
  for (const auto& nb : view.neighbors) {
    std::vector<int> np;
    for (int i = 0; i < k; ++i) {
      auto x = nb1(nb, "poly", "p" + std::to_string(i + 1));
      if (!x) return Verdict::fail("malformed");
      if (*x >= kc) return Verdict::fail("a:crossing");
      np.push_back(static_cast<int>(*x));
      nb_vertices.push_back(*x);
    }
    for (int i = 0; i + 1 < k; ++i)
      if (!(np[static_cast<size_t>(i)] < np[static_cast<size_t>(i + 1)]))
        return Verdict::fail("a:crossing");
    nb_p1.push_back(static_cast<uint64_t>(np.front()));
    nb_polys.push_back(std::move(np));
  }
  std::vector<int> own_poly;
  for (uint64_t x : p) own_poly.push_back(static_cast<int>(x));
  for (const auto& np : nb_polys)
    if (!polygons_intersect(own_poly, np)) return Verdict::fail("a:crossing");

  auto [alpha, beta1] =
      alpha_beta(p.front(), p.back(), *pi1, *pik, *sigk, nb_vertices, nb_p1, claimed, k);
  if (alpha != static_cast<int64_t>(k) * beta1) return Verdict::fail("b:balance");

  NodeFactors own_factors;
  auto root_id = get_value(*view.own1, "tree", "root_id");
  bool is_root = root_id && *root_id == view.id;
  if (!poly_plan_factors(*view.own1, k, is_root, own_factors)) return Verdict::fail("fp:malformed");
  return fp_verify(view, own_factors);
}

// ---- prover construction -----------------------------------------------------

ProverStrategy wrap_prover(const Graph&, CertMap r1, ClassTag cls, int k, std::string label) {
  auto shared = std::make_shared<const CertMap>(std::move(r1));
  ProverStrategy ps;
  ps.label = std::move(label);
  ps.round1 = [shared](const Graph&) { return *shared; };
  if (cls == ClassTag::Circle || cls == ClassTag::Polygon)
    ps.round2 = [shared, cls, k](const Graph& gg, const SharedRandomness& rnd) {
      return fp_from_round1(gg, *shared, cls, k, rnd);
    };
  return ps;
}

int model_k(const GeometricModel& m) {
  return model_class(m) == ClassTag::Polygon ? std::get<PolygonModel>(m).k : 2;
}

uint64_t field_of(const CertMap& certs, int v, std::string_view tag, std::string_view name) {
  auto it = certs.find(v);
  if (it == certs.end()) throw Error(Errc::UsageError, "node has no certificates");
  auto x = get_value(it->second, tag, name);
  if (!x) throw Error(Errc::UsageError, "certificate field missing");
  return *x;
}

void set_field(CertMap& certs, int v, std::string_view tag, std::string_view name,
               uint64_t value) {
  for (auto& r : certs[v].records)
    if (r.tag == tag)
      for (auto& f : r.fields)
        if (f.name == name) {
          f.value = value;
          return;
        }
  throw Error(Errc::UsageError, "certificate field missing");
}

// A SemiProperOnly model: oracle-found within budget, closed form beyond it.
GeometricModel resolve_semi_only(const Graph& g, ClassTag cls, int k) {
  std::optional<GeometricModel> found;
  bool searched = false;
  try {
    found = first_semi_proper_only(g, cls, k);
    searched = true;
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded) throw;
  }
  if (found) return *found;
  if (searched)
    throw Error(Errc::StrategyInapplicable, "graph admits no semi-proper-only model");
  GeometricModel cf = closed_form_semi_proper(g, cls, k);
  if (is_proper_model(g, cf) != Properness::SemiProperOnly)
    throw Error(Errc::StrategyInapplicable, "graph admits no semi-proper-only model");
  return cf;
}

const char* class_record_tag(ClassTag cls) {
  switch (cls) {
    case ClassTag::Permutation: return "perm";
    case ClassTag::Trapezoid: return "trap";
    case ClassTag::Circle: return "chord";
    case ClassTag::Polygon: return "poly";
  }
  return "?";
}

std::vector<std::string> class_label_fields(ClassTag cls, int k) {
  switch (cls) {
    case ClassTag::Permutation: return {"l1", "l2"};
    case ClassTag::Trapezoid: return {"t1", "t2", "b1", "b2"};
    case ClassTag::Circle: return {"m", "M"};
    case ClassTag::Polygon: {
      std::vector<std::string> out;
      for (int i = 0; i < k; ++i) out.push_back("p" + std::to_string(i + 1));
      return out;
    }
  }
  return {};
}

}  // namespace

std::pair<int64_t, int64_t> degree_split(uint64_t own_l1, const std::vector<uint64_t>& nb_l1) {
  int64_t up = 0, down = 0;
  for (uint64_t x : nb_l1) {
    if (x > own_l1) ++up;
    if (x < own_l1) ++down;
  }
  return {up, down};
}

std::pair<int64_t, int64_t> f_counts(uint64_t t1, uint64_t b1,
                                     const std::vector<uint64_t>& nb_tops,
                                     const std::vector<uint64_t>& nb_bottoms) {
  int64_t below_t = 0, below_b = 0;
  for (uint64_t x : nb_tops)
    if (x < t1) ++below_t;
  for (uint64_t x : nb_bottoms)
    if (x < b1) ++below_b;
  return {static_cast<int64_t>(t1) - below_t, static_cast<int64_t>(b1) - below_b};
}

std::pair<int64_t, int64_t> alpha_beta(uint64_t p1, uint64_t pk, uint64_t pi1, uint64_t pik,
                                       uint64_t sigk, const std::vector<uint64_t>& nb_vertices,
                                       const std::vector<uint64_t>& nb_p1, uint64_t n, int k) {
  int64_t outside = 0;
  for (uint64_t x : nb_vertices)
    if (x < p1 || x > pk) ++outside;
  int64_t alpha = static_cast<int64_t>(uv(k) * n) - static_cast<int64_t>(pk) +
                  static_cast<int64_t>(p1) - 1 - outside;
  int64_t skipped = 0;
  for (uint64_t x : nb_p1)
    if (x < p1 || x > pk) ++skipped;
  int64_t beta1 = static_cast<int64_t>(n) - static_cast<int64_t>(sigk) +
                  static_cast<int64_t>(pi1) + static_cast<int64_t>(pik) - skipped;
  return {alpha, beta1};
}

ProtocolSpec protocol_for(ClassTag cls, int k) {
  ProtocolSpec spec;
  switch (cls) {
    case ClassTag::Permutation:
      spec.name = "permutation-pls";
      spec.schedule = Schedule::dM;
      spec.verify = perm_verify;
      break;
    case ClassTag::Trapezoid:
      spec.name = "trapezoid-pls";
      spec.schedule = Schedule::dM;
      spec.verify = trap_verify;
      break;
    case ClassTag::Circle:
      spec.name = "circle-dmam";
      spec.schedule = Schedule::dMAM;
      spec.verify = circle_verify;
      break;
    case ClassTag::Polygon:
      if (k < 2 || k > 64) throw Error(Errc::InvalidArgument, "polygon order k must be in 2..64");
      spec.name = "polygon-dmam";
      spec.schedule = Schedule::dMAM;
      spec.verify = [k](const NodeView& view) { return poly_verify_k(view, k); };
      break;
  }
  return spec;
}

ProverStrategy honest_prover(const Graph& g, const GeometricModel& model) {
  if (is_proper_model(g, model) != Properness::Proper)
    throw Error(Errc::ModelNotProper, "model does not realize exactly this graph");
  return wrap_prover(g, class_round1(g, model, g.n()), model_class(model), model_k(model),
                     "honest");
}

ProverStrategy shaped_prover(const Graph& g, const GeometricModel& model) {
  validate_model(model);
  if (model_size(model) != g.n())
    throw Error(Errc::NodeSetMismatch, "model size does not match graph");
  return wrap_prover(g, class_round1(g, model, g.n()), model_class(model), model_k(model),
                     "shaped");
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {
      "wrong-n",          "broken-tree",        "broken-path",
      "duplicate-label",  "reverse-semi-proper", "best-semi-proper",
      "bit-flip",         "tampered-aggregate"};
  return names;
}

ProverStrategy adversary(const Graph& g, ClassTag cls, int k, const std::string& strategy,
                         const GeometricModel& base, const AdversaryParams& params) {
  if (model_class(base) != cls)
    throw Error(Errc::InvalidArgument, "base model is for a different class");
  if (cls == ClassTag::Polygon) k = std::get<PolygonModel>(base).k;
  int n = g.n();
  if (model_size(base) != n) throw Error(Errc::NodeSetMismatch, "base model size mismatch");

  CertMap r1;
  if (strategy == "wrong-n") {
    int64_t claimed = static_cast<int64_t>(n) + params.delta;
    if (claimed < 1 || claimed > static_cast<int64_t>(kMaxClaimedN) || claimed == n)
      throw Error(Errc::StrategyInapplicable, "node-count offset out of range");
    r1 = class_round1(g, base, static_cast<int>(claimed));
  } else if (strategy == "broken-tree") {
    r1 = class_round1(g, base, n);
    if (n < 2) throw Error(Errc::StrategyInapplicable, "no non-root node to detach");
    int vmax = 0;
    uint64_t best = 0;
    for (int v = 0; v < n; ++v) {
      uint64_t d = field_of(r1, v, "tree", "dist");
      if (d > best) {
        best = d;
        vmax = v;
      }
    }
    set_field(r1, vmax, "tree", "parent_id", g.id(vmax));
  } else if (strategy == "broken-path") {
    if (cls != ClassTag::Permutation && cls != ClassTag::Trapezoid)
      throw Error(Errc::StrategyInapplicable, "protocol certifies no path");
    r1 = class_round1(g, base, n);
    const char* tag = cls == ClassTag::Permutation ? "path1" : "path-t";
    int cut = -1, length = 0;
    for (int v = 0; v < n; ++v) {
      if (field_of(r1, v, tag, "on_path") == 0) continue;
      ++length;
      if (field_of(r1, v, tag, "pos") == 1) cut = v;
    }
    if (length < 3 || cut < 0)
      throw Error(Errc::StrategyInapplicable, "certified path has no interior node");
    set_field(r1, cut, tag, "has_succ", 0);
    set_field(r1, cut, tag, "succ_id", 0);
  } else if (strategy == "duplicate-label") {
    int du = -1, dv = -1;
    for (int u = 0; u < n && du < 0; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) {
          du = u;
          dv = v;
          break;
        }
    if (du < 0) throw Error(Errc::StrategyInapplicable, "complete graph has no non-adjacent pair");
    r1 = class_round1(g, base, n);
    const char* tag = class_record_tag(cls);
    for (const auto& f : class_label_fields(cls, k))
      set_field(r1, dv, tag, f, field_of(r1, du, tag, f));
  } else if (strategy == "reverse-semi-proper") {
    if (cls != ClassTag::Permutation)
      throw Error(Errc::StrategyInapplicable, "reversal cheat is permutation-specific");
    PermutationModel pm = std::get<PermutationModel>(base);
    for (size_t v = 0; v < pm.l1.size(); ++v) pm.l2[v] = n - 1 - pm.l1[v];
    if (is_proper_model(g, pm) == Properness::Proper)
      throw Error(Errc::StrategyInapplicable, "reversal model is proper (complete graph)");
    r1 = class_round1(g, pm, n);
  } else if (strategy == "best-semi-proper") {
    GeometricModel sm = resolve_semi_only(g, cls, k);
    r1 = class_round1(g, sm, n);
  } else if (strategy == "bit-flip") {
    r1 = class_round1(g, base, n);
    int64_t per_node = 0;
    for (const auto& r : r1[0].records) per_node += static_cast<int64_t>(r.fields.size());
    int64_t want = static_cast<int64_t>(params.bit_position) % (per_node * n);
    if (want < 0) want += per_node * n;
    int v = static_cast<int>(want / per_node);
    int64_t idx = want % per_node;
    bool done = false;
    for (auto& r : r1[v].records) {
      if (done) break;
      for (auto& f : r.fields) {
        if (idx == 0) {
          f.value ^= 1;
          done = true;
          break;
        }
        --idx;
      }
    }
  } else if (strategy == "tampered-aggregate") {
    if (cls != ClassTag::Circle && cls != ClassTag::Polygon)
      throw Error(Errc::StrategyInapplicable, "protocol sends no aggregate round");
    r1 = class_round1(g, base, n);
    if (cls == ClassTag::Circle) {
      for (int v = 0; v < n; ++v)
        if (field_of(r1, v, "chord", "pi_m") == uv(n - 1)) {
          uint64_t y = field_of(r1, v, "chord", "y_m");
          set_field(r1, v, "chord", "y_m", (y + 1) % (2 * uv(n)));
          break;
        }
    } else {
      for (int v = 0; v < n; ++v)
        if (field_of(r1, v, "poly", "sigk") == 2 * uv(n) - 1) {
          uint64_t y = field_of(r1, v, "poly", "ysk");
          set_field(r1, v, "poly", "ysk", (y + 1) % (uv(k) * uv(n)));
          break;
        }
    }
  } else {
    throw Error(Errc::UsageError, "unknown strategy '" + strategy + "'");
  }
  return wrap_prover(g, std::move(r1), cls, k, strategy);
}

bool strategy_applicable(const Graph& g, ClassTag cls, int k, const std::string& strategy,
                         const GeometricModel& base) {
  try {
    adversary(g, cls, k, strategy, base);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::StrategyInapplicable) return false;
    throw;
  }
}

}  // namespace gisim
