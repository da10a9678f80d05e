#include "gisim/blocks.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "gisim/error.hpp"

namespace gisim {

namespace {

int id_width(const Graph& g) {
  uint64_t mx = 0;
  for (uint64_t id : g.ids()) mx = std::max(mx, id);
  return bit_width_for(mx);
}

const NeighborMsg* neighbor_by_id(const NodeView& view, uint64_t id) {
  for (const auto& nb : view.neighbors)
    if (nb.id == id) return &nb;
  return nullptr;
}

std::optional<uint64_t> nb_value(const NeighborMsg& nb, bool round2, std::string_view tag,
                                 std::string_view name) {
  const CertificateStack* s = round2 ? nb.round2 : nb.round1;
  if (!s) return std::nullopt;
  return get_value(*s, tag, name);
}

}  // namespace

// ---- spanning tree ----------------------------------------------------------

TreeCerts tree_size_certs(const Graph& g, int claimed_n) {
  int n = g.n();
  if (claimed_n <= 0) claimed_n = n;
  TreeCerts out;
  out.root = 0;
  for (int v = 1; v < n; ++v)
    if (g.id(v) < g.id(out.root)) out.root = v;
  out.parent = bfs_parents(g, out.root);
  std::vector<int> dist = bfs_dist_from(g, out.root);

  std::vector<uint64_t> count(static_cast<size_t>(n), 1);
  std::vector<int> order(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dist[static_cast<size_t>(a)] > dist[static_cast<size_t>(b)]; });
  for (int v : order)
    if (out.parent[static_cast<size_t>(v)] >= 0)
      count[static_cast<size_t>(out.parent[static_cast<size_t>(v)])] += count[static_cast<size_t>(v)];

  int idw = id_width(g);
  int nw = bit_width_for(static_cast<uint64_t>(claimed_n) - 1);
  int n1w = bit_width_for(static_cast<uint64_t>(claimed_n));
  for (int v = 0; v < n; ++v) {
    bool has_parent = out.parent[static_cast<size_t>(v)] >= 0;
    uint64_t pid = has_parent ? g.id(out.parent[static_cast<size_t>(v)]) : 0;
    CertRecord r{"tree",
                 {{"root_id", g.id(out.root), idw},
                  {"has_parent", has_parent ? 1ull : 0ull, 1},
                  {"parent_id", pid, idw},
                  {"dist", static_cast<uint64_t>(dist[static_cast<size_t>(v)]), nw},
                  {"count", count[static_cast<size_t>(v)], n1w},
                  {"n", static_cast<uint64_t>(claimed_n), n1w}}};
    out.certs[v].records.push_back(std::move(r));
  }
  return out;
}

Verdict tree_verify(const NodeView& view) {
  if (!view.own1) return Verdict::fail("malformed");
  auto root_id = get_value(*view.own1, "tree", "root_id");
  auto has_parent = get_value(*view.own1, "tree", "has_parent");
  auto parent_id = get_value(*view.own1, "tree", "parent_id");
  auto dist = get_value(*view.own1, "tree", "dist");
  auto count = get_value(*view.own1, "tree", "count");
  auto claimed = get_value(*view.own1, "tree", "n");
  if (!root_id || !has_parent || !parent_id || !dist || !count || !claimed)
    return Verdict::fail("malformed");
  if (*claimed < 1 || *claimed > kMaxClaimedN) return Verdict::fail("n-disagreement");
  if (*dist >= *claimed) return Verdict::fail("tree-cycle");

  for (const auto& nb : view.neighbors) {
    auto nroot = nb_value(nb, false, "tree", "root_id");
    auto nn = nb_value(nb, false, "tree", "n");
    if (!nroot || !nn) return Verdict::fail("malformed");
    if (*nroot != *root_id || *nn != *claimed) return Verdict::fail("n-disagreement");
  }

  if (view.id == *root_id) {
    // Unused fields are pinned to zero so every certificate bit is checked.
    if (*has_parent || *parent_id != 0 || *dist != 0) return Verdict::fail("orphan-root");
    if (*count != *claimed) return Verdict::fail("count-mismatch");
  } else {
    if (!*has_parent) return Verdict::fail("orphan-root");
    const NeighborMsg* p = neighbor_by_id(view, *parent_id);
    if (!p) return Verdict::fail("parent-dist");
    auto pdist = nb_value(*p, false, "tree", "dist");
    if (!pdist || *pdist + 1 != *dist) return Verdict::fail("parent-dist");
  }

  uint64_t child_sum = 1;
  for (const auto& nb : view.neighbors) {
    auto nhp = nb_value(nb, false, "tree", "has_parent");
    auto npid = nb_value(nb, false, "tree", "parent_id");
    auto ncount = nb_value(nb, false, "tree", "count");
    if (!nhp || !npid || !ncount) return Verdict::fail("malformed");
    if (*nhp && *npid == view.id) child_sum += *ncount;
  }
  if (child_sum != *count) return Verdict::fail("count-mismatch");
  return Verdict::ok();
}

// ---- certified path ---------------------------------------------------------

CertMap path_certs(const Graph& g, const std::vector<int>& path_nodes, const std::string& tag,
                   int claimed_n) {
  int n = g.n();
  if (claimed_n <= 0) claimed_n = n;
  if (path_nodes.empty()) throw Error(Errc::InvalidArgument, "empty path");
  std::vector<int> pos(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < path_nodes.size(); ++i) pos[static_cast<size_t>(path_nodes[i])] = static_cast<int>(i);

  int start = path_nodes.front();
  std::vector<int> aparent = bfs_parents(g, start);
  std::vector<int> adist = bfs_dist_from(g, start);

  int idw = id_width(g);
  int nw = bit_width_for(static_cast<uint64_t>(claimed_n) - 1);
  CertMap certs;
  for (int v = 0; v < n; ++v) {
    bool on = pos[static_cast<size_t>(v)] >= 0;
    int i = on ? pos[static_cast<size_t>(v)] : 0;
    bool has_pred = on && i > 0;
    bool has_succ = on && i + 1 < static_cast<int>(path_nodes.size());
    uint64_t pred = has_pred ? g.id(path_nodes[static_cast<size_t>(i - 1)]) : 0;
    uint64_t succ = has_succ ? g.id(path_nodes[static_cast<size_t>(i + 1)]) : 0;
    bool a_has_parent = aparent[static_cast<size_t>(v)] >= 0;
    uint64_t apid = a_has_parent ? g.id(aparent[static_cast<size_t>(v)]) : 0;
    CertRecord r{tag,
                 {{"on_path", on ? 1ull : 0ull, 1},
                  {"pos", static_cast<uint64_t>(i), nw},
                  {"has_pred", has_pred ? 1ull : 0ull, 1},
                  {"pred_id", pred, idw},
                  {"has_succ", has_succ ? 1ull : 0ull, 1},
                  {"succ_id", succ, idw},
                  {"a_has_parent", a_has_parent ? 1ull : 0ull, 1},
                  {"a_parent_id", apid, idw},
                  {"a_dist", static_cast<uint64_t>(adist[static_cast<size_t>(v)]), nw}}};
    certs[v].records.push_back(std::move(r));
  }
  return certs;
}

Verdict path_verify(const NodeView& view, const std::string& tag, uint64_t claimed_n,
                    const OwnPred& s_pred, const OwnPred& t_pred) {
  if (!view.own1) return Verdict::fail("malformed");
  auto on = get_value(*view.own1, tag, "on_path");
  auto pos = get_value(*view.own1, tag, "pos");
  auto has_pred = get_value(*view.own1, tag, "has_pred");
  auto pred_id = get_value(*view.own1, tag, "pred_id");
  auto has_succ = get_value(*view.own1, tag, "has_succ");
  auto succ_id = get_value(*view.own1, tag, "succ_id");
  auto ahp = get_value(*view.own1, tag, "a_has_parent");
  auto apid = get_value(*view.own1, tag, "a_parent_id");
  auto adist = get_value(*view.own1, tag, "a_dist");
  if (!on || !pos || !has_pred || !pred_id || !has_succ || !succ_id || !ahp || !apid || !adist)
    return Verdict::fail("malformed");
  if (*pos >= claimed_n || *adist >= claimed_n) return Verdict::fail("pos-gap");

  // Anchor tree rooted at the path start: its existence cannot be faked
  // because the minimum anchor distance in the graph must be zero.
  if (*adist == 0) {
    if (*ahp || *apid != 0) return Verdict::fail("malformed");
    if (!s_pred(view) || !*on || *pos != 0 || *has_pred) return Verdict::fail("endpoint-missing");
  } else {
    if (!*ahp) return Verdict::fail("pred-not-neighbor");
    const NeighborMsg* ap = neighbor_by_id(view, *apid);
    if (!ap) return Verdict::fail("pred-not-neighbor");
    auto pad = nb_value(*ap, false, tag, "a_dist");
    if (!pad) return Verdict::fail("malformed");
    if (*pad + 1 != *adist) return Verdict::fail("pos-gap");
  }

  if (!*on) {
    // Unused fields are pinned to zero so every certificate bit is checked.
    if (*pos != 0 || *has_pred || *pred_id != 0 || *has_succ || *succ_id != 0)
      return Verdict::fail("malformed");
    return Verdict::ok();
  }

  if (*has_pred) {
    const NeighborMsg* p = neighbor_by_id(view, *pred_id);
    if (!p) return Verdict::fail("pred-not-neighbor");
    auto pon = nb_value(*p, false, tag, "on_path");
    auto ppos = nb_value(*p, false, tag, "pos");
    auto phs = nb_value(*p, false, tag, "has_succ");
    auto psucc = nb_value(*p, false, tag, "succ_id");
    if (!pon || !ppos || !phs || !psucc) return Verdict::fail("malformed");
    if (!*pon || !*phs || *psucc != view.id) return Verdict::fail("pred-not-neighbor");
    if (*ppos + 1 != *pos) return Verdict::fail("pos-gap");
  } else {
    if (*pred_id != 0) return Verdict::fail("malformed");
    if (*pos != 0) return Verdict::fail("pos-gap");
    if (!s_pred(view)) return Verdict::fail("endpoint-missing");
  }

  if (*has_succ) {
    const NeighborMsg* sc = neighbor_by_id(view, *succ_id);
    if (!sc) return Verdict::fail("pred-not-neighbor");
    auto son = nb_value(*sc, false, tag, "on_path");
    auto spos = nb_value(*sc, false, tag, "pos");
    auto shp = nb_value(*sc, false, tag, "has_pred");
    auto spred = nb_value(*sc, false, tag, "pred_id");
    if (!son || !spos || !shp || !spred) return Verdict::fail("malformed");
    if (!*son || !*shp || *spred != view.id) return Verdict::fail("pred-not-neighbor");
    if (*pos + 1 != *spos) return Verdict::fail("pos-gap");
  } else {
    if (*succ_id != 0) return Verdict::fail("malformed");
    if (!t_pred(view)) return Verdict::fail("endpoint-missing");
  }
  return Verdict::ok();
}

// ---- merged fingerprints ------------------------------------------------------

uint64_t enc_channel(uint64_t e, int channels, int ch) {
  uint64_t c = static_cast<uint64_t>(channels);
  if (e > (kMersenne61 - 1 - static_cast<uint64_t>(ch)) / c)
    throw Error(Errc::EncodingOverflow, "channel-encoded value would exceed the field");
  return e * c + static_cast<uint64_t>(ch);
}

uint64_t enc_pair(uint64_t x, uint64_t idx, uint64_t base) {
  if (base == 0 || idx >= base) throw Error(Errc::InvalidArgument, "pair index out of base");
  if (x > (kMersenne61 - 1 - idx) / base)
    throw Error(Errc::EncodingOverflow, "pair-encoded value would exceed the field");
  return x * base + idx;
}

CertMap fp_round2(const Graph& g, const std::vector<int>& parent,
                  const std::vector<NodeFactors>& factors, F61 s) {
  int n = g.n();
  std::vector<std::vector<int>> children(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    int p = parent[static_cast<size_t>(v)];
    if (p >= 0 && p < n) children[static_cast<size_t>(p)].push_back(v);
  }
  std::vector<F61> left(static_cast<size_t>(n)), right(static_cast<size_t>(n));
  // 0 = unvisited, 1 = in progress (cycle guard), 2 = done.
  std::vector<char> state(static_cast<size_t>(n), 0);
  std::function<void(int)> eval = [&](int v) {
    state[static_cast<size_t>(v)] = 1;
    F61 l = fingerprint(factors[static_cast<size_t>(v)].left, s);
    F61 r = fingerprint(factors[static_cast<size_t>(v)].right, s);
    for (int c : children[static_cast<size_t>(v)]) {
      if (state[static_cast<size_t>(c)] == 0) eval(c);
      if (state[static_cast<size_t>(c)] == 2) {
        l *= left[static_cast<size_t>(c)];
        r *= right[static_cast<size_t>(c)];
      }
    }
    left[static_cast<size_t>(v)] = l;
    right[static_cast<size_t>(v)] = r;
    state[static_cast<size_t>(v)] = 2;
  };
  for (int v = 0; v < n; ++v)
    if (state[static_cast<size_t>(v)] == 0) eval(v);

  CertMap certs;
  for (int v = 0; v < n; ++v) {
    CertRecord r{"fp",
                 {{"left", left[static_cast<size_t>(v)].raw(), 61},
                  {"right", right[static_cast<size_t>(v)].raw(), 61}}};
    certs[v].records.push_back(std::move(r));
  }
  return certs;
}

Verdict fp_verify(const NodeView& view, const NodeFactors& own) {
  if (!view.own1 || !view.own2 || !view.randomness) return Verdict::fail("fp:malformed");
  auto left = get_value(*view.own2, "fp", "left");
  auto right = get_value(*view.own2, "fp", "right");
  auto root_id = get_value(*view.own1, "tree", "root_id");
  if (!left || !right || !root_id) return Verdict::fail("fp:malformed");

  F61 s(view.randomness->field_point);
  F61 el = fingerprint(own.left, s);
  F61 er = fingerprint(own.right, s);
  for (const auto& nb : view.neighbors) {
    auto nhp = nb_value(nb, false, "tree", "has_parent");
    auto npid = nb_value(nb, false, "tree", "parent_id");
    if (!nhp || !npid) return Verdict::fail("fp:malformed");
    if (!*nhp || *npid != view.id) continue;
    auto nl = nb_value(nb, true, "fp", "left");
    auto nr = nb_value(nb, true, "fp", "right");
    if (!nl || !nr) return Verdict::fail("fp:malformed");
    el *= F61(*nl);
    er *= F61(*nr);
  }
  if (el != F61(*left) || er != F61(*right)) return Verdict::fail("fp:aggregate");

  if (view.id == *root_id) {
    F61 target = fingerprint(own.target, s);
    if (F61(*left) != F61(*right) * target) return Verdict::fail("fp:root");
  }
  return Verdict::ok();
}

// ---- runnable toolbox protocols ---------------------------------------------

namespace {

CertMap merge_certs(CertMap base, CertMap extra) {
  for (auto& [v, stack] : extra)
    for (auto& r : stack.records) base[v].records.push_back(std::move(r));
  return base;
}

std::vector<NodeVerdict> run_verdicts(const ProtocolSpec& proto, const Graph& g,
                                      const ProverStrategy& prover, uint64_t seed) {
  return run(proto, g, prover, seed).verdicts;
}

}  // namespace

std::vector<NodeVerdict> equality_run(const Graph& g, const std::vector<uint64_t>& a,
                                      const std::vector<uint64_t>& b, uint64_t seed) {
  if (static_cast<int>(a.size()) != g.n() || static_cast<int>(b.size()) != g.n())
    throw Error(Errc::InvalidArgument, "input vectors must cover all nodes");
  std::map<uint64_t, std::pair<uint64_t, uint64_t>> by_id;
  for (int v = 0; v < g.n(); ++v)
    by_id[g.id(v)] = {a[static_cast<size_t>(v)], b[static_cast<size_t>(v)]};

  ProverStrategy prover;
  prover.label = "honest";
  prover.round2 = [&a, &b](const Graph& gg, const SharedRandomness& rnd) {
    TreeCerts tree = tree_size_certs(gg);
    std::vector<NodeFactors> factors(static_cast<size_t>(gg.n()));
    for (int v = 0; v < gg.n(); ++v) {
      factors[static_cast<size_t>(v)].left = {enc_channel(a[static_cast<size_t>(v)], 1, 0)};
      factors[static_cast<size_t>(v)].right = {enc_channel(b[static_cast<size_t>(v)], 1, 0)};
    }
    return merge_certs(std::move(tree.certs), fp_round2(gg, tree.parent, factors, F61(rnd.field_point)));
  };

  ProtocolSpec proto;
  proto.name = "equality-dam";
  proto.schedule = Schedule::dAM;
  proto.verify = [by_id](const NodeView& view) -> Verdict {
    Verdict t = tree_verify(view);
    if (!t.accept) return Verdict::fail("tree:" + t.reason);
    auto it = by_id.find(view.id);
    if (it == by_id.end()) return Verdict::fail("fp:malformed");
    NodeFactors own;
    own.left = {enc_channel(it->second.first, 1, 0)};
    own.right = {enc_channel(it->second.second, 1, 0)};
    return fp_verify(view, own);
  };

  // In dAM the tree certificates travel with the second message; point the
  // tree checks at that stack by aliasing it as round 1.
  ProtocolSpec wrapped = proto;
  wrapped.verify = [inner = proto.verify](const NodeView& view) {
    NodeView alias = view;
    alias.own1 = view.own2;
    for (auto& nb : alias.neighbors) nb.round1 = nb.round2;
    return inner(alias);
  };
  return run_verdicts(wrapped, g, prover, seed);
}

std::vector<NodeVerdict> permutation_check_run(const Graph& g,
                                               const std::vector<std::vector<uint64_t>>& values,
                                               uint64_t m_total, uint64_t seed) {
  if (static_cast<int>(values.size()) != g.n())
    throw Error(Errc::InvalidArgument, "value lists must cover all nodes");
  if (m_total > kMaxClaimedN * 8)
    throw Error(Errc::UsageError, "target multiset too large for the simulator");
  std::map<uint64_t, std::vector<uint64_t>> by_id;
  for (int v = 0; v < g.n(); ++v) by_id[g.id(v)] = values[static_cast<size_t>(v)];

  ProverStrategy prover;
  prover.label = "honest";
  prover.round2 = [&values](const Graph& gg, const SharedRandomness& rnd) {
    TreeCerts tree = tree_size_certs(gg);
    std::vector<NodeFactors> factors(static_cast<size_t>(gg.n()));
    for (int v = 0; v < gg.n(); ++v)
      for (uint64_t x : values[static_cast<size_t>(v)])
        factors[static_cast<size_t>(v)].left.push_back(enc_channel(x, 1, 0));
    return merge_certs(std::move(tree.certs), fp_round2(gg, tree.parent, factors, F61(rnd.field_point)));
  };

  ProtocolSpec proto;
  proto.name = "permutation-check-dam";
  proto.schedule = Schedule::dAM;
  proto.verify = [by_id, m_total](const NodeView& view) -> Verdict {
    NodeView alias = view;
    alias.own1 = view.own2;
    for (auto& nb : alias.neighbors) nb.round1 = nb.round2;
    Verdict t = tree_verify(alias);
    if (!t.accept) return Verdict::fail("tree:" + t.reason);
    auto it = by_id.find(alias.id);
    if (it == by_id.end()) return Verdict::fail("fp:malformed");
    NodeFactors own;
    for (uint64_t x : it->second) own.left.push_back(enc_channel(x, 1, 0));
    auto root_id = get_value(*alias.own1, "tree", "root_id");
    if (root_id && *root_id == alias.id)
      for (uint64_t i = 0; i < m_total; ++i) own.target.push_back(enc_channel(i, 1, 0));
    return fp_verify(alias, own);
  };
  return run_verdicts(proto, g, prover, seed);
}

std::vector<NodeVerdict> cop_run(const Graph& g, const std::vector<uint64_t>& x,
                                 const std::vector<int>& pi, uint64_t seed) {
  int n = g.n();
  if (static_cast<int>(x.size()) != n || static_cast<int>(pi.size()) != n)
    throw Error(Errc::InvalidArgument, "input vectors must cover all nodes");
  std::map<uint64_t, std::pair<uint64_t, int>> by_id;
  for (int v = 0; v < n; ++v) by_id[g.id(v)] = {x[static_cast<size_t>(v)], pi[static_cast<size_t>(v)]};

  ProverStrategy prover;
  prover.label = "honest";
  prover.round1 = [&x, &pi](const Graph& gg) {
    int nn = gg.n();
    TreeCerts tree = tree_size_certs(gg);
    CertMap certs = std::move(tree.certs);
    for (int v = 0; v < nn; ++v) {
      // Successor value: x of the node ranked pi(v)+1 (wrapping), or own x
      // when the claimed ranks leave the successor undefined.
      int want = (pi[static_cast<size_t>(v)] + 1) % nn;
      uint64_t y = x[static_cast<size_t>(v)];
      for (int u = 0; u < nn; ++u)
        if (pi[static_cast<size_t>(u)] == want) {
          y = x[static_cast<size_t>(u)];
          break;
        }
      certs[v].records.push_back(CertRecord{"cop", {{"y", y, 61}}});
    }
    return certs;
  };
  prover.round2 = [&x, &pi](const Graph& gg, const SharedRandomness& rnd) {
    int nn = gg.n();
    TreeCerts tree = tree_size_certs(gg);
    std::vector<NodeFactors> factors(static_cast<size_t>(nn));
    for (int v = 0; v < nn; ++v) {
      int want = (pi[static_cast<size_t>(v)] + 1) % nn;
      uint64_t y = x[static_cast<size_t>(v)];
      for (int u = 0; u < nn; ++u)
        if (pi[static_cast<size_t>(u)] == want) {
          y = x[static_cast<size_t>(u)];
          break;
        }
      uint64_t base = static_cast<uint64_t>(nn);
      uint64_t rank = static_cast<uint64_t>(pi[static_cast<size_t>(v)]) % base;
      auto& f = factors[static_cast<size_t>(v)];
      f.left.push_back(enc_channel(rank, 2, 0));
      f.left.push_back(enc_channel(enc_pair(x[static_cast<size_t>(v)], rank, base), 2, 1));
      f.right.push_back(enc_channel(enc_pair(y, (rank + 1) % base, base), 2, 1));
    }
    return fp_round2(gg, tree.parent, factors, F61(rnd.field_point));
  };

  ProtocolSpec proto;
  proto.name = "cop-dmam";
  proto.schedule = Schedule::dMAM;
  proto.verify = [by_id](const NodeView& view) -> Verdict {
    Verdict t = tree_verify(view);
    if (!t.accept) return Verdict::fail("tree:" + t.reason);
    auto claimed = get_value(*view.own1, "tree", "n");
    auto y = get_value(*view.own1, "cop", "y");
    if (!claimed || !y) return Verdict::fail("fp:malformed");
    auto it = by_id.find(view.id);
    if (it == by_id.end()) return Verdict::fail("fp:malformed");
    uint64_t base = *claimed;
    auto [own_x, own_pi_raw] = it->second;
    uint64_t own_pi = static_cast<uint64_t>(own_pi_raw);
    if (own_pi >= base) return Verdict::fail("cop:order");
    if (own_pi + 1 < base && !(own_x < *y)) return Verdict::fail("cop:order");

    NodeFactors own;
    own.left.push_back(enc_channel(own_pi, 2, 0));
    own.left.push_back(enc_channel(enc_pair(own_x, own_pi, base), 2, 1));
    own.right.push_back(enc_channel(enc_pair(*y, (own_pi + 1) % base, base), 2, 1));
    auto root_id = get_value(*view.own1, "tree", "root_id");
    if (root_id && *root_id == view.id)
      for (uint64_t i = 0; i < base; ++i) own.target.push_back(enc_channel(i, 2, 0));
    return fp_verify(view, own);
  };
  return run_verdicts(proto, g, prover, seed);
}

}  // namespace gisim
