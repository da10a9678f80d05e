#include <string>
#include <vector>

#include "doctest.h"
#include "gisim/blocks.hpp"
#include "gisim/error.hpp"

using namespace gisim;

namespace {

// ids {1,2,3}, edges 1-3 and 3-2: node 0 is the root, node 1 hangs off node 2.
Graph bent_p3() { return Graph({1, 2, 3}, {{0, 2}, {2, 1}}); }

ProverStrategy fixed_round1(CertMap certs) {
  ProverStrategy p;
  p.label = "fixed";
  p.round1 = [certs](const Graph&) { return certs; };
  return p;
}

Transcript run_tree(const Graph& g, CertMap certs, uint64_t seed = 0) {
  ProtocolSpec proto;
  proto.name = "tree-check";
  proto.schedule = Schedule::dM;
  proto.verify = tree_verify;
  return run(proto, g, fixed_round1(std::move(certs)), seed);
}

void set_tree_field(CertMap& certs, int v, const std::string& name, uint64_t value) {
  for (auto& r : certs[v].records)
    if (r.tag == "tree")
      for (auto& f : r.fields)
        if (f.name == name) f.value = value;
}

}  // namespace

TEST_CASE("tree certificates describe the bfs tree") {
  Graph g = bent_p3();
  TreeCerts tc = tree_size_certs(g);
  CHECK(tc.root == 0);
  CHECK(tc.parent == std::vector<int>{-1, 2, 0});
  CHECK(get_value(tc.certs[0], "tree", "root_id") == 1);
  CHECK(get_value(tc.certs[0], "tree", "has_parent") == 0);
  CHECK(get_value(tc.certs[0], "tree", "parent_id") == 0);
  CHECK(get_value(tc.certs[0], "tree", "dist") == 0);
  CHECK(get_value(tc.certs[0], "tree", "count") == 3);
  CHECK(get_value(tc.certs[0], "tree", "n") == 3);
  CHECK(get_value(tc.certs[1], "tree", "parent_id") == 3);
  CHECK(get_value(tc.certs[1], "tree", "dist") == 2);
  CHECK(get_value(tc.certs[1], "tree", "count") == 1);
  CHECK(get_value(tc.certs[2], "tree", "count") == 2);
}

TEST_CASE("tree certificate of a two-clique is ten bits") {
  Graph k2({1, 2}, {{0, 1}});
  TreeCerts tc = tree_size_certs(k2);
  CHECK(stack_bits(tc.certs[0]) == 10);
  CHECK(stack_bits(tc.certs[1]) == 10);
}

TEST_CASE("honest tree certificates verify") {
  Graph g = bent_p3();
  Transcript t = run_tree(g, tree_size_certs(g).certs);
  CHECK(t.global_accept);
}

TEST_CASE("tree verification catches tampering") {
  Graph g = bent_p3();

  // Overclaimed size: the root's subtree count exposes it.
  Transcript t = run_tree(g, tree_size_certs(g, 4).certs);
  CHECK_FALSE(t.global_accept);
  CHECK(t.verdicts[0].reason == "count-mismatch");

  // Nodes disagreeing on the size reject on both sides of the disagreement.
  CertMap certs = tree_size_certs(g).certs;
  set_tree_field(certs, 0, "n", 2);
  t = run_tree(g, certs);
  CHECK(t.verdicts[0].reason == "n-disagreement");
  CHECK(t.verdicts[2].reason == "n-disagreement");

  // A non-root claiming no parent is an orphan.
  certs = tree_size_certs(g).certs;
  set_tree_field(certs, 1, "has_parent", 0);
  t = run_tree(g, certs);
  CHECK(t.verdicts[1].reason == "orphan-root");

  // The root must sit at distance zero with pinned parent fields.
  certs = tree_size_certs(g).certs;
  set_tree_field(certs, 0, "dist", 1);
  t = run_tree(g, certs);
  CHECK(t.verdicts[0].reason == "orphan-root");

  // Distances larger than the claimed size cannot belong to a tree.
  certs = tree_size_certs(g).certs;
  set_tree_field(certs, 1, "dist", 3);
  t = run_tree(g, certs);
  CHECK(t.verdicts[1].reason == "tree-cycle");

  // Parent pointer to a non-neighbor.
  certs = tree_size_certs(g).certs;
  set_tree_field(certs, 1, "parent_id", 1);
  t = run_tree(g, certs);
  CHECK(t.verdicts[1].reason == "parent-dist");

  // Claimed size outside 1..2^22.
  certs = tree_size_certs(g).certs;
  for (int v = 0; v < 3; ++v) set_tree_field(certs, v, "n", 0);
  t = run_tree(g, certs);
  CHECK(t.verdicts[0].reason == "n-disagreement");

  // Without the record at all, every node reports a malformed certificate.
  CertMap empty;
  for (int v = 0; v < 3; ++v) empty[v] = CertificateStack{};
  t = run_tree(g, empty);
  for (const auto& v : t.verdicts) CHECK(v.reason == "malformed");
}

namespace {

Graph p4() { return Graph({1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}}); }

Transcript run_path(const Graph& g, CertMap certs, uint64_t claimed, uint64_t s_id,
                    uint64_t t_id) {
  ProtocolSpec proto;
  proto.name = "path-check";
  proto.schedule = Schedule::dM;
  proto.verify = [claimed, s_id, t_id](const NodeView& view) {
    return path_verify(view, "pp", claimed,
                       [s_id](const NodeView& v) { return v.id == s_id; },
                       [t_id](const NodeView& v) { return v.id == t_id; });
  };
  return run(proto, g, fixed_round1(std::move(certs)), 0);
}

void set_path_field(CertMap& certs, int v, const std::string& name, uint64_t value) {
  for (auto& r : certs[v].records)
    if (r.tag == "pp")
      for (auto& f : r.fields)
        if (f.name == name) f.value = value;
}

}  // namespace

TEST_CASE("honest certified path verifies") {
  Graph g = p4();
  Transcript t = run_path(g, path_certs(g, {0, 1, 2, 3}, "pp", 4), 4, 1, 4);
  CHECK(t.global_accept);
  // A strict prefix works too; off-path nodes carry pinned-zero fields.
  Transcript t2 = run_path(g, path_certs(g, {0, 1}, "pp", 4), 4, 1, 2);
  CHECK(t2.global_accept);
}

TEST_CASE("path verification catches tampering") {
  Graph g = p4();

  // Truncating the successor chain strands the claimed endpoint.
  CertMap certs = path_certs(g, {0, 1, 2, 3}, "pp", 4);
  set_path_field(certs, 1, "has_succ", 0);
  set_path_field(certs, 1, "succ_id", 0);
  Transcript t = run_path(g, certs, 4, 1, 4);
  CHECK(t.verdicts[1].reason == "endpoint-missing");

  // Position jumps break the pred/succ arithmetic.
  certs = path_certs(g, {0, 1, 2, 3}, "pp", 4);
  set_path_field(certs, 2, "pos", 3);
  t = run_path(g, certs, 4, 1, 4);
  CHECK(t.verdicts[2].reason == "pos-gap");

  // The start endpoint predicate must hold at anchor distance zero.
  certs = path_certs(g, {0, 1, 2, 3}, "pp", 4);
  t = run_path(g, certs, 4, 99, 4);
  CHECK(t.verdicts[0].reason == "endpoint-missing");

  // Shifting every anchor distance leaves no node at distance zero. Claim 5
  // so the shifted distances still fit their declared widths.
  certs = path_certs(g, {0, 1}, "pp", 5);
  for (int v = 0; v < 4; ++v) {
    auto cur = get_value(certs[v], "pp", "a_dist");
    set_path_field(certs, v, "a_dist", *cur + 1);
  }
  t = run_path(g, certs, 5, 1, 2);
  CHECK_FALSE(t.global_accept);
  CHECK(t.verdicts[0].reason == "pred-not-neighbor");

  // Off-path nodes must keep unused fields at zero.
  certs = path_certs(g, {0, 1}, "pp", 4);
  set_path_field(certs, 3, "pred_id", 1);
  t = run_path(g, certs, 4, 1, 2);
  CHECK(t.verdicts[3].reason == "malformed");
}

TEST_CASE("fingerprints multiply factors of the evaluation point") {
  using F7 = Fp<7>;
  CHECK(fingerprint(std::vector<uint64_t>{}, F7(4)) == F7(1));
  CHECK(fingerprint(std::vector<uint64_t>{3, 5}, F7(2)) == F7(3));  // (2-3)(2-5)
  CHECK(fingerprint(std::vector<uint64_t>{5, 3}, F7(2)) == F7(3));  // order-free
  F61 s(1234567);
  CHECK(fingerprint(std::vector<uint64_t>{7}, s) == s - F61(7));
}

TEST_CASE("channel and pair encodings") {
  CHECK(enc_channel(5, 7, 3) == 38);
  CHECK(enc_channel(0, 1, 0) == 0);
  CHECK_THROWS_AS(enc_channel(kMersenne61, 1, 0), Error);
  CHECK(enc_pair(4, 2, 3) == 14);
  CHECK_THROWS_AS(enc_pair(4, 3, 3), Error);
  CHECK_THROWS_AS(enc_pair(kMersenne61, 0, 2), Error);
  // Distinct channels land in distinct residue classes.
  CHECK(enc_channel(9, 4, 1) % 4 == 1);
  CHECK(enc_channel(9, 4, 3) % 4 == 3);
}

TEST_CASE("aggregated fingerprint certificates verify and localize tampering") {
  Graph g = bent_p3();
  TreeCerts tree = tree_size_certs(g);
  std::vector<NodeFactors> honest(3);
  for (int v = 0; v < 3; ++v) {
    honest[static_cast<size_t>(v)].left = {static_cast<uint64_t>(v + 1)};
    honest[static_cast<size_t>(v)].right = {static_cast<uint64_t>((v + 1) % 3 + 1)};
  }
  F61 s(SharedRandomness::from_seed(0).field_point);
  CertMap fp = fp_round2(g, tree.parent, honest, s);
  // Root aggregate over the whole tree: product of (s - v) over each side.
  F61 all_left = fingerprint(std::vector<uint64_t>{1, 2, 3}, s);
  CHECK(F61(*get_value(fp[0], "fp", "left")) == all_left);
  CHECK(F61(*get_value(fp[0], "fp", "right")) == all_left);
  // Leaf carries only its own factor.
  CHECK(F61(*get_value(fp[1], "fp", "left")) == s - F61(2));

  ProtocolSpec proto;
  proto.name = "fp-check";
  proto.schedule = Schedule::dMAM;
  proto.verify = [&honest, &g](const NodeView& view) -> Verdict {
    Verdict t = tree_verify(view);
    if (!t.accept) return Verdict::fail("tree:" + t.reason);
    int v = g.index_of_id(view.id);
    NodeFactors own = honest[static_cast<size_t>(v)];
    auto root_id = get_value(*view.own1, "tree", "root_id");
    if (root_id && *root_id == view.id) own.target = {};  // equal multisets
    return fp_verify(view, own);
  };
  ProverStrategy prover;
  prover.label = "fp";
  prover.round1 = [&tree](const Graph&) { return tree.certs; };
  prover.round2 = [&tree, &honest](const Graph& gg, const SharedRandomness& rnd) {
    return fp_round2(gg, tree.parent, honest, F61(rnd.field_point));
  };
  for (uint64_t seed : {0ull, 1ull, 2ull, 3ull, 4ull})
    CHECK(run(proto, g, prover, seed).global_accept);

  // A prover whose factors disagree with the verifier's own recomputation
  // is caught at the disagreeing node.
  std::vector<NodeFactors> warped = honest;
  warped[1].right = {6};
  ProverStrategy cheat = prover;
  cheat.round2 = [&tree, &warped](const Graph& gg, const SharedRandomness& rnd) {
    return fp_round2(gg, tree.parent, warped, F61(rnd.field_point));
  };
  Transcript bad = run(proto, g, cheat, 0);
  CHECK_FALSE(bad.global_accept);
  CHECK(bad.verdicts[1].reason == "fp:aggregate");

  // A consistent lie about the multiset survives aggregation but not the
  // root comparison.
  ProtocolSpec lying = proto;
  lying.verify = [&warped, &g](const NodeView& view) -> Verdict {
    Verdict t = tree_verify(view);
    if (!t.accept) return Verdict::fail("tree:" + t.reason);
    int v = g.index_of_id(view.id);
    NodeFactors own = warped[static_cast<size_t>(v)];
    auto root_id = get_value(*view.own1, "tree", "root_id");
    if (root_id && *root_id == view.id) own.target = {};
    return fp_verify(view, own);
  };
  for (uint64_t seed : {0ull, 1ull, 2ull})
    CHECK(run(lying, g, cheat, seed).verdicts[0].reason == "fp:root");
}

TEST_CASE("multiset equality protocol") {
  Graph g = bent_p3();
  for (uint64_t seed : {0ull, 5ull, 9ull}) {
    auto verdicts = equality_run(g, {1, 2, 3}, {3, 1, 2}, seed);
    for (const auto& v : verdicts) CHECK(v.accept);
  }
  for (uint64_t seed : {0ull, 5ull, 9ull}) {
    auto verdicts = equality_run(g, {1, 2, 3}, {1, 2, 4}, seed);
    bool any_reject = false;
    for (const auto& v : verdicts) any_reject |= !v.accept;
    CHECK(any_reject);
  }
  CHECK_THROWS_AS(equality_run(g, {1, 2}, {1, 2, 3}, 0), Error);
}

TEST_CASE("permutation check protocol") {
  Graph g = bent_p3();
  auto ok = permutation_check_run(g, {{0}, {2}, {1}}, 3, 0);
  for (const auto& v : ok) CHECK(v.accept);
  auto multi = permutation_check_run(g, {{0, 3}, {2, 1}, {4, 5}}, 6, 1);
  for (const auto& v : multi) CHECK(v.accept);
  auto dup = permutation_check_run(g, {{0}, {2}, {2}}, 3, 0);
  bool any_reject = false;
  for (const auto& v : dup) any_reject |= !v.accept;
  CHECK(any_reject);
}

TEST_CASE("order certificate protocol") {
  Graph g = bent_p3();
  auto ok = cop_run(g, {10, 30, 20}, {0, 2, 1}, 0);
  for (const auto& v : ok) CHECK(v.accept);
  // Claiming sorted order for an unsorted input breaks a successor bound.
  auto bad = cop_run(g, {10, 30, 20}, {0, 1, 2}, 0);
  CHECK_FALSE(bad[1].accept);
  CHECK(bad[1].reason == "cop:order");
}
