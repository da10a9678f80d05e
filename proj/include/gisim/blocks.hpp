#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gisim/engine.hpp"
#include "gisim/field.hpp"
#include "gisim/graph.hpp"

namespace gisim {

// Hard cap on the node count a verifier will believe; bounds every loop a
// dishonest size claim could inflate.
inline constexpr uint64_t kMaxClaimedN = 1ull << 22;

// ---- spanning tree + size --------------------------------------------------

struct TreeCerts {
  CertMap certs;            // one "tree" record per node
  std::vector<int> parent;  // -1 at the root
  int root = 0;             // node index of the minimum identifier
};

// BFS tree rooted at the minimum identifier; certificates carry root id,
// parent pointer, depth, subtree size, and the claimed node count.
TreeCerts tree_size_certs(const Graph& g, int claimed_n = 0);

// Local checks that force the tree records to describe a spanning tree with
// exactly claimed_n nodes. Reason slugs: n-disagreement, orphan-root,
// parent-dist, tree-cycle, count-mismatch, malformed.
Verdict tree_verify(const NodeView& view);

// ---- certified path --------------------------------------------------------

// Fields a path record carries for one node (positions are 0-based along the
// path; anchor fields form a spanning tree rooted at the path's start so that
// the start's existence cannot be faked).
CertMap path_certs(const Graph& g, const std::vector<int>& path_nodes, const std::string& tag,
                   int claimed_n);

using OwnPred = std::function<bool(const NodeView&)>;

// Verifies one certified path record. `s_pred`/`t_pred` identify the intended
// endpoints from a node's own certificates. Reason slugs: endpoint-missing,
// pos-gap, pred-not-neighbor, malformed.
Verdict path_verify(const NodeView& view, const std::string& tag, uint64_t claimed_n,
                    const OwnPred& s_pred, const OwnPred& t_pred);

// ---- fingerprints ----------------------------------------------------------

// Characteristic-polynomial fingerprint of a multiset at point s:
// product of (s - value) over the multiset; empty product is 1.
template <typename F>
F fingerprint(const std::vector<uint64_t>& values, F s) {
  F acc(1);
  for (uint64_t v : values) acc *= (s - F(v));
  return acc;
}

// Per-node factor inputs for the merged fingerprint: `left` and `right` are
// multiset members contributed by this node, `target` is the root-side
// reference multiset (used only at the root). All values are channel-encoded.
struct NodeFactors {
  std::vector<uint64_t> left, right, target;
};

// Channel encoding: value e on channel ch of a C-channel plan becomes
// e*C + ch, keeping distinct channels in disjoint residue classes.
uint64_t enc_channel(uint64_t e, int channels, int ch);
// Pair encoding for order certificates: (x, idx) with idx < base.
uint64_t enc_pair(uint64_t x, uint64_t idx, uint64_t base);

// Second-round certificates: every node carries the running left/right
// products of its subtree (via `parent`), evaluated at s. One "fp" record
// with two field elements regardless of how many channels are merged.
CertMap fp_round2(const Graph& g, const std::vector<int>& parent,
                  const std::vector<NodeFactors>& factors, F61 s);

// Verifies the aggregation: own product times children's products must match
// the carried value, and the root compares left against right * target.
// Reason slugs: fp:aggregate, fp:root, fp:malformed.
Verdict fp_verify(const NodeView& view, const NodeFactors& own);

// ---- runnable toolbox protocols (used by tests and as worked examples) -----

// Multiset equality of {a(v)} and {b(v)} (dAM): prover sends tree + partials.
std::vector<NodeVerdict> equality_run(const Graph& g, const std::vector<uint64_t>& a,
                                      const std::vector<uint64_t>& b, uint64_t seed);

// Checks that node values (several per node allowed) form exactly the
// multiset 0..m_total-1 (dAM).
std::vector<NodeVerdict> permutation_check_run(const Graph& g,
                                               const std::vector<std::vector<uint64_t>>& values,
                                               uint64_t m_total, uint64_t seed);

// Order-certificate check (dMAM): given node inputs x and claimed ranks pi,
// the prover supplies each node's successor value y; verification accepts on
// all nodes iff pi is the rank function of x (up to fingerprint error).
std::vector<NodeVerdict> cop_run(const Graph& g, const std::vector<uint64_t>& x,
                                 const std::vector<int>& pi, uint64_t seed);

}  // namespace gisim
