#pragma once

#include <string>
#include <vector>

#include "gisim/blocks.hpp"
#include "gisim/models.hpp"

namespace gisim {

// Verification schemes by class: permutation-pls and trapezoid-pls are
// single-round deterministic; circle-dmam and polygon-dmam send structural
// certificates, then aggregate fingerprints after the shared coin.
ProtocolSpec protocol_for(ClassTag cls, int k = 2);

// Count of neighbor top-line labels above/below the node's own.
std::pair<int64_t, int64_t> degree_split(uint64_t own_l1, const std::vector<uint64_t>& nb_l1);

// Number of positions below each left endpoint owned by non-neighbors:
// f_t = t1 - |{neighbor top coordinates < t1}|, f_b likewise on the bottom
// line. Sound once interval coverage is certified (every position between a
// node's endpoints belongs to a neighbor).
std::pair<int64_t, int64_t> f_counts(uint64_t t1, uint64_t b1,
                                     const std::vector<uint64_t>& nb_tops,
                                     const std::vector<uint64_t>& nb_bottoms);

// Sizes of the strict outside region {0..p1-1} u {pk+1..kn-1} minus neighbor
// vertices (alpha), and of its first-vertex slice (beta1), both computable
// from a node's own polygon record and its neighbors' records.
std::pair<int64_t, int64_t> alpha_beta(uint64_t p1, uint64_t pk, uint64_t pi1, uint64_t pik,
                                       uint64_t sigk, const std::vector<uint64_t>& nb_vertices,
                                       const std::vector<uint64_t>& nb_p1, uint64_t n, int k);

// Certificates derived from a model that realizes exactly this graph.
// Throws ModelNotProper otherwise. The strategy is bound to `g`.
ProverStrategy honest_prover(const Graph& g, const GeometricModel& model);

// Same certificate construction without the properness guard: well-formed
// certificates that assert whatever the model says.
ProverStrategy shaped_prover(const Graph& g, const GeometricModel& model);

struct AdversaryParams {
  int delta = 1;         // node-count offset used by wrong-n
  int bit_position = 0;  // field selector used by bit-flip (node-major)
};

// Named tampering strategies applied to honest certificates built from
// `base`. Throws StrategyInapplicable when the graph or class cannot host
// the cheat (e.g. duplicate-label on a complete graph).
ProverStrategy adversary(const Graph& g, ClassTag cls, int k, const std::string& strategy,
                         const GeometricModel& base, const AdversaryParams& params = {});

// Canonical battery order.
const std::vector<std::string>& strategy_names();

bool strategy_applicable(const Graph& g, ClassTag cls, int k, const std::string& strategy,
                         const GeometricModel& base);

}  // namespace gisim
