#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gisim/graph.hpp"
#include "gisim/models.hpp"

namespace gisim {

// Two position-paired node sets inducing isomorphic subgraphs. h1[t] is
// paired with h2[iso[t]] (empty iso means identity pairing).
struct CrossingSpec {
  std::vector<int> h1, h2;
  std::vector<int> iso;
};

// A graph together with its crossable units: ordered node-index lists whose
// induced subgraphs are pairwise isomorphic under positional pairing.
struct GadgetFamily {
  Graph graph;
  std::vector<std::vector<int>> units;
};

// Path on 5n nodes with a shortcut edge in every five-node block (6n-1
// edges); unit i is the middle pair of block i. Construction ids 1..5n;
// v_t is node index t-1. Requires n >= 2.
GadgetFamily build_Qn(int n);

// Closed ring on 4n nodes with one two-node apex dangle per four-node arc
// (6n nodes, 7n edges); unit i is the apex pair. Requires n >= 3.
GadgetFamily build_Mn(int n);

// Pairing of units i and j (1-based) of a family.
CrossingSpec crossing_spec(const GadgetFamily& fam, int i, int j);

// Exchanges within-unit adjacency with cross-unit adjacency for every paired
// node pair; an involution on edge sets. Throws SpecsNotIndependent if the
// node sets overlap, NotIsomorphic if paired induced subgraphs differ, and
// InvalidArgument if the two cross-pair adjacencies of some pair disagree.
Graph cross(const Graph& g, const CrossingSpec& spec);

// cross() applied at crossing_spec(fam, i, j).
Graph crossed(const GadgetFamily& fam, int i, int j);

// Intersection models realizing the uncrossed families.
PermutationModel qn_permutation_model(int n);
TrapezoidModel qn_trapezoid_model(int n);
ChordModel mn_chord_model(int n);

// Explicit induced six-cycle inside crossed(build_Qn(n), i, j), canonical
// rotation, 0-based node indices.
std::vector<int> crossed_qn_c6(int n, int i, int j);

// Explicit induced eight-cycle through both crossed units of
// crossed(build_Mn(n), i, j), canonical rotation, 0-based node indices.
std::vector<int> crossed_mn_c2(int n, int i, int j);

// First induced cycle of exactly `length` nodes in depth-first
// lexicographic order (canonical: starts at its smallest node, second node
// smaller than last). nullopt when none exists. Throws BudgetExceeded for
// graphs over 60 nodes.
std::optional<std::vector<int>> find_induced_cycle(const Graph& g, int length);

struct TwoCycleCheck {
  bool ok = false;
  std::string reason;  // empty iff ok
};

// Checks the local-structure obstruction pair: both lists are induced
// cycles, they share at least 4 nodes, and each has at least 2 private
// nodes. Reasons: c1-not-induced-cycle, c2-not-induced-cycle,
// intersection-too-small, difference-too-small.
TwoCycleCheck two_cycle_witness(const Graph& g, const std::vector<int>& c1,
                                const std::vector<int>& c2);

}  // namespace gisim
