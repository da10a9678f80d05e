#pragma once

#include <variant>
#include <vector>

#include "gisim/graph.hpp"

namespace gisim {

enum class ClassTag { Permutation, Trapezoid, Circle, Polygon };

const char* class_name(ClassTag cls);

// Two horizontal lines; node v is the segment from position l1[v] on the top
// line to position l2[v] on the bottom line. Both label vectors are
// bijections onto 0..n-1.
struct PermutationModel {
  std::vector<int> l1, l2;
};

// Two horizontal lines; node v spans [t1,t2] on the top line and [b1,b2] on
// the bottom line. Top coordinates are a bijection onto 0..2n-1, likewise
// bottom coordinates.
struct TrapezoidModel {
  struct Entry {
    int t1, t2, b1, b2;
  };
  std::vector<Entry> entries;
};

// Chords of a circle with 2n distinct endpoint positions 0..2n-1; node v is
// the chord between positions m < M.
struct ChordModel {
  struct Entry {
    int m, M;
  };
  std::vector<Entry> entries;
};

// Convex k-gons inscribed in a circle with k*n distinct vertex positions
// 0..k*n-1; node v owns the sorted vertex list vertices[v].
struct PolygonModel {
  int k = 0;
  std::vector<std::vector<int>> vertices;
};

using GeometricModel =
    std::variant<PermutationModel, TrapezoidModel, ChordModel, PolygonModel>;

ClassTag model_class(const GeometricModel& m);
int model_size(const GeometricModel& m);

enum class Properness { Proper, SemiProperOnly, NotSemiProper };

// Segments cross iff their endpoints appear in opposite order on the two lines.
bool is_inversion(int l1u, int l2u, int l1v, int l2v);

// Trapezoids are disjoint iff one lies strictly left of the other on both
// lines; everything else counts as intersecting.
bool trapezoids_intersect(const TrapezoidModel::Entry& u, const TrapezoidModel::Entry& v);

// Chords cross iff their endpoints interleave around the circle.
bool chords_cross(const ChordModel::Entry& u, const ChordModel::Entry& v);

// Inscribed polygons are disjoint iff all vertices of one fall strictly
// inside a single circular gap between consecutive vertices of the other.
bool polygons_intersect(const std::vector<int>& pu, const std::vector<int>& pv);

// Geometric predicate between nodes u and v of the model.
bool model_pair_predicate(const GeometricModel& m, int u, int v);

// Checks structural invariants (coverage, bijections, sortedness); throws
// InvalidArgument on violation.
void validate_model(const GeometricModel& m);

// Builds the graph whose edges are exactly the intersecting pairs. Throws
// DisconnectedResult if that graph is not connected. Default ids are 1..n.
Graph model_induced_graph(const GeometricModel& m, std::vector<uint64_t> ids = {});

// Classifies the model against g: Proper (edge iff intersection),
// SemiProperOnly (every edge intersects but some non-edge does too),
// NotSemiProper otherwise. Throws NodeSetMismatch if sizes differ.
Properness is_proper_model(const Graph& g, const GeometricModel& m);

}  // namespace gisim
