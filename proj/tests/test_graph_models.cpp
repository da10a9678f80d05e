#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "gisim/error.hpp"
#include "gisim/graph.hpp"
#include "gisim/models.hpp"

using namespace gisim;

namespace {

Graph p3() { return Graph({1, 2, 3}, {{0, 2}, {2, 1}}); }

bool throws_code(Errc want, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == want;
  }
  return false;
}

}  // namespace

TEST_CASE("graph constructor normalizes and validates") {
  Graph g = p3();
  CHECK(g.n() == 3);
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 1));
  CHECK(g.degree(2) == 2);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(g.index_of_id(3) == 2);
  CHECK(g.index_of_id(99) == -1);

  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({1, 1}, {{0, 1}}); }));
  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({0, 2}, {{0, 1}}); }));
  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({1ull << 32, 2}, {{0, 1}}); }));
  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({1, 2}, {{0, 0}}); }));
  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({1, 2}, {{0, 2}}); }));
  CHECK(throws_code(Errc::InvalidArgument, [] { Graph({1, 2}, {{0, 1}, {1, 0}}); }));
  CHECK(throws_code(Errc::DisconnectedResult, [] { Graph({1, 2, 3}, {{0, 1}}); }));
}

TEST_CASE("bfs helpers are deterministic") {
  Graph g({1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});  // C4
  auto dist = bfs_dist_from(g, 0);
  CHECK(dist == std::vector<int>{0, 1, 2, 1});
  CHECK(bfs_path(g, 0, 2) == std::vector<int>{0, 1, 2});  // index-order tie-break
  auto par = bfs_parents(g, 0);
  CHECK(par[0] == -1);
  CHECK(par[1] == 0);
  CHECK(par[3] == 0);
  CHECK(par[2] == 1);
}

TEST_CASE("segment inversion predicate") {
  CHECK(is_inversion(0, 1, 1, 0));
  CHECK(is_inversion(1, 0, 0, 1));
  CHECK_FALSE(is_inversion(0, 0, 1, 1));
  CHECK_FALSE(is_inversion(0, 1, 1, 2));
  CHECK_FALSE(is_inversion(0, 0, 0, 1));  // shared top position: no sign change
}

TEST_CASE("trapezoid intersection predicate") {
  TrapezoidModel::Entry a{0, 1, 0, 1}, b{2, 3, 2, 3};
  CHECK_FALSE(trapezoids_intersect(a, b));  // strictly left on both lines
  CHECK_FALSE(trapezoids_intersect(b, a));
  TrapezoidModel::Entry c{0, 3, 0, 1}, d{1, 2, 2, 3};
  CHECK(trapezoids_intersect(c, d));  // top intervals overlap
  TrapezoidModel::Entry e{0, 1, 2, 3}, f{2, 3, 0, 1};
  CHECK(trapezoids_intersect(e, f));  // left on top, right on bottom: they cross
}

TEST_CASE("chord crossing predicate") {
  CHECK(chords_cross({0, 2}, {1, 4}));
  CHECK(chords_cross({1, 4}, {0, 2}));
  CHECK_FALSE(chords_cross({0, 2}, {3, 5}));  // disjoint arcs
  CHECK_FALSE(chords_cross({0, 5}, {1, 4}));  // nested
}

TEST_CASE("polygon intersection predicate") {
  CHECK(polygons_intersect({0, 2, 4}, {1, 3, 5}));   // interleaved triangles
  CHECK_FALSE(polygons_intersect({0, 1, 2}, {3, 4, 5}));  // one gap holds the other
  CHECK(polygons_intersect({0, 2}, {1, 4}));  // k=2 degenerates to chords
  CHECK_FALSE(polygons_intersect({0, 2}, {3, 5}));
  // v's vertices split across two gaps of u: intersecting even though no
  // single gap holds them.
  CHECK(polygons_intersect({0, 3, 6}, {1, 4, 7}));
}

TEST_CASE("model validation catches broken arrangements") {
  CHECK_NOTHROW(validate_model(PermutationModel{{0, 1, 2}, {1, 2, 0}}));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(PermutationModel{{0, 0, 2}, {1, 2, 0}});
  }));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(PermutationModel{{0, 1, 3}, {1, 2, 0}});
  }));
  CHECK_NOTHROW(validate_model(TrapezoidModel{{{0, 2, 0, 2}, {1, 3, 1, 3}}}));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(TrapezoidModel{{{0, 0, 0, 2}, {1, 3, 1, 3}}});
  }));
  CHECK_NOTHROW(validate_model(ChordModel{{{0, 2}, {1, 3}}}));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(ChordModel{{{2, 0}, {1, 3}}});
  }));
  CHECK_NOTHROW(validate_model(PolygonModel{2, {{0, 2}, {1, 3}}}));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(PolygonModel{2, {{2, 0}, {1, 3}}});
  }));
  CHECK(throws_code(Errc::InvalidArgument, [] {
    validate_model(PolygonModel{3, {{0, 2}, {1, 3}}});  // wrong arity
  }));
}

TEST_CASE("model metadata") {
  GeometricModel m = ChordModel{{{0, 2}, {1, 3}}};
  CHECK(model_class(m) == ClassTag::Circle);
  CHECK(model_size(m) == 2);
  CHECK(std::string(class_name(ClassTag::Permutation)) == "permutation");
  CHECK(std::string(class_name(ClassTag::Trapezoid)) == "trapezoid");
  CHECK(std::string(class_name(ClassTag::Circle)) == "circle");
  CHECK(std::string(class_name(ClassTag::Polygon)) == "polygon");
}

TEST_CASE("induced graph from a chord model") {
  // a=(0,2) b=(1,4) c=(3,5): a-b and b-c cross, a-c does not.
  GeometricModel m = ChordModel{{{0, 2}, {1, 4}, {3, 5}}};
  Graph g = model_induced_graph(m);
  CHECK(g.n() == 3);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(g.id(0) == 1);  // default ids 1..n

  GeometricModel loose = ChordModel{{{0, 1}, {2, 3}}};
  CHECK(throws_code(Errc::DisconnectedResult, [&] { model_induced_graph(loose); }));
  CHECK(throws_code(Errc::NodeSetMismatch, [&] { model_induced_graph(m, {1, 2}); }));
}

TEST_CASE("properness classification") {
  Graph path({1, 2, 3}, {{0, 1}, {1, 2}});
  GeometricModel proper = ChordModel{{{0, 2}, {1, 4}, {3, 5}}};
  CHECK(is_proper_model(path, proper) == Properness::Proper);
  GeometricModel fan = ChordModel{{{0, 3}, {1, 4}, {2, 5}}};  // all pairs cross
  CHECK(is_proper_model(path, fan) == Properness::SemiProperOnly);
  GeometricModel apart = ChordModel{{{0, 1}, {2, 3}, {4, 5}}};  // nothing crosses
  CHECK(is_proper_model(path, apart) == Properness::NotSemiProper);
  CHECK(throws_code(Errc::NodeSetMismatch, [&] {
    is_proper_model(path, GeometricModel{ChordModel{{{0, 2}, {1, 3}}}});
  }));
}

TEST_CASE("pair predicate dispatches by model kind") {
  GeometricModel perm = PermutationModel{{0, 1}, {1, 0}};
  CHECK(model_pair_predicate(perm, 0, 1));
  GeometricModel trap = TrapezoidModel{{{0, 1, 0, 1}, {2, 3, 2, 3}}};
  CHECK_FALSE(model_pair_predicate(trap, 0, 1));
  GeometricModel poly = PolygonModel{3, {{0, 2, 4}, {1, 3, 5}}};
  CHECK(model_pair_predicate(poly, 0, 1));
}
