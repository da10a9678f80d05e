#include <set>
#include <vector>

#include "doctest.h"
#include "gisim/error.hpp"
#include "gisim/generate.hpp"
#include "gisim/oracle.hpp"

using namespace gisim;

namespace {

Graph cycle(int n) {
  std::vector<uint64_t> ids;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    ids.push_back(static_cast<uint64_t>(v + 1));
    edges.push_back({v, (v + 1) % n});
  }
  return Graph(ids, edges);
}

}  // namespace

TEST_CASE("generated instances are proper, connected, and id-disjoint") {
  for (ClassTag cls : {ClassTag::Permutation, ClassTag::Trapezoid, ClassTag::Circle,
                       ClassTag::Polygon}) {
    for (uint64_t seed : {0ull, 1ull, 17ull}) {
      Instance inst = generate(cls, 9, 3, seed);
      CHECK(inst.graph.n() == 9);
      CHECK(model_class(inst.model) == cls);
      CHECK(is_proper_model(inst.graph, inst.model) == Properness::Proper);
      std::set<uint64_t> ids;
      for (uint64_t id : inst.graph.ids()) {
        CHECK(id >= 1);
        CHECK(id <= 17);  // drawn from 1..2n-1
        ids.insert(id);
      }
      CHECK(ids.size() == 9);
    }
  }
}

TEST_CASE("generation is reproducible") {
  Instance a = generate(ClassTag::Circle, 12, 0, 99);
  Instance b = generate(ClassTag::Circle, 12, 0, 99);
  CHECK(a.graph.ids() == b.graph.ids());
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(std::get<ChordModel>(a.model).entries.size() == 12);
  Instance c = generate(ClassTag::Circle, 12, 0, 100);
  CHECK((a.graph.ids() != c.graph.ids() || a.graph.edges() != c.graph.edges()));
}

TEST_CASE("membership oracle on known members") {
  Graph p4({1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}});
  auto m = brute_force_model(p4, ClassTag::Permutation);
  REQUIRE(m.has_value());
  CHECK(is_proper_model(p4, *m) == Properness::Proper);

  auto trap = brute_force_model(p4, ClassTag::Trapezoid);
  REQUIRE(trap.has_value());
  CHECK(is_proper_model(p4, *trap) == Properness::Proper);

  Graph c4 = cycle(4);
  auto chord = brute_force_model(c4, ClassTag::Circle);
  REQUIRE(chord.has_value());
  CHECK(is_proper_model(c4, *chord) == Properness::Proper);

  auto poly = brute_force_model(p4, ClassTag::Polygon, 2);
  REQUIRE(poly.has_value());
  CHECK(is_proper_model(p4, *poly) == Properness::Proper);
}

TEST_CASE("membership oracle on known non-members") {
  // The five-cycle admits no two-line segment arrangement.
  CHECK_FALSE(brute_force_model(cycle(5), ClassTag::Permutation).has_value());
  // The six-cycle admits no trapezoid arrangement.
  CHECK_FALSE(brute_force_model(cycle(6), ClassTag::Trapezoid).has_value());
}

TEST_CASE("oracle budgets throw rather than guess") {
  Instance big = generate(ClassTag::Permutation, 9, 0, 5);
  CHECK_THROWS_AS(brute_force_model(big.graph, ClassTag::Permutation), Error);
  try {
    brute_force_model(big.graph, ClassTag::Permutation);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
  Instance big_c = generate(ClassTag::Circle, 6, 0, 5);
  try {
    brute_force_model(big_c.graph, ClassTag::Circle);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}

TEST_CASE("closed-form arrangement covers every edge") {
  Graph p3({1, 2, 3}, {{0, 1}, {1, 2}});
  for (ClassTag cls : {ClassTag::Permutation, ClassTag::Trapezoid, ClassTag::Circle,
                       ClassTag::Polygon}) {
    GeometricModel m = closed_form_semi_proper(p3, cls, 3);
    CHECK(is_proper_model(p3, m) == Properness::SemiProperOnly);
  }
  Graph k3({1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
  for (ClassTag cls : {ClassTag::Permutation, ClassTag::Trapezoid, ClassTag::Circle,
                       ClassTag::Polygon}) {
    GeometricModel m = closed_form_semi_proper(k3, cls, 3);
    CHECK(is_proper_model(k3, m) == Properness::Proper);  // complete graph
  }
}

TEST_CASE("semi-proper fallback always yields a usable model") {
  Graph p3({1, 2, 3}, {{0, 1}, {1, 2}});
  GeometricModel m = find_semi_proper_model(p3, ClassTag::Permutation);
  CHECK(is_proper_model(p3, m) != Properness::NotSemiProper);
  Graph c5 = cycle(5);
  GeometricModel m5 = find_semi_proper_model(c5, ClassTag::Permutation);
  CHECK(is_proper_model(c5, m5) == Properness::SemiProperOnly);
}

TEST_CASE("first strictly semi-proper arrangement") {
  Graph p3({1, 2, 3}, {{0, 1}, {1, 2}});
  auto m = first_semi_proper_only(p3, ClassTag::Permutation);
  REQUIRE(m.has_value());
  CHECK(is_proper_model(p3, *m) == Properness::SemiProperOnly);

  // On a two-clique every edge-covering arrangement is exact, so no strictly
  // semi-proper one exists.
  Graph k2({1, 2}, {{0, 1}});
  CHECK_FALSE(first_semi_proper_only(k2, ClassTag::Permutation).has_value());

  Graph p5({1, 2, 3, 4, 5}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  try {
    first_semi_proper_only(p5, ClassTag::Trapezoid);  // above the semi budget
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}
