#pragma once

#include <optional>

#include "gisim/models.hpp"

namespace gisim {

// Exhaustive-search budgets for the ground-truth deciders below.
struct OracleBudget {
  static constexpr int permutation = 8;    // nodes
  static constexpr int trapezoid = 6;      // nodes
  static constexpr int circle = 5;         // nodes
  static constexpr int polygon_slots = 10; // k * n
  // Budgets for the lexicographically-first SemiProperOnly search.
  static constexpr int permutation_semi = 6;
  static constexpr int trapezoid_semi = 4;
};

// Exhaustively searches for a Proper model of g in the class; nullopt means
// g is definitely not in the class. Throws BudgetExceeded above the budgets.
std::optional<GeometricModel> brute_force_model(const Graph& g, ClassTag cls, int k = 0);

// Closed-form model that intersects on every edge (and typically on every
// pair): Proper exactly when g is complete, SemiProperOnly otherwise.
GeometricModel closed_form_semi_proper(const Graph& g, ClassTag cls, int k = 0);

// A model classified Proper or SemiProperOnly for g, preferring
// SemiProperOnly when g is outside the class. Always succeeds.
GeometricModel find_semi_proper_model(const Graph& g, ClassTag cls, int k = 0);

// Lexicographically first arrangement that is SemiProperOnly for g, searched
// within (smaller) budgets; nullopt if none exists in the class's arrangement
// space. Throws BudgetExceeded above the budgets.
std::optional<GeometricModel> first_semi_proper_only(const Graph& g, ClassTag cls, int k = 0);

}  // namespace gisim
