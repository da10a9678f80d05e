#pragma once

#include <cstdint>

#include "gisim/models.hpp"

namespace gisim {

struct Instance {
  Graph graph;
  GeometricModel model;
};

// Draws a random coordinate arrangement for the class, keeps it if the
// induced graph is connected, and retries (up to 1000 draws) otherwise.
// Node identifiers are drawn injectively from 1..2n-1. The result's model is
// Proper for its graph by construction. `k` is used only for Polygon.
Instance generate(ClassTag cls, int n, int k, uint64_t seed);

}  // namespace gisim
