#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gisim/engine.hpp"
#include "gisim/models.hpp"

namespace gisim {

struct GraphDocument {
  Graph graph;
  std::optional<GeometricModel> model;
};

// Canonical JSON: sorted keys, integers only, compact separators — equal
// documents serialize byte-identically on every platform.
std::string graph_to_json(const Graph& g, const std::optional<GeometricModel>& model);

// Throws ParseError on malformed documents (graph-level invariants are
// enforced by the Graph constructor and may throw their own errors).
GraphDocument graph_from_json(const std::string& text);

std::string transcript_to_json(const Transcript& t);

struct RunReport {
  std::string protocol;
  std::string graph_digest;
  bool accept = false;
  std::vector<NodeVerdict> rejecting;  // rejecting nodes, ascending index
  TranscriptStats stats;
  uint64_t seed = 0;
};

RunReport make_report(const std::string& canonical_graph_json, const Transcript& t);
std::string report_to_json(const RunReport& r);

// FNV-1a over the canonical document, printed as 16 lowercase hex digits.
uint64_t fnv1a64(std::string_view s);
std::string hex_digest(uint64_t h);
std::string graph_digest(const std::string& canonical_graph_json);

std::string read_text_file(const std::string& path);  // throws ParseError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gisim
