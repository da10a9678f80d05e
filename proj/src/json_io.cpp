#include "gisim/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gisim/error.hpp"

namespace gisim {

namespace {

using nlohmann::json;

json model_to_json(const GeometricModel& m) {
  json doc;
  doc["kind"] = class_name(model_class(m));
  json assign = json::array();
  std::visit(
      [&](const auto& mm) {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, PermutationModel>) {
          for (size_t v = 0; v < mm.l1.size(); ++v) assign.push_back({mm.l1[v], mm.l2[v]});
        } else if constexpr (std::is_same_v<T, TrapezoidModel>) {
          for (const auto& e : mm.entries) assign.push_back({e.t1, e.t2, e.b1, e.b2});
        } else if constexpr (std::is_same_v<T, ChordModel>) {
          for (const auto& e : mm.entries) assign.push_back({e.m, e.M});
        } else {
          doc["k"] = mm.k;
          for (const auto& p : mm.vertices) assign.push_back(p);
        }
      },
      m);
  doc["assign"] = std::move(assign);
  return doc;
}

int int_at(const json& row, size_t idx) {
  const json& x = row.at(idx);
  if (!x.is_number_integer() || x.get<int64_t>() < 0 || x.get<int64_t>() > INT32_MAX)
    throw Error(Errc::ParseError, "coordinate out of range");
  return static_cast<int>(x.get<int64_t>());
}

GeometricModel model_from_json(const json& doc, size_t n) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("assign"))
    throw Error(Errc::ParseError, "model needs kind and assign");
  std::string kind = doc.at("kind").get<std::string>();
  const json& assign = doc.at("assign");
  if (!assign.is_array() || assign.size() != n)
    throw Error(Errc::ParseError, "assign must list one row per node");
  auto row_width = [&](size_t want) {
    for (const auto& row : assign)
      if (!row.is_array() || row.size() != want)
        throw Error(Errc::ParseError, "assign row has wrong arity");
  };
  if (kind == "permutation") {
    row_width(2);
    PermutationModel m;
    for (const auto& row : assign) {
      m.l1.push_back(int_at(row, 0));
      m.l2.push_back(int_at(row, 1));
    }
    return m;
  }
  if (kind == "trapezoid") {
    row_width(4);
    TrapezoidModel m;
    for (const auto& row : assign)
      m.entries.push_back({int_at(row, 0), int_at(row, 1), int_at(row, 2), int_at(row, 3)});
    return m;
  }
  if (kind == "circle") {
    row_width(2);
    ChordModel m;
    for (const auto& row : assign) m.entries.push_back({int_at(row, 0), int_at(row, 1)});
    return m;
  }
  if (kind == "polygon") {
    if (!doc.contains("k") || !doc.at("k").is_number_integer())
      throw Error(Errc::ParseError, "polygon model needs k");
    int k = static_cast<int>(doc.at("k").get<int64_t>());
    if (k < 2 || k > 64) throw Error(Errc::ParseError, "polygon order k must be in 2..64");
    row_width(static_cast<size_t>(k));
    PolygonModel m;
    m.k = k;
    for (const auto& row : assign) {
      std::vector<int> p;
      for (size_t i = 0; i < static_cast<size_t>(k); ++i) p.push_back(int_at(row, i));
      m.vertices.push_back(std::move(p));
    }
    return m;
  }
  throw Error(Errc::ParseError, "unknown model kind '" + kind + "'");
}

json stack_to_json(const CertificateStack& s) {
  json out = json::array();
  for (const auto& r : s.records) {
    json rec;
    rec["tag"] = r.tag;
    json fields = json::array();
    for (const auto& f : r.fields)
      fields.push_back({{"name", f.name}, {"value", f.value}, {"width", f.width}});
    rec["fields"] = std::move(fields);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::string graph_to_json(const Graph& g, const std::optional<GeometricModel>& model) {
  json doc;
  doc["n"] = g.n();
  doc["ids"] = g.ids();
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  doc["edges"] = std::move(edges);
  if (model) doc["model"] = model_to_json(*model);
  return doc.dump();
}

GraphDocument graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("ids") || !doc.contains("edges"))
    throw Error(Errc::ParseError, "document needs n, ids, edges");
  if (!doc.at("n").is_number_integer()) throw Error(Errc::ParseError, "n must be an integer");
  int64_t n = doc.at("n").get<int64_t>();
  const json& jids = doc.at("ids");
  if (n < 1 || !jids.is_array() || static_cast<int64_t>(jids.size()) != n)
    throw Error(Errc::ParseError, "ids must list one identifier per node");
  std::vector<uint64_t> ids;
  for (const auto& x : jids) {
    if (!x.is_number_integer() || x.get<int64_t>() < 1)
      throw Error(Errc::ParseError, "identifiers must be positive integers");
    ids.push_back(x.get<uint64_t>());
  }
  const json& jedges = doc.at("edges");
  if (!jedges.is_array()) throw Error(Errc::ParseError, "edges must be an array");
  std::vector<std::pair<int, int>> edges;
  for (const auto& row : jedges) {
    if (!row.is_array() || row.size() != 2) throw Error(Errc::ParseError, "edge must be a pair");
    edges.push_back({int_at(row, 0), int_at(row, 1)});
  }
  GraphDocument out{Graph(std::move(ids), std::move(edges)), std::nullopt};
  if (doc.contains("model"))
    out.model = model_from_json(doc.at("model"), static_cast<size_t>(n));
  return out;
}

std::string transcript_to_json(const Transcript& t) {
  json doc;
  doc["protocol"] = t.protocol;
  doc["prover"] = t.prover;
  doc["schedule"] = schedule_name(t.schedule);
  doc["seed"] = t.seed;
  if (t.has_randomness)
    doc["randomness"] = {{"seed", t.randomness.seed}, {"field_point", t.randomness.field_point}};
  else
    doc["randomness"] = nullptr;
  json r1 = json::array(), r2 = json::array();
  for (const auto& s : t.round1) r1.push_back(stack_to_json(s));
  for (const auto& s : t.round2) r2.push_back(stack_to_json(s));
  doc["round1"] = std::move(r1);
  doc["round2"] = std::move(r2);
  json verdicts = json::array();
  for (const auto& v : t.verdicts)
    verdicts.push_back({{"id", v.id}, {"accept", v.accept}, {"reason", v.reason}});
  doc["verdicts"] = std::move(verdicts);
  doc["global_accept"] = t.global_accept;
  doc["stats"] = {{"max_cert_bits", t.stats.max_cert_bits},
                  {"max_msg_bits", t.stats.max_msg_bits}};
  return doc.dump();
}

RunReport make_report(const std::string& canonical_graph_json, const Transcript& t) {
  RunReport r;
  r.protocol = t.protocol;
  r.graph_digest = graph_digest(canonical_graph_json);
  r.accept = t.global_accept;
  for (const auto& v : t.verdicts)
    if (!v.accept) r.rejecting.push_back(v);
  r.stats = t.stats;
  r.seed = t.seed;
  return r;
}

std::string report_to_json(const RunReport& r) {
  json doc;
  doc["protocol"] = r.protocol;
  doc["graph_digest"] = r.graph_digest;
  doc["verdict"] = r.accept ? "accept" : "reject";
  json rej = json::array();
  for (const auto& v : r.rejecting) rej.push_back({{"id", v.id}, {"reason", v.reason}});
  doc["rejecting"] = std::move(rej);
  doc["max_cert_bits"] = r.stats.max_cert_bits;
  doc["max_msg_bits"] = r.stats.max_msg_bits;
  doc["seed"] = r.seed;
  return doc.dump();
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex_digest(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string graph_digest(const std::string& canonical_graph_json) {
  return hex_digest(fnv1a64(canonical_graph_json));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::UsageError, "cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw Error(Errc::UsageError, "write failed for '" + path + "'");
}

}  // namespace gisim
