#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gisim/error.hpp"
#include "gisim/gadgets.hpp"
#include "gisim/generate.hpp"
#include "gisim/json_io.hpp"
#include "gisim/oracle.hpp"
#include "gisim/recognizers.hpp"

namespace {

using namespace gisim;

ClassTag parse_class(const std::string& name) {
  if (name == "permutation") return ClassTag::Permutation;
  if (name == "trapezoid") return ClassTag::Trapezoid;
  if (name == "circle") return ClassTag::Circle;
  if (name == "polygon") return ClassTag::Polygon;
  throw Error(Errc::UsageError, "unknown class '" + name + "'");
}

ClassTag parse_protocol(const std::string& name) {
  if (name == "permutation-pls") return ClassTag::Permutation;
  if (name == "trapezoid-pls") return ClassTag::Trapezoid;
  if (name == "circle-dmam") return ClassTag::Circle;
  if (name == "polygon-dmam") return ClassTag::Polygon;
  throw Error(Errc::UsageError, "unknown protocol '" + name + "'");
}

uint64_t parse_seed_text(const std::string& text) {
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::UsageError, "seed must be an unsigned integer, got '" + text + "'");
  }
}

uint64_t resolve_seed(const CLI::App* cmd, uint64_t cli_value) {
  if (cmd->count("--seed") > 0) return cli_value;
  if (const char* env = std::getenv("GISIM_SEED")) return parse_seed_text(env);
  return 0;
}

// The protocol's polygon order: --k when given, else the embedded model's.
int resolve_k(ClassTag cls, const CLI::App* cmd, int cli_k,
              const std::optional<GeometricModel>& model) {
  if (cls != ClassTag::Polygon) return 2;
  bool given = cmd->count("--k") > 0;
  if (model && model_class(*model) == ClassTag::Polygon) {
    int mk = std::get<PolygonModel>(*model).k;
    if (given && cli_k != mk)
      throw Error(Errc::UsageError, "--k disagrees with the embedded model's k");
    return mk;
  }
  if (!given) throw Error(Errc::UsageError, "polygon protocol needs --k");
  return cli_k;
}

const GeometricModel& require_model(const GraphDocument& doc, ClassTag cls) {
  if (!doc.model) throw Error(Errc::UsageError, "graph file has no embedded model");
  if (model_class(*doc.model) != cls)
    throw Error(Errc::UsageError, "embedded model kind does not match the protocol");
  return *doc.model;
}

GeometricModel base_model(const GraphDocument& doc, ClassTag cls, int k) {
  if (doc.model && model_class(*doc.model) == cls) return *doc.model;
  return find_semi_proper_model(doc.graph, cls, k);
}

ProverStrategy make_prover(const std::string& name, const GraphDocument& doc, ClassTag cls,
                           int k, const AdversaryParams& params) {
  if (name == "honest") return honest_prover(doc.graph, require_model(doc, cls));
  if (name == "shaped") return shaped_prover(doc.graph, require_model(doc, cls));
  const auto& known = strategy_names();
  if (std::find(known.begin(), known.end(), name) == known.end())
    throw Error(Errc::UsageError, "unknown prover '" + name + "'");
  return adversary(doc.graph, cls, k, name, base_model(doc, cls, k), params);
}

int cmd_generate(const std::string& cls_name, int n, int k, uint64_t seed,
                 const std::string& out) {
  ClassTag cls = parse_class(cls_name);
  if (n < 2) throw Error(Errc::UsageError, "--n must be at least 2");
  if (cls == ClassTag::Polygon && k == 0)
    throw Error(Errc::UsageError, "polygon generation needs --k");
  Instance inst = generate(cls, n, k == 0 ? 2 : k, seed);
  std::string json = graph_to_json(inst.graph, inst.model);
  write_text_file(out, json + "\n");
  std::printf("%s\n", graph_digest(json).c_str());
  return 0;
}

int cmd_run(const std::string& proto_name, const std::string& graph_path,
            const std::string& prover_name, uint64_t seed, const std::string& format,
            bool with_transcript, const CLI::App* cmd, int cli_k,
            const AdversaryParams& params) {
  ClassTag cls = parse_protocol(proto_name);
  GraphDocument doc = graph_from_json(read_text_file(graph_path));
  int k = resolve_k(cls, cmd, cli_k, doc.model);
  ProtocolSpec spec = protocol_for(cls, k);
  ProverStrategy prover = make_prover(prover_name, doc, cls, k, params);
  Transcript t = run(spec, doc.graph, prover, seed);
  std::string canonical = graph_to_json(doc.graph, doc.model);
  RunReport report = make_report(canonical, t);
  if (format == "json") {
    std::printf("%s\n", report_to_json(report).c_str());
    if (with_transcript) std::printf("%s\n", transcript_to_json(t).c_str());
  } else {
    std::printf("protocol: %s\nverdict: %s\n", report.protocol.c_str(),
                report.accept ? "accept" : "reject");
    for (const auto& v : report.rejecting)
      std::printf("node %" PRIu64 " rejects: %s\n", v.id, v.reason.c_str());
    std::printf("max_cert_bits: %d\nmax_msg_bits: %d\n", report.stats.max_cert_bits,
                report.stats.max_msg_bits);
  }
  return report.accept ? 0 : 1;
}

int cmd_soundness(const std::string& proto_name, const std::string& graph_path,
                  const std::string& strategies_arg, int trials, uint64_t seed,
                  const CLI::App* cmd, int cli_k, const AdversaryParams& params) {
  if (trials < 1) throw Error(Errc::UsageError, "--trials must be at least 1");
  ClassTag cls = parse_protocol(proto_name);
  GraphDocument doc = graph_from_json(read_text_file(graph_path));
  int k = resolve_k(cls, cmd, cli_k, doc.model);
  ProtocolSpec spec = protocol_for(cls, k);
  try {
    if (brute_force_model(doc.graph, cls, k))
      std::fprintf(stderr, "warning: graph is a member of the class; "
                           "soundness rates are not meaningful\n");
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded) throw;
    std::fprintf(stderr, "note: membership not oracle-verified (search budget exceeded)\n");
  }
  std::vector<std::string> wanted;
  if (strategies_arg == "all") {
    wanted = strategy_names();
  } else {
    std::string item;
    for (char c : strategies_arg + ",") {
      if (c == ',') {
        if (!item.empty()) wanted.push_back(item);
        item.clear();
      } else {
        item.push_back(c);
      }
    }
    const auto& known = strategy_names();
    for (const auto& s : wanted)
      if (std::find(known.begin(), known.end(), s) == known.end())
        throw Error(Errc::UsageError, "unknown strategy '" + s + "'");
  }
  GeometricModel base = base_model(doc, cls, k);
  std::printf("strategy,trials,rejections,rate\n");
  int ran = 0;
  for (const auto& name : wanted) {
    ProverStrategy prover;
    try {
      prover = adversary(doc.graph, cls, k, name, base, params);
    } catch (const Error& e) {
      if (e.code() != Errc::StrategyInapplicable) throw;
      std::fprintf(stderr, "note: %s inapplicable: %s\n", name.c_str(), e.what());
      continue;
    }
    double rate = rejection_rate(spec, doc.graph, prover, trials, seed);
    int rejections = static_cast<int>(std::llround(rate * trials));
    std::printf("%s,%d,%d,%.4f\n", name.c_str(), trials, rejections, rate);
    ++ran;
  }
  if (ran == 0) throw Error(Errc::StrategyInapplicable, "no strategy applies to this instance");
  return 0;
}

int cmd_sweep(const std::string& proto_name, const std::string& n_list, uint64_t seed,
              const CLI::App* cmd, int cli_k) {
  ClassTag cls = parse_protocol(proto_name);
  int k = resolve_k(cls, cmd, cli_k, std::nullopt);
  ProtocolSpec spec = protocol_for(cls, k);
  std::vector<int> sizes;
  std::string item;
  for (char c : n_list + ",") {
    if (c == ',') {
      if (!item.empty()) {
        try {
          sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw Error(Errc::UsageError, "bad size '" + item + "' in --n list");
        }
        item.clear();
      }
    } else {
      item.push_back(c);
    }
  }
  if (sizes.empty()) throw Error(Errc::UsageError, "--n list is empty");
  std::printf("n,cert_bits,msg_bits,log2n\n");
  for (size_t i = 0; i < sizes.size(); ++i) {
    int n = sizes[i];
    if (n < 2) throw Error(Errc::UsageError, "--n entries must be at least 2");
    Instance inst = generate(cls, n, k, seed + i);
    ProverStrategy prover = honest_prover(inst.graph, inst.model);
    Transcript t = run(spec, inst.graph, prover, seed + i);
    if (!t.global_accept)
      throw Error(Errc::UsageError, "honest run rejected at n=" + std::to_string(n));
    std::printf("%d,%d,%d,%d\n", n, t.stats.max_cert_bits, t.stats.max_msg_bits,
                bit_width_for(static_cast<uint64_t>(n) - 1));
  }
  return 0;
}

int cmd_oracle(const std::string& cls_name, const std::string& graph_path, int k) {
  ClassTag cls = parse_class(cls_name);
  GraphDocument doc = graph_from_json(read_text_file(graph_path));
  try {
    auto model = brute_force_model(doc.graph, cls, cls == ClassTag::Polygon ? k : 0);
    if (model) {
      std::printf("member\n");
      return 0;
    }
    std::printf("non-member\n");
    return 1;
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded) throw;
    std::printf("budget-exceeded\n");
    return 3;
  }
}

int cmd_gadget(const std::string& family, int n, const std::string& cross_arg,
               const std::string& out) {
  GadgetFamily fam = [&] {
    if (family == "Q") return build_Qn(n);
    if (family == "M") return build_Mn(n);
    throw Error(Errc::UsageError, "family must be Q or M");
  }();
  std::string json;
  if (!cross_arg.empty()) {
    size_t comma = cross_arg.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::UsageError, "--cross wants two unit numbers i,j");
    int i = 0, j = 0;
    try {
      i = std::stoi(cross_arg.substr(0, comma));
      j = std::stoi(cross_arg.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(Errc::UsageError, "--cross wants two unit numbers i,j");
    }
    json = graph_to_json(crossed(fam, i, j), std::nullopt);
  } else {
    GeometricModel model = family == "Q" ? GeometricModel{qn_permutation_model(n)}
                                         : GeometricModel{mn_chord_model(n)};
    json = graph_to_json(fam.graph, model);
  }
  write_text_file(out, json + "\n");
  std::printf("%s\n", graph_digest(json).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed certification simulator for geometric "
               "intersection graph classes"};
  app.require_subcommand(1);

  std::string cls_name, proto_name, graph_path, out_path;
  std::string prover_name = "honest", format = "text", strategies = "all";
  std::string n_list, family, cross_arg;
  int n = 0, k = 0, oracle_k = 3, trials = 100;
  uint64_t seed = 0;
  bool with_transcript = false;
  AdversaryParams params;

  CLI::App* gen = app.add_subcommand("generate", "Draw a random member instance with its model");
  gen->add_option("--class", cls_name, "permutation|trapezoid|circle|polygon")->required();
  gen->add_option("--n", n, "node count")->required();
  gen->add_option("--k", k, "polygon order");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output JSON path")->required();

  CLI::App* runc = app.add_subcommand("run", "Execute one protocol interaction");
  runc->add_option("--protocol", proto_name,
                   "permutation-pls|trapezoid-pls|circle-dmam|polygon-dmam")
      ->required();
  runc->add_option("--graph", graph_path, "graph JSON path")->required();
  runc->add_option("--prover", prover_name, "honest|shaped|<strategy name>");
  runc->add_option("--seed", seed, "shared-randomness seed");
  runc->add_option("--k", k, "polygon order");
  runc->add_option("--format", format, "text|json");
  runc->add_flag("--transcript", with_transcript, "also print the full transcript (json)");
  runc->add_option("--delta", params.delta, "node-count offset for wrong-n");
  runc->add_option("--bit-position", params.bit_position, "field selector for bit-flip");

  CLI::App* sound = app.add_subcommand("soundness", "Rejection-rate campaign over strategies");
  sound->add_option("--protocol", proto_name, "protocol name")->required();
  sound->add_option("--graph", graph_path, "graph JSON path")->required();
  sound->add_option("--strategies", strategies, "all or a comma list");
  sound->add_option("--trials", trials, "seeded trials per strategy");
  sound->add_option("--seed", seed, "first trial seed");
  sound->add_option("--k", k, "polygon order");
  sound->add_option("--delta", params.delta, "node-count offset for wrong-n");
  sound->add_option("--bit-position", params.bit_position, "field selector for bit-flip");

  CLI::App* sweep = app.add_subcommand("sweep", "Honest bandwidth measurements over sizes");
  sweep->add_option("--protocol", proto_name, "protocol name")->required();
  sweep->add_option("--n", n_list, "comma list of node counts")->required();
  sweep->add_option("--seed", seed, "generator seed base");
  sweep->add_option("--k", k, "polygon order");

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive membership decision");
  oracle->add_option("--class", cls_name, "class name")->required();
  oracle->add_option("--graph", graph_path, "graph JSON path")->required();
  oracle->add_option("--k", oracle_k, "polygon order");

  CLI::App* gadget = app.add_subcommand("gadget", "Build a lower-bound family graph");
  gadget->add_option("--family", family, "Q|M")->required();
  gadget->add_option("--n", n, "family parameter")->required();
  gadget->add_option("--cross", cross_arg, "unit pair i,j to cross");
  gadget->add_option("--out", out_path, "output JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(cls_name, n, k, resolve_seed(gen, seed), out_path);
    if (runc->parsed())
      return cmd_run(proto_name, graph_path, prover_name, resolve_seed(runc, seed), format,
                     with_transcript, runc, k, params);
    if (sound->parsed())
      return cmd_soundness(proto_name, graph_path, strategies, trials, resolve_seed(sound, seed),
                           sound, k, params);
    if (sweep->parsed()) return cmd_sweep(proto_name, n_list, resolve_seed(sweep, seed), sweep, k);
    if (oracle->parsed()) return cmd_oracle(cls_name, graph_path, oracle_k);
    if (gadget->parsed()) return cmd_gadget(family, n, cross_arg, out_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
