#include "gisim/engine.hpp"

#include <algorithm>

#include "gisim/error.hpp"
#include "gisim/field.hpp"
#include "gisim/rng.hpp"

namespace gisim {

const char* schedule_name(Schedule s) {
  switch (s) {
    case Schedule::dM: return "dM";
    case Schedule::dAM: return "dAM";
    case Schedule::dMAM: return "dMAM";
  }
  return "?";
}

SharedRandomness SharedRandomness::from_seed(uint64_t seed) {
  uint64_t state = seed;
  return SharedRandomness{seed, splitmix64(state) % kMersenne61};
}

namespace {

std::vector<CertificateStack> collect(const CertMap& m, int n) {
  std::vector<CertificateStack> out(static_cast<size_t>(n));
  for (const auto& [v, stack] : m)
    if (v >= 0 && v < n) out[static_cast<size_t>(v)] = stack;
  return out;
}

}  // namespace

Transcript run(const ProtocolSpec& proto, const Graph& g, const ProverStrategy& prover,
               uint64_t seed) {
  Transcript t;
  t.protocol = proto.name;
  t.prover = prover.label;
  t.schedule = proto.schedule;
  t.seed = seed;
  int n = g.n();

  bool want_r1 = proto.schedule == Schedule::dM || proto.schedule == Schedule::dMAM;
  bool want_r2 = proto.schedule == Schedule::dAM || proto.schedule == Schedule::dMAM;

  if (want_r1) {
    if (!prover.round1) throw Error(Errc::UsageError, "prover lacks a first-round message");
    t.round1 = collect(prover.round1(g), n);
  }
  if (want_r2) {
    t.has_randomness = true;
    t.randomness = SharedRandomness::from_seed(seed);
    if (!prover.round2) throw Error(Errc::UsageError, "prover lacks a second-round message");
    t.round2 = collect(prover.round2(g, t.randomness), n);
  }

  auto stack1 = [&](int v) -> const CertificateStack* {
    return want_r1 ? &t.round1[static_cast<size_t>(v)] : nullptr;
  };
  auto stack2 = [&](int v) -> const CertificateStack* {
    return want_r2 ? &t.round2[static_cast<size_t>(v)] : nullptr;
  };

  t.verdicts.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    Verdict verdict;
    bool own_ok = (!want_r1 || widths_ok(t.round1[static_cast<size_t>(v)])) &&
                  (!want_r2 || widths_ok(t.round2[static_cast<size_t>(v)]));
    bool layout_ok = true;
    for (int u : g.neighbors(v)) {
      if (want_r1 && !same_layout(t.round1[static_cast<size_t>(v)], t.round1[static_cast<size_t>(u)]))
        layout_ok = false;
      if (want_r2 && !same_layout(t.round2[static_cast<size_t>(v)], t.round2[static_cast<size_t>(u)]))
        layout_ok = false;
      if (want_r1 && !widths_ok(t.round1[static_cast<size_t>(u)])) layout_ok = false;
      if (want_r2 && !widths_ok(t.round2[static_cast<size_t>(u)])) layout_ok = false;
    }
    if (!own_ok) {
      verdict = Verdict::fail("malformed:width");
    } else if (!layout_ok) {
      verdict = Verdict::fail("malformed:layout");
    } else {
      NodeView view;
      view.id = g.id(v);
      view.degree = g.degree(v);
      view.own1 = stack1(v);
      view.own2 = stack2(v);
      view.randomness = t.has_randomness ? &t.randomness : nullptr;
      for (int u : g.neighbors(v)) view.neighbors.push_back({g.id(u), stack1(u), stack2(u)});
      std::sort(view.neighbors.begin(), view.neighbors.end(),
                [](const NeighborMsg& a, const NeighborMsg& b) { return a.id < b.id; });
      try {
        verdict = proto.verify(view);
      } catch (const std::exception&) {
        verdict = Verdict::fail("malformed:verify");
      }
    }
    t.verdicts.push_back({g.id(v), verdict.accept, verdict.reason});
  }

  t.global_accept = std::all_of(t.verdicts.begin(), t.verdicts.end(),
                                [](const NodeVerdict& nv) { return nv.accept; });
  t.stats = measure_bandwidth(t);
  return t;
}

bool global_verdict(const Transcript& t) {
  if (t.verdicts.empty()) throw Error(Errc::UsageError, "transcript has no verdicts");
  return t.global_accept;
}

double rejection_rate(const ProtocolSpec& proto, const Graph& g, const ProverStrategy& prover,
                      int trials, uint64_t seed0) {
  if (trials < 1) throw Error(Errc::UsageError, "need at least one trial");
  int rejects = 0;
  for (int i = 0; i < trials; ++i)
    if (!run(proto, g, prover, seed0 + static_cast<uint64_t>(i)).global_accept) ++rejects;
  return static_cast<double>(rejects) / trials;
}

TranscriptStats measure_bandwidth(const Transcript& t) {
  TranscriptStats stats;
  size_t n = std::max(t.round1.size(), t.round2.size());
  for (size_t v = 0; v < n; ++v) {
    int bits = 0;
    if (v < t.round1.size()) bits += stack_bits(t.round1[v]);
    if (v < t.round2.size()) bits += stack_bits(t.round2[v]);
    stats.max_cert_bits = std::max(stats.max_cert_bits, bits);
    // Broadcast messages are the certificates themselves.
    stats.max_msg_bits = std::max(stats.max_msg_bits, bits);
  }
  return stats;
}

}  // namespace gisim
