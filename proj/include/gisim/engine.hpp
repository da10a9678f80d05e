#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gisim/certs.hpp"
#include "gisim/graph.hpp"

namespace gisim {

// Interaction schedules: dM is one deterministic prover message; dAM draws
// shared randomness first, then the prover answers; dMAM has a prover
// message, then randomness, then a second prover message.
enum class Schedule { dM, dAM, dMAM };

const char* schedule_name(Schedule s);

// One public coin visible to every node: a field point below 2^61-1 derived
// from the seed by a single SplitMix64 step.
struct SharedRandomness {
  uint64_t seed = 0;
  uint64_t field_point = 0;
  static SharedRandomness from_seed(uint64_t seed);
};

struct Verdict {
  bool accept = false;
  std::string reason;  // empty iff accept

  static Verdict ok() { return {true, {}}; }
  static Verdict fail(std::string r) { return {false, std::move(r)}; }
};

struct NeighborMsg {
  uint64_t id = 0;
  const CertificateStack* round1 = nullptr;
  const CertificateStack* round2 = nullptr;
};

// Everything a node may base its verdict on: its identifier and degree, its
// own certificates, the shared randomness, and the neighbors' broadcast
// certificates. Verifiers are pure functions of this view.
struct NodeView {
  uint64_t id = 0;
  int degree = 0;
  const CertificateStack* own1 = nullptr;
  const CertificateStack* own2 = nullptr;
  const SharedRandomness* randomness = nullptr;
  std::vector<NeighborMsg> neighbors;  // ascending id
};

using VerifyFn = std::function<Verdict(const NodeView&)>;

struct ProtocolSpec {
  std::string name;
  Schedule schedule = Schedule::dM;
  VerifyFn verify;
};

using CertMap = std::map<int, CertificateStack>;  // node index -> stack

struct ProverStrategy {
  std::string label;
  std::function<CertMap(const Graph&)> round1;  // dM and dMAM
  std::function<CertMap(const Graph&, const SharedRandomness&)> round2;  // dAM and dMAM
};

struct NodeVerdict {
  uint64_t id = 0;
  bool accept = false;
  std::string reason;
};

struct TranscriptStats {
  int max_cert_bits = 0;
  int max_msg_bits = 0;
};

struct Transcript {
  std::string protocol;
  std::string prover;
  Schedule schedule = Schedule::dM;
  uint64_t seed = 0;
  bool has_randomness = false;
  SharedRandomness randomness;
  std::vector<CertificateStack> round1;  // by node index; empty if round absent
  std::vector<CertificateStack> round2;
  std::vector<NodeVerdict> verdicts;  // by node index
  bool global_accept = false;
  TranscriptStats stats;
};

// Executes one interaction: prover rounds per the schedule, then every node's
// verdict from its local view only. Structurally broken certificates (bad
// widths, a neighbor whose record layout differs) make that node reject
// rather than crash.
Transcript run(const ProtocolSpec& proto, const Graph& g, const ProverStrategy& prover,
               uint64_t seed);

// True iff every node accepted. Throws UsageError on an empty verdict list.
bool global_verdict(const Transcript& t);

// Fraction of seeds seed0..seed0+trials-1 whose run globally rejects.
double rejection_rate(const ProtocolSpec& proto, const Graph& g, const ProverStrategy& prover,
                      int trials, uint64_t seed0);

TranscriptStats measure_bandwidth(const Transcript& t);

}  // namespace gisim
