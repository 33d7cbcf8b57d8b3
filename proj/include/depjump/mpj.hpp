#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "depjump/bipartite.hpp"
#include "depjump/graph.hpp"

namespace depjump {

/// Bits stored one per byte, each 0 or 1.
using BitString = std::vector<std::uint8_t>;

std::string to_bit_text(const BitString& bits);
BitString from_bit_text(std::string_view text);

// ---------------------------------------------------------------------------
// Instances and reference evaluation

/// Boolean three-player input (i, f2, x); value x[f2(i)].
struct Mpj3Instance {
  std::size_t n = 0;
  Vertex i = 0;
  std::vector<Vertex> f2;
  BitString x;
};

/// Boolean k-player input (i, f2, ..., f_{k-1}, x).
struct MpjInstance {
  std::size_t n = 0;
  Vertex i = 0;
  std::vector<std::vector<Vertex>> layers;
  BitString x;

  std::size_t players() const noexcept { return layers.size() + 2; }
};

/// Non-Boolean k-player input (i, f2, ..., fk); value fk(...f2(i)).
struct MpjHatInstance {
  std::size_t n = 0;
  Vertex i = 0;
  std::vector<std::vector<Vertex>> layers;

  std::size_t players() const noexcept { return layers.size() + 1; }
};

void validate(const Mpj3Instance& inst);
void validate(const MpjInstance& inst);
void validate(const MpjHatInstance& inst);

std::uint8_t mpj_eval(const Mpj3Instance& inst);
std::uint8_t mpj_eval(const MpjInstance& inst);
Vertex mpjhat_eval(const MpjHatInstance& inst);

// ---------------------------------------------------------------------------
// Transcripts

struct Message {
  std::string party;
  std::uint32_t round = 0;
  BitString bits;
};

/// Append-only record of every message sent during a run.
class Transcript {
 public:
  void append(std::string party, std::uint32_t round, BitString bits);
  /// Appends all of `other`'s messages, prefixing party labels.
  void append_all(const Transcript& other, const std::string& prefix);

  const std::vector<Message>& messages() const noexcept { return messages_; }
  std::size_t total_bits() const noexcept { return total_bits_; }
  std::map<std::string, std::size_t> bits_by_party() const;
  /// One line per message: "party round bits" ("-" for an empty message).
  std::string dump() const;

 private:
  std::vector<Message> messages_;
  std::size_t total_bits_ = 0;
};

// ---------------------------------------------------------------------------
// The protocol P_H, split by what each player sees.

/// Clique-cover batch parameters used by every protocol party.
struct CoverParams {
  std::size_t batch = 1;
  std::size_t k_target = 1;
};
CoverParams protocol_cover_params(std::size_t n);

namespace ph {

/// Shared by Alice and Carol: the clique cover of G_{f,H} and, per part, the
/// image set S = {f(j) : j in part}, increasing.
struct Plan {
  std::vector<VertexSet> cover;
  std::vector<std::uint32_t> part_of;
  std::vector<std::vector<Vertex>> images;

  friend bool operator==(const Plan&, const Plan&) = default;
};

Plan make_plan(const BipartiteH& h, std::span<const Vertex> f);

/// Alice sees (f, x): one XOR bit per cover part, in part order.
BitString alice_message(const Plan& plan, const BitString& x);
/// Bob sees (i, x): x[j] for each H-neighbour j of i, increasing j.
BitString bob_message(const BipartiteH& h, Vertex i, const BitString& x);
/// Carol sees (i, f) and both messages.
std::uint8_t carol_decode(const BipartiteH& h, const Plan& plan, Vertex i,
                          std::span<const Vertex> f, const BitString& alice,
                          const BitString& bob);
/// Carol's simultaneous-message bitmask over alice ++ bob.
BitString carol_mask(const BipartiteH& h, const Plan& plan, Vertex i,
                     std::span<const Vertex> f);
/// XOR of the masked bits of alice ++ bob.
std::uint8_t referee(const BitString& alice, const BitString& bob, const BitString& mask);

}  // namespace ph

struct Mpj3Result {
  Transcript transcript;
  std::uint8_t output = 0;
};

struct MpjHatResult {
  Transcript transcript;
  Vertex output = 0;
  std::size_t k_bits = 0;
  /// Cost of one phase-one slice (one SM run).
  std::size_t cost_q = 0;
  std::size_t phase1_bits = 0;
  std::size_t phase2_bits = 0;
};

/// One-way P_H: Alice, then Bob, then Carol outputs.
Mpj3Result run_ph(const BipartiteH& h, const Mpj3Instance& inst);

/// Function whose every preimage has size at most d.
struct DLimitedFunction {
  std::vector<Vertex> g;
  std::size_t d = 0;

  bool is_d_limited() const;
};

/// Keeps f(j) wherever |f^{-1}(f(j))| <= d, then fills the remaining
/// positions in increasing order with the smallest value still under
/// capacity d.
DLimitedFunction lex_least_dlimited(std::span<const Vertex> f, std::size_t d);

/// P_H run on the d-limited completion of f2, with Alice also sending
/// x[j] for every j with |f2^{-1}(j)| > d.
Mpj3Result run_mpj3_general(const BipartiteH& h, const Mpj3Instance& inst, std::size_t d);

/// Simultaneous-message conversion: Alice and Bob as in P_H, Carol sends a
/// mask, the referee XORs.
Mpj3Result run_mpj3_sm(const BipartiteH& h, const Mpj3Instance& inst);

/// log2(n) parallel SM runs, one per bit-slice of f3 (MSB first).
MpjHatResult run_mpjhat3_sm(const BipartiteH& h, const MpjHatInstance& inst);

/// Default prefix length: round(2 log2(ln2 * log2 n / log2 log2 n)), clamped
/// to [1, log2 n].
std::size_t default_k_bits(std::size_t n);

/// Four-player protocol: k_bits SM slices learn the top bits of f3(f2(i)),
/// then player 3 sends f4(z) for every z with that prefix.
MpjHatResult run_mpjhat4(const BipartiteH& h, const MpjHatInstance& inst,
                         std::size_t k_bits);
MpjHatResult run_mpjhat4(const BipartiteH& h, const MpjHatInstance& inst);

// ---------------------------------------------------------------------------
// H sampling and validation

struct HValidation {
  std::size_t max_degree = 0;
  double degree_bound = 0.0;
  bool degree_ok = false;
  double cover_bound = 0.0;
  std::vector<std::size_t> cover_sizes;
  std::size_t cover_violations = 0;
  bool cover_ok = false;
  bool pass = false;
};

/// Checks max A-degree <= 2 p_H n and, for `sample_functions` random
/// d-limited f, that the cover of G_{f,H} has at most
/// (1+epsilon)(-n ln(p_H^2))/ln n parts. Monte Carlo only.
HValidation validate_h(const BipartiteH& h, std::size_t d, std::size_t sample_functions,
                       std::uint64_t seed, double epsilon = 0.1);

// ---------------------------------------------------------------------------
// Random instances (deterministic in seed)

std::vector<Vertex> random_function(std::size_t n, std::uint64_t seed);
Mpj3Instance random_mpj3(std::size_t n, std::uint64_t seed);
MpjHatInstance random_mpjhat(std::size_t n, std::size_t players, std::uint64_t seed);

std::size_t log2_exact(std::size_t n);

}  // namespace depjump
