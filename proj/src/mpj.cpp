#include "depjump/mpj.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "depjump/algorithms.hpp"
#include "depjump/error.hpp"
#include "depjump/rng.hpp"

namespace depjump {

std::string to_bit_text(const BitString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (const auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BitString from_bit_text(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (const char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kParse, std::string("bit string may only contain 0/1, found '") + c + "'");
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

std::size_t log2_exact(std::size_t n) {
  require(n >= 2 && std::has_single_bit(n), ErrorKind::kInvalidArgument,
          "n must be a power of two >= 2, got " + std::to_string(n));
  return static_cast<std::size_t>(std::countr_zero(n));
}

namespace {

void validate_layer(std::span<const Vertex> f, std::size_t n, const char* name) {
  require(f.size() == n, ErrorKind::kInvalidArgument,
          std::string(name) + " has length " + std::to_string(f.size()) +
              ", expected " + std::to_string(n));
  for (const Vertex v : f) {
    if (v >= n) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(name) + " value " + std::to_string(v) + " out of range");
    }
  }
}

void validate_bits(const BitString& x, std::size_t n) {
  require(x.size() == n, ErrorKind::kInvalidArgument,
          "x has length " + std::to_string(x.size()) + ", expected " + std::to_string(n));
  for (const auto b : x) require(b <= 1, ErrorKind::kInvalidArgument, "x entries must be 0/1");
}

void require_same_n(const BipartiteH& h, std::size_t n) {
  require(h.n() == n, ErrorKind::kInvalidArgument,
          "H has n=" + std::to_string(h.n()) + " but the instance has n=" + std::to_string(n));
}

// Position of b among the B-side neighbours of a (number of neighbours < b).
std::size_t neighbour_rank(const BipartiteH& h, Vertex a, Vertex b) {
  const auto row = h.row(a);
  std::size_t rank = 0;
  for (std::size_t w = 0; w < b / kWordBits; ++w) {
    rank += static_cast<std::size_t>(std::popcount(row[w]));
  }
  if (const auto tail = b % kWordBits; tail != 0) {
    rank += static_cast<std::size_t>(std::popcount(row[b / kWordBits] & ((Word{1} << tail) - 1)));
  }
  return rank;
}

Mpj3Instance slice_instance(const MpjHatInstance& inst, std::size_t bits, std::size_t j) {
  Mpj3Instance out{inst.n, inst.i, inst.layers[0], BitString(inst.n)};
  const auto& f3 = inst.layers[1];
  for (std::size_t w = 0; w < inst.n; ++w) {
    out.x[w] = static_cast<std::uint8_t>((f3[w] >> (bits - j)) & 1U);
  }
  return out;
}

}  // namespace

void validate(const Mpj3Instance& inst) {
  require(inst.n >= 2, ErrorKind::kInvalidArgument, "n must be >= 2");
  require(inst.i < inst.n, ErrorKind::kInvalidArgument, "i out of range");
  validate_layer(inst.f2, inst.n, "f2");
  validate_bits(inst.x, inst.n);
}

void validate(const MpjInstance& inst) {
  require(inst.n >= 2, ErrorKind::kInvalidArgument, "n must be >= 2");
  require(inst.i < inst.n, ErrorKind::kInvalidArgument, "i out of range");
  require(!inst.layers.empty(), ErrorKind::kInvalidArgument, "need at least 3 players");
  for (std::size_t l = 0; l < inst.layers.size(); ++l) {
    validate_layer(inst.layers[l], inst.n, ("f" + std::to_string(l + 2)).c_str());
  }
  validate_bits(inst.x, inst.n);
}

void validate(const MpjHatInstance& inst) {
  require(inst.n >= 2, ErrorKind::kInvalidArgument, "n must be >= 2");
  require(inst.i < inst.n, ErrorKind::kInvalidArgument, "i out of range");
  require(inst.layers.size() >= 2, ErrorKind::kInvalidArgument, "need at least 3 players");
  for (std::size_t l = 0; l < inst.layers.size(); ++l) {
    validate_layer(inst.layers[l], inst.n, ("f" + std::to_string(l + 2)).c_str());
  }
}

std::uint8_t mpj_eval(const Mpj3Instance& inst) {
  validate(inst);
  return inst.x[inst.f2[inst.i]];
}

std::uint8_t mpj_eval(const MpjInstance& inst) {
  validate(inst);
  Vertex v = inst.i;
  for (const auto& layer : inst.layers) v = layer[v];
  return inst.x[v];
}

Vertex mpjhat_eval(const MpjHatInstance& inst) {
  validate(inst);
  Vertex v = inst.i;
  for (const auto& layer : inst.layers) v = layer[v];
  return v;
}

void Transcript::append(std::string party, std::uint32_t round, BitString bits) {
  total_bits_ += bits.size();
  messages_.push_back({std::move(party), round, std::move(bits)});
}

void Transcript::append_all(const Transcript& other, const std::string& prefix) {
  for (const auto& m : other.messages()) append(prefix + m.party, m.round, m.bits);
}

std::map<std::string, std::size_t> Transcript::bits_by_party() const {
  std::map<std::string, std::size_t> out;
  for (const auto& m : messages_) out[m.party] += m.bits.size();
  return out;
}

std::string Transcript::dump() const {
  std::ostringstream os;
  for (const auto& m : messages_) {
    os << m.party << ' ' << m.round << ' ' << (m.bits.empty() ? "-" : to_bit_text(m.bits))
       << '\n';
  }
  return os.str();
}

CoverParams protocol_cover_params(std::size_t n) {
  if (n < 2) return {1, 1};
  const double log_n = std::log2(static_cast<double>(n));
  const auto batch = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / log_n));
  return {std::clamp<std::size_t>(batch, 1, n), 1};
}

namespace ph {

Plan make_plan(const BipartiteH& h, std::span<const Vertex> f) {
  const auto params = protocol_cover_params(h.n());
  Plan plan;
  plan.cover = clique_cover(build_gfh(h, f), params.batch, params.k_target, true);
  plan.part_of.assign(h.n(), 0);
  plan.images.reserve(plan.cover.size());
  for (std::uint32_t part = 0; part < plan.cover.size(); ++part) {
    std::vector<Vertex> image;
    for (const Vertex j : plan.cover[part]) {
      plan.part_of[j] = part;
      image.push_back(f[j]);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    plan.images.push_back(std::move(image));
  }
  return plan;
}

BitString alice_message(const Plan& plan, const BitString& x) {
  BitString out;
  out.reserve(plan.images.size());
  for (const auto& image : plan.images) {
    std::uint8_t b = 0;
    for (const Vertex s : image) b ^= x[s];
    out.push_back(b);
  }
  return out;
}

BitString bob_message(const BipartiteH& h, Vertex i, const BitString& x) {
  BitString out;
  for (const Vertex j : h.neighbors(i)) out.push_back(x[j]);
  return out;
}

namespace {

// Carol's selection: the Alice bit (if any) and the Bob bit positions whose
// XOR equals x[f(i)].
struct Selection {
  bool use_alice = false;
  std::uint32_t alice_bit = 0;
  std::vector<std::size_t> bob_bits;
};

Selection carol_select(const BipartiteH& h, const Plan& plan, Vertex i,
                       std::span<const Vertex> f) {
  const auto part = plan.part_of[i];
  const Vertex target = f[i];
  Selection sel;

  // Another member of i's clique shares i's image: since (i, j) is an edge
  // of G_{f,H}, (i, f(j)) = (i, f(i)) is in H and Bob already sent x[f(i)].
  for (const Vertex j : plan.cover[part]) {
    if (j != i && f[j] == target) {
      sel.bob_bits.push_back(neighbour_rank(h, i, target));
      return sel;
    }
  }
  sel.use_alice = true;
  sel.alice_bit = part;
  for (const Vertex s : plan.images[part]) {
    if (s == target) continue;
    if (!h.has_edge(i, s)) {
      throw std::logic_error("clique cover part is not a clique of G_{f,H}");
    }
    sel.bob_bits.push_back(neighbour_rank(h, i, s));
  }
  return sel;
}

}  // namespace

std::uint8_t carol_decode(const BipartiteH& h, const Plan& plan, Vertex i,
                          std::span<const Vertex> f, const BitString& alice,
                          const BitString& bob) {
  const auto sel = carol_select(h, plan, i, f);
  std::uint8_t b = sel.use_alice ? alice.at(sel.alice_bit) : 0;
  for (const auto pos : sel.bob_bits) b ^= bob.at(pos);
  return b;
}

BitString carol_mask(const BipartiteH& h, const Plan& plan, Vertex i,
                     std::span<const Vertex> f) {
  const auto alice_len = plan.cover.size();
  BitString mask(alice_len + h.degree(i), 0);
  const auto sel = carol_select(h, plan, i, f);
  if (sel.use_alice) mask[sel.alice_bit] = 1;
  for (const auto pos : sel.bob_bits) mask[alice_len + pos] = 1;
  return mask;
}

std::uint8_t referee(const BitString& alice, const BitString& bob, const BitString& mask) {
  require(mask.size() == alice.size() + bob.size(), ErrorKind::kInvalidArgument,
          "mask length does not match the messages");
  std::uint8_t b = 0;
  for (std::size_t k = 0; k < alice.size(); ++k) b ^= alice[k] & mask[k];
  for (std::size_t k = 0; k < bob.size(); ++k) b ^= bob[k] & mask[alice.size() + k];
  return b;
}

}  // namespace ph

Mpj3Result run_ph(const BipartiteH& h, const Mpj3Instance& inst) {
  validate(inst);
  require_same_n(h, inst.n);
  Mpj3Result res;

  const auto alice_plan = ph::make_plan(h, inst.f2);
  auto alice = ph::alice_message(alice_plan, inst.x);
  auto bob = ph::bob_message(h, inst.i, inst.x);

  const auto carol_plan = ph::make_plan(h, inst.f2);
  res.output = ph::carol_decode(h, carol_plan, inst.i, inst.f2, alice, bob);
  res.transcript.append("alice", 0, std::move(alice));
  res.transcript.append("bob", 1, std::move(bob));
  return res;
}

bool DLimitedFunction::is_d_limited() const {
  std::vector<std::size_t> count(g.size(), 0);
  for (const Vertex v : g) {
    if (v >= g.size() || ++count[v] > d) return false;
  }
  return true;
}

DLimitedFunction lex_least_dlimited(std::span<const Vertex> f, std::size_t d) {
  require(d >= 1, ErrorKind::kInvalidArgument, "d must be >= 1");
  const auto n = f.size();
  std::vector<std::size_t> preimage(n, 0);
  for (const Vertex v : f) {
    require(v < n, ErrorKind::kInvalidArgument, "function value out of range");
    ++preimage[v];
  }
  constexpr auto kOpen = std::numeric_limits<Vertex>::max();
  DLimitedFunction out{std::vector<Vertex>(n, kOpen), d};
  std::vector<std::size_t> used(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (preimage[f[j]] <= d) {
      out.g[j] = f[j];
      ++used[f[j]];
    }
  }
  // Capacity only shrinks, so the smallest open value never moves left.
  Vertex next = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (out.g[j] != kOpen) continue;
    while (used[next] >= d) ++next;
    out.g[j] = next;
    ++used[next];
  }
  return out;
}

Mpj3Result run_mpj3_general(const BipartiteH& h, const Mpj3Instance& inst, std::size_t d) {
  validate(inst);
  require_same_n(h, inst.n);
  const auto n = inst.n;
  Mpj3Result res;

  // Alice and Carol both see f2 and derive g and the large-preimage list.
  std::vector<std::size_t> preimage(n, 0);
  for (const Vertex v : inst.f2) ++preimage[v];
  const auto g = lex_least_dlimited(inst.f2, d).g;

  const auto alice_plan = ph::make_plan(h, g);
  auto alice = ph::alice_message(alice_plan, inst.x);
  for (Vertex j = 0; j < n; ++j) {
    if (preimage[j] > d) alice.push_back(inst.x[j]);
  }
  auto bob = ph::bob_message(h, inst.i, inst.x);

  const Vertex target = inst.f2[inst.i];
  const auto carol_plan = ph::make_plan(h, g);
  const auto cover_len = carol_plan.cover.size();
  if (preimage[target] > d) {
    std::size_t pos = cover_len;
    for (Vertex j = 0; j < target; ++j) {
      if (preimage[j] > d) ++pos;
    }
    res.output = alice.at(pos);
  } else {
    const BitString cover_bits(alice.begin(),
                               alice.begin() + static_cast<std::ptrdiff_t>(cover_len));
    res.output = ph::carol_decode(h, carol_plan, inst.i, g, cover_bits, bob);
  }
  res.transcript.append("alice", 0, std::move(alice));
  res.transcript.append("bob", 1, std::move(bob));
  return res;
}

namespace {

struct SmRun {
  BitString alice;
  BitString bob;
  BitString mask;
  std::uint8_t output = 0;
};

SmRun sm_round(const BipartiteH& h, const ph::Plan& alice_plan, const ph::Plan& carol_plan,
               const Mpj3Instance& inst) {
  SmRun r;
  r.alice = ph::alice_message(alice_plan, inst.x);
  r.bob = ph::bob_message(h, inst.i, inst.x);
  r.mask = ph::carol_mask(h, carol_plan, inst.i, inst.f2);
  r.output = ph::referee(r.alice, r.bob, r.mask);
  return r;
}

}  // namespace

Mpj3Result run_mpj3_sm(const BipartiteH& h, const Mpj3Instance& inst) {
  validate(inst);
  require_same_n(h, inst.n);
  const auto alice_plan = ph::make_plan(h, inst.f2);
  const auto carol_plan = ph::make_plan(h, inst.f2);
  auto r = sm_round(h, alice_plan, carol_plan, inst);
  Mpj3Result res;
  res.output = r.output;
  res.transcript.append("alice", 0, std::move(r.alice));
  res.transcript.append("bob", 0, std::move(r.bob));
  res.transcript.append("carol", 0, std::move(r.mask));
  return res;
}

MpjHatResult run_mpjhat3_sm(const BipartiteH& h, const MpjHatInstance& inst) {
  validate(inst);
  require(inst.players() == 3, ErrorKind::kInvalidArgument, "run_mpjhat3_sm needs k = 3");
  require_same_n(h, inst.n);
  const auto bits = log2_exact(inst.n);
  const auto alice_plan = ph::make_plan(h, inst.layers[0]);
  const auto carol_plan = ph::make_plan(h, inst.layers[0]);

  MpjHatResult res;
  res.k_bits = bits;
  for (std::size_t j = 1; j <= bits; ++j) {
    auto r = sm_round(h, alice_plan, carol_plan, slice_instance(inst, bits, j));
    res.output = static_cast<Vertex>((res.output << 1) | r.output);
    res.cost_q = r.alice.size() + r.bob.size() + r.mask.size();
    const auto tag = ".z" + std::to_string(j);
    res.transcript.append("alice" + tag, 0, std::move(r.alice));
    res.transcript.append("bob" + tag, 0, std::move(r.bob));
    res.transcript.append("carol" + tag, 0, std::move(r.mask));
  }
  res.phase1_bits = res.transcript.total_bits();
  return res;
}

std::size_t default_k_bits(std::size_t n) {
  const auto bits = log2_exact(n);
  const double log_n = static_cast<double>(bits);
  const double log_log_n = std::log2(log_n);
  if (log_log_n <= 0.0) return bits;
  const double k = 2.0 * std::log2(std::log(2.0) * log_n / log_log_n);
  const auto rounded = std::floor(k + 0.5);
  if (rounded < 1.0) return 1;
  return std::min(bits, static_cast<std::size_t>(rounded));
}

MpjHatResult run_mpjhat4(const BipartiteH& h, const MpjHatInstance& inst, std::size_t k_bits) {
  validate(inst);
  require(inst.players() == 4, ErrorKind::kInvalidArgument, "run_mpjhat4 needs k = 4");
  require_same_n(h, inst.n);
  const auto bits = log2_exact(inst.n);
  require(k_bits >= 1 && k_bits <= bits, ErrorKind::kInvalidArgument,
          "k_bits must lie in [1, " + std::to_string(bits) + "], got " + std::to_string(k_bits));
  const auto& f2 = inst.layers[0];
  const auto& f3 = inst.layers[1];
  const auto& f4 = inst.layers[2];

  // Phase 1: players 1-3 run the SM protocol on the top k_bits slices of f3.
  // Player 1 plays Alice (sees f2, f3), player 2 Bob (sees i, f3), player 3
  // Carol (sees i, f2). Messages are public, so player 3 learns the prefix.
  const auto plr1_plan = ph::make_plan(h, f2);
  const auto plr3_plan = ph::make_plan(h, f2);
  const MpjHatInstance three{inst.n, inst.i, {f2, f3}};
  MpjHatResult res;
  res.k_bits = k_bits;
  Vertex prefix = 0;
  for (std::size_t j = 1; j <= k_bits; ++j) {
    auto r = sm_round(h, plr1_plan, plr3_plan, slice_instance(three, bits, j));
    prefix = static_cast<Vertex>((prefix << 1) | r.output);
    res.cost_q = r.alice.size() + r.bob.size() + r.mask.size();
    const auto tag = ".z" + std::to_string(j);
    res.transcript.append("plr1" + tag, 0, std::move(r.alice));
    res.transcript.append("plr2" + tag, 0, std::move(r.bob));
    res.transcript.append("plr3" + tag, 0, std::move(r.mask));
  }
  res.phase1_bits = res.transcript.total_bits();

  // Phase 2: player 3 sends f4(z) for each z carrying the learned prefix.
  const std::size_t span = std::size_t{1} << (bits - k_bits);
  const std::size_t base = static_cast<std::size_t>(prefix) << (bits - k_bits);
  BitString table;
  table.reserve(span * bits);
  for (std::size_t z = base; z < base + span; ++z) {
    for (std::size_t b = bits; b-- > 0;) table.push_back(static_cast<std::uint8_t>((f4[z] >> b) & 1U));
  }
  res.phase2_bits = table.size();

  // Player 4 sees i, f2, f3 and reads off f4(f3(f2(i))).
  const std::size_t z_star = f3[f2[inst.i]];
  const std::size_t offset = (z_star - base) * bits;
  Vertex value = 0;
  for (std::size_t b = 0; b < bits; ++b) value = static_cast<Vertex>((value << 1) | table.at(offset + b));
  res.output = value;
  res.transcript.append("plr3", 1, std::move(table));
  return res;
}

MpjHatResult run_mpjhat4(const BipartiteH& h, const MpjHatInstance& inst) {
  return run_mpjhat4(h, inst, default_k_bits(inst.n));
}

HValidation validate_h(const BipartiteH& h, std::size_t d, std::size_t sample_functions,
                       std::uint64_t seed, double epsilon) {
  const auto n = h.n();
  const double p = h.density();
  HValidation v;
  v.max_degree = h.max_degree();
  v.degree_bound = 2.0 * p * static_cast<double>(n);
  v.degree_ok = static_cast<double>(v.max_degree) <= v.degree_bound;
  // Outside 0 < p_H < 1 the bound is meaningless; report it as 0 so the
  // cover check cannot pass vacuously.
  v.cover_bound = (p > 0.0 && p < 1.0 && n >= 2)
                      ? (1.0 + epsilon) * (-static_cast<double>(n) * std::log(p * p)) /
                            std::log(static_cast<double>(n))
                      : 0.0;
  for (std::size_t t = 0; t < sample_functions; ++t) {
    const auto f = random_function(n, rng::derive_seed(seed, t));
    const auto g = lex_least_dlimited(f, d).g;
    const auto size = ph::make_plan(h, g).cover.size();
    v.cover_sizes.push_back(size);
    if (static_cast<double>(size) > v.cover_bound) ++v.cover_violations;
  }
  v.cover_ok = v.cover_violations == 0;
  v.pass = v.degree_ok && v.cover_ok;
  return v;
}

std::vector<Vertex> random_function(std::size_t n, std::uint64_t seed) {
  rng::Stream s(seed);
  std::vector<Vertex> f(n);
  for (auto& v : f) v = static_cast<Vertex>(s.below(n));
  return f;
}

Mpj3Instance random_mpj3(std::size_t n, std::uint64_t seed) {
  rng::Stream s(seed);
  Mpj3Instance inst{n, static_cast<Vertex>(s.below(n)), std::vector<Vertex>(n), BitString(n)};
  for (auto& v : inst.f2) v = static_cast<Vertex>(s.below(n));
  for (auto& b : inst.x) b = static_cast<std::uint8_t>(s.below(2));
  return inst;
}

MpjHatInstance random_mpjhat(std::size_t n, std::size_t players, std::uint64_t seed) {
  require(players >= 3, ErrorKind::kInvalidArgument, "need at least 3 players");
  rng::Stream s(seed);
  MpjHatInstance inst{n, static_cast<Vertex>(s.below(n)), {}};
  for (std::size_t l = 0; l + 1 < players; ++l) {
    std::vector<Vertex> f(n);
    for (auto& v : f) v = static_cast<Vertex>(s.below(n));
    inst.layers.push_back(std::move(f));
  }
  return inst;
}

}  // namespace depjump
