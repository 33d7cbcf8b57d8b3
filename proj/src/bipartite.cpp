#include "depjump/bipartite.hpp"

#include <bit>
#include <string>

#include "depjump/error.hpp"
#include "depjump/rng.hpp"

namespace depjump {

BipartiteH::BipartiteH(std::size_t n, double p_h, std::uint64_t seed)
    : n_(n), stride_(words_for(n)), p_h_(p_h), seed_(seed), bits_(n * stride_) {}

BipartiteH BipartiteH::complete(std::size_t n) {
  BipartiteH h(n, 1.0);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) h.add_edge(a, b);
  }
  return h;
}

void BipartiteH::add_edge(Vertex a, Vertex b) {
  if (a >= n_ || b >= n_) {
    throw Error(ErrorKind::kInvalidArgument,
                "H slot out of range: (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  bits_[a * stride_ + b / kWordBits] |= Word{1} << (b % kWordBits);
}

std::size_t BipartiteH::degree(Vertex a) const noexcept {
  std::size_t d = 0;
  for (const Word w : row(a)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t BipartiteH::max_degree() const noexcept {
  std::size_t best = 0;
  for (Vertex a = 0; a < n_; ++a) best = std::max(best, degree(a));
  return best;
}

std::size_t BipartiteH::edge_count() const noexcept {
  std::size_t total = 0;
  for (const Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<Vertex> BipartiteH::neighbors(Vertex a) const {
  std::vector<Vertex> out;
  Bitset(n_, row(a)).for_each([&](std::size_t b) { out.push_back(static_cast<Vertex>(b)); });
  return out;
}

BipartiteH sample_h(std::size_t n, double p_h, std::uint64_t seed) {
  require(p_h >= 0.0 && p_h <= 1.0, ErrorKind::kInvalidArgument,
          "p_H must lie in [0, 1], got " + std::to_string(p_h));
  BipartiteH h(n, p_h, seed);
  const auto key = rng::stream_key(seed, rng::kStreamBipartiteH);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (rng::bernoulli_keyed(p_h, key, static_cast<std::uint64_t>(a) * n + b)) h.add_edge(a, b);
    }
  }
  return h;
}

Graph build_gfh(const BipartiteH& h, std::span<const Vertex> f) {
  const auto n = h.n();
  require(f.size() == n, ErrorKind::kInvalidArgument,
          "function length " + std::to_string(f.size()) + " != n=" + std::to_string(n));
  for (const Vertex v : f) {
    if (v >= n) {
      throw Error(ErrorKind::kInvalidArgument, "function value " + std::to_string(v) + " out of range");
    }
  }
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (h.has_edge(i, f[j]) && h.has_edge(j, f[i])) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace depjump
