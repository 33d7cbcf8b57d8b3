#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "depjump/graph.hpp"

namespace depjump {

/// Bipartite protocol parameter graph H = (A u B, E) with |A| = |B| = n.
/// Row a holds the B-side neighbours of a in A.
class BipartiteH {
 public:
  BipartiteH() = default;
  /// Empty H with nominal density p_h.
  explicit BipartiteH(std::size_t n, double p_h = 0.0, std::uint64_t seed = 0);

  static BipartiteH complete(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double density() const noexcept { return p_h_; }
  std::uint64_t seed() const noexcept { return seed_; }

  bool has_edge(Vertex a, Vertex b) const noexcept {
    return (bits_[a * stride_ + b / kWordBits] >> (b % kWordBits)) & 1U;
  }
  void add_edge(Vertex a, Vertex b);

  std::span<const Word> row(Vertex a) const noexcept {
    return {bits_.data() + a * stride_, stride_};
  }
  std::size_t degree(Vertex a) const noexcept;
  std::size_t max_degree() const noexcept;
  std::size_t edge_count() const noexcept;
  /// B-side neighbours of a, increasing.
  std::vector<Vertex> neighbors(Vertex a) const;

  friend bool operator==(const BipartiteH&, const BipartiteH&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  double p_h_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<Word> bits_;
};

/// Every slot (a, b) present independently with probability p_h.
BipartiteH sample_h(std::size_t n, double p_h, std::uint64_t seed);

/// G_{f,H}: {i, j} is an edge iff (i, f(j)) and (j, f(i)) are both in H.
Graph build_gfh(const BipartiteH& h, std::span<const Vertex> f);

}  // namespace depjump
