#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace depjump {

using Vertex = std::uint32_t;
using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Heap-backed bitset sized at runtime. Used for adjacency rows and for
/// candidate sets inside the clique and colouring searches.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_(words_for(bits)) {}
  Bitset(std::size_t bits, std::span<const Word> words)
      : bits_(bits), words_(words.begin(), words.end()) {}

  std::size_t size() const noexcept { return bits_; }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept {
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }
  void set_all() noexcept;

  std::size_t count() const noexcept;
  bool none() const noexcept;
  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const noexcept;

  Bitset& operator&=(std::span<const Word> other) noexcept;
  Bitset& and_not(std::span<const Word> other) noexcept;
  std::size_t count_and(std::span<const Word> other) const noexcept;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word word = words_[w];
      while (word != 0) {
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

/// Undirected simple graph on vertices 0..n-1, stored as adjacency bitset
/// rows. Edge queries are O(1) and symmetric by construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  static Graph complete(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept;

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return (bits_[u * stride_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }
  /// Adds {u,v}. Self-loops are rejected; duplicates are idempotent.
  void add_edge(Vertex u, Vertex v);

  std::span<const Word> row(Vertex u) const noexcept {
    return {bits_.data() + u * stride_, stride_};
  }
  std::size_t degree(Vertex u) const noexcept;

  /// All edges as (u, v) with u < v, in row-major order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  Graph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates.
  explicit VertexSet(std::vector<Vertex> members);
  VertexSet(std::initializer_list<Vertex> members)
      : VertexSet(std::vector<Vertex>(members)) {}

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const noexcept;
  std::span<const Vertex> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Vertex operator[](std::size_t i) const noexcept { return members_[i]; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Vertex colouring with contiguous colour ids 0..num_colors-1.
struct Coloring {
  std::vector<std::uint32_t> color_of;
  std::uint32_t num_colors = 0;
};

bool is_clique(const Graph& g, std::span<const Vertex> vertices);
bool is_independent_set(const Graph& g, std::span<const Vertex> vertices);
/// Checks properness and that the ids used are exactly 0..num_colors-1.
bool is_valid_coloring(const Graph& g, const Coloring& c);

}  // namespace depjump
