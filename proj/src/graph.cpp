#include "depjump/graph.hpp"

#include <algorithm>
#include <string>

#include "depjump/error.hpp"

namespace depjump {

void Bitset::set_all() noexcept {
  std::fill(words_.begin(), words_.end(), ~Word{0});
  if (const auto tail = bits_ % kWordBits; tail != 0 && !words_.empty()) {
    words_.back() = (Word{1} << tail) - 1;
  }
}

std::size_t Bitset::count() const noexcept {
  std::size_t c = 0;
  for (const Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t Bitset::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
  }
  return bits_;
}

Bitset& Bitset::operator&=(std::span<const Word> other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other[w];
  return *this;
}

Bitset& Bitset::and_not(std::span<const Word> other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other[w];
  return *this;
}

std::size_t Bitset::count_and(std::span<const Word> other) const noexcept {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    c += static_cast<std::size_t>(std::popcount(words_[w] & other[w]));
  }
  return c;
}

Graph::Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * stride_) {}

Graph::Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) {
    throw Error(ErrorKind::kInvalidArgument, "edge endpoint out of range: {" + std::to_string(u) +
                                                 "," + std::to_string(v) +
                                                 "} with n=" + std::to_string(n_));
  }
  if (u == v) throw Error(ErrorKind::kInvalidArgument, "self-loop at vertex " + std::to_string(u));
  bits_[u * stride_ + v / kWordBits] |= Word{1} << (v % kWordBits);
  bits_[v * stride_ + u / kWordBits] |= Word{1} << (u % kWordBits);
}

std::size_t Graph::degree(Vertex u) const noexcept {
  std::size_t d = 0;
  for (const Word w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  Graph sub(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (has_edge(vertices[a], vertices[b])) {
        sub.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
      }
    }
  }
  return sub;
}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] == vertices[b] || !g.has_edge(vertices[a], vertices[b])) {
        return false;
      }
    }
  }
  return true;
}

bool is_independent_set(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] == vertices[b] || g.has_edge(vertices[a], vertices[b])) {
        return false;
      }
    }
  }
  return true;
}

bool is_valid_coloring(const Graph& g, const Coloring& c) {
  if (c.color_of.size() != g.order()) return false;
  std::vector<bool> used(c.num_colors, false);
  for (const auto color : c.color_of) {
    if (color >= c.num_colors) return false;
    used[color] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) return false;
  for (const auto& [u, v] : g.edges()) {
    if (c.color_of[u] == c.color_of[v]) return false;
  }
  return true;
}

}  // namespace depjump
