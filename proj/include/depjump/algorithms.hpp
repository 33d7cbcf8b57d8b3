#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "depjump/graph.hpp"

namespace depjump {

/// Default vertex-count ceiling for max_clique_exact.
inline constexpr std::size_t kExactCliqueLimit = 48;

Graph complement(const Graph& g);

struct BipartiteResult {
  bool bipartite = false;
  /// Side (0/1) per vertex when bipartite.
  std::vector<std::uint8_t> side;
  /// Closed odd walk v0, v1, ..., v_{2k} (edge back to v0 implied) otherwise.
  std::vector<Vertex> odd_cycle;
};

BipartiteResult is_bipartite(const Graph& g);

/// Maximum clique by colour-bounded branch and bound. Throws
/// ErrorKind::kSizeLimitExceeded when g.order() > limit.
VertexSet max_clique_exact(const Graph& g, std::size_t limit = kExactCliqueLimit);

/// Scans `order` and keeps each vertex adjacent to everything kept so far.
VertexSet greedy_clique(const Graph& g, std::span<const Vertex> order);
VertexSet greedy_clique(const Graph& g);

struct GreedyColorStats {
  /// Batch colour classes that came out smaller than k_target.
  std::size_t short_classes = 0;
  std::size_t batch_classes = 0;
  std::size_t leftover_classes = 0;
};

/// Batched greedy colouring. While at least `m` vertices are uncoloured, the
/// m lowest-indexed uncoloured vertices form a batch and a maximal independent
/// set is peeled from it by repeatedly taking a minimum-degree vertex
/// (lowest index on ties) and discarding its neighbours; that set becomes one
/// colour class. Remaining vertices each get a fresh colour.
/// With `extend`, each class is then grown to a maximal independent set by
/// scanning the uncoloured vertices outside the batch in index order.
Coloring greedy_color(const Graph& g, std::size_t m, std::size_t k_target,
                      GreedyColorStats* stats = nullptr, bool extend = false);

/// Partition of the vertices into cliques of g, obtained by greedy-colouring
/// the complement. Deterministic in (g, m, k_target, extend).
std::vector<VertexSet> clique_cover(const Graph& g, std::size_t m,
                                    std::size_t k_target, bool extend = false);

}  // namespace depjump
