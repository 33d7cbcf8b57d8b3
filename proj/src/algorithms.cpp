#include "depjump/algorithms.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "depjump/error.hpp"

namespace depjump {

Graph complement(const Graph& g) {
  const auto n = g.order();
  Graph out(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

BipartiteResult is_bipartite(const Graph& g) {
  const auto n = g.order();
  constexpr std::uint8_t kUnseen = 2;
  std::vector<std::uint8_t> side(n, kUnseen);
  std::vector<Vertex> parent(n);
  std::vector<std::size_t> depth(n, 0);

  for (Vertex root = 0; root < n; ++root) {
    if (side[root] != kUnseen) continue;
    side[root] = 0;
    parent[root] = root;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      Bitset nbrs(n, g.row(u));
      Vertex bad = static_cast<Vertex>(n);
      nbrs.for_each([&](std::size_t w) {
        const auto v = static_cast<Vertex>(w);
        if (bad != n) return;
        if (side[v] == kUnseen) {
          side[v] = static_cast<std::uint8_t>(1 - side[u]);
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          bad = v;
        }
      });
      if (bad == n) continue;

      // u and bad sit at equal parity in the BFS tree; their tree paths to
      // the common ancestor plus the edge (u, bad) close an odd cycle.
      std::vector<Vertex> left{u};
      std::vector<Vertex> right{bad};
      Vertex a = u;
      Vertex b = bad;
      while (depth[a] > depth[b]) left.push_back(a = parent[a]);
      while (depth[b] > depth[a]) right.push_back(b = parent[b]);
      while (a != b) {
        left.push_back(a = parent[a]);
        right.push_back(b = parent[b]);
      }
      right.pop_back();  // ancestor already ends `left`
      BipartiteResult res;
      res.odd_cycle = std::move(left);
      res.odd_cycle.insert(res.odd_cycle.end(), right.rbegin(), right.rend());
      return res;
    }
  }
  BipartiteResult res;
  res.bipartite = true;
  res.side = std::move(side);
  return res;
}

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  std::vector<Vertex> run() {
    Bitset all(g_.order());
    all.set_all();
    expand(all);
    return best_;
  }

 private:
  // Sequential greedy colouring of the candidates; colour numbers bound the
  // clique size reachable from each candidate.
  void colour_order(const Bitset& candidates, std::vector<Vertex>& order,
                    std::vector<std::size_t>& bounds) const {
    Bitset uncoloured = candidates;
    std::size_t colour = 0;
    while (!uncoloured.none()) {
      ++colour;
      Bitset open = uncoloured;
      while (!open.none()) {
        const auto v = static_cast<Vertex>(open.first());
        open.reset(v);
        open.and_not(g_.row(v));
        uncoloured.reset(v);
        order.push_back(v);
        bounds.push_back(colour);
      }
    }
  }

  void expand(Bitset candidates) {
    std::vector<Vertex> order;
    std::vector<std::size_t> bounds;
    colour_order(candidates, order, bounds);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (current_.size() + bounds[idx] <= best_.size()) return;
      const Vertex v = order[idx];
      current_.push_back(v);
      Bitset next = candidates;
      next &= g_.row(v);
      if (next.none()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      candidates.reset(v);
    }
  }

  const Graph& g_;
  std::vector<Vertex> current_;
  std::vector<Vertex> best_;
};

}  // namespace

VertexSet max_clique_exact(const Graph& g, std::size_t limit) {
  require(g.order() <= limit, ErrorKind::kSizeLimitExceeded,
          "exact clique search refused: n=" + std::to_string(g.order()) +
              " exceeds limit " + std::to_string(limit));
  if (g.order() == 0) return {};
  return VertexSet(CliqueSearch(g).run());
}

VertexSet greedy_clique(const Graph& g, std::span<const Vertex> order) {
  std::vector<Vertex> members;
  for (const Vertex v : order) {
    const bool joins = std::all_of(members.begin(), members.end(),
                                   [&](Vertex u) { return g.has_edge(u, v); });
    if (joins) members.push_back(v);
  }
  return VertexSet(std::move(members));
}

VertexSet greedy_clique(const Graph& g) {
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), Vertex{0});
  return greedy_clique(g, order);
}

namespace {

// The m lowest-indexed members of `from`.
Bitset lowest_members(const Bitset& from, std::size_t m) {
  Bitset out(from.size());
  auto words = out.words();
  const auto src = from.words();
  for (std::size_t w = 0; w < src.size() && m != 0; ++w) {
    Word word = src[w];
    while (word != 0 && m != 0) {
      const Word low = word & (~word + 1);
      words[w] |= low;
      word ^= low;
      --m;
    }
  }
  return out;
}

// Maximal independent set inside `alive` by the minimum-degree rule (degree
// counted within the still-alive vertices, lowest index on ties).
std::vector<Vertex> min_degree_independent_set(const Graph& g, Bitset alive) {
  std::vector<Vertex> picked;
  while (!alive.none()) {
    auto best = static_cast<Vertex>(alive.size());
    std::size_t best_degree = alive.size() + 1;
    alive.for_each([&](std::size_t v) {
      const auto deg = alive.count_and(g.row(static_cast<Vertex>(v)));
      if (deg < best_degree) {
        best_degree = deg;
        best = static_cast<Vertex>(v);
      }
    });
    picked.push_back(best);
    alive.reset(best);
    alive.and_not(g.row(best));
  }
  return picked;
}

}  // namespace

Coloring greedy_color(const Graph& g, std::size_t m, std::size_t k_target,
                      GreedyColorStats* stats, bool extend) {
  const auto n = g.order();
  require(n == 0 || (m >= 1 && m <= n), ErrorKind::kInvalidArgument,
          "greedy_color needs 1 <= m <= n (m=" + std::to_string(m) +
              ", n=" + std::to_string(n) + ")");
  require(k_target >= 1, ErrorKind::kInvalidArgument, "greedy_color needs k_target >= 1");

  constexpr auto kUncoloured = ~std::uint32_t{0};
  Coloring c;
  c.color_of.assign(n, kUncoloured);
  GreedyColorStats local_stats;

  Bitset uncoloured(n);
  uncoloured.set_all();
  std::size_t remaining = n;

  while (n != 0 && remaining >= m) {
    const auto window = lowest_members(uncoloured, m);
    auto chosen = min_degree_independent_set(g, window);
    if (extend) {
      Bitset outside = uncoloured;
      outside.and_not(window.words());
      for (const Vertex v : chosen) outside.and_not(g.row(v));
      while (!outside.none()) {
        const auto v = static_cast<Vertex>(outside.first());
        chosen.push_back(v);
        outside.reset(v);
        outside.and_not(g.row(v));
      }
    }
    for (const Vertex v : chosen) {
      c.color_of[v] = c.num_colors;
      uncoloured.reset(v);
    }
    remaining -= chosen.size();
    ++c.num_colors;
    ++local_stats.batch_classes;
    if (chosen.size() < k_target) ++local_stats.short_classes;
  }
  uncoloured.for_each([&](std::size_t v) {
    c.color_of[v] = c.num_colors++;
    ++local_stats.leftover_classes;
  });
  if (stats != nullptr) *stats = local_stats;
  return c;
}

std::vector<VertexSet> clique_cover(const Graph& g, std::size_t m, std::size_t k_target,
                                    bool extend) {
  const auto colouring = greedy_color(complement(g), m, k_target, nullptr, extend);
  std::vector<std::vector<Vertex>> parts(colouring.num_colors);
  for (Vertex v = 0; v < g.order(); ++v) parts[colouring.color_of[v]].push_back(v);
  std::vector<VertexSet> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.emplace_back(std::move(part));
  return out;
}

}  // namespace depjump
