#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depjump/bipartite.hpp"
#include "depjump/graph.hpp"

namespace depjump {

enum class Variant {
  kErdosRenyi,
  kVertexColorAnd,
  kBlockLift,
  kXorBipartite,
  kEqualityClique,
  kProtocolInduced,
};

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

/// Index of an unordered vertex pair in row-major order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1).
struct EdgeSlot {
  std::uint64_t index = 0;
  friend auto operator<=>(const EdgeSlot&, const EdgeSlot&) = default;
};

constexpr std::uint64_t slot_count(std::size_t n) noexcept {
  return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
}
EdgeSlot slot_of(std::size_t n, Vertex u, Vertex v);
std::pair<Vertex, Vertex> endpoints(std::size_t n, EdgeSlot slot);

/// Immutable generative model for a d-dependent random graph. Construct via
/// the named factories, which validate the variant's parameter invariants.
class DependentModel {
 public:
  static DependentModel erdos_renyi(std::size_t n, double p);
  /// Blocks of size d/2; latent X_{i,c} ~ Bernoulli(sqrt p); edge iff
  /// X_{i,c(j)} and X_{j,c(i)}.
  static DependentModel vertex_color_and(std::size_t n, double p, std::size_t d);
  /// Blocks of size sqrt d; symmetric latent X_{s,t} ~ Bernoulli(p); edge iff
  /// X_{c(i),c(j)}.
  static DependentModel block_lift(std::size_t n, double p, std::size_t d);
  /// Latent X_i ~ Bernoulli(1 - sqrt(1-p)); edge iff X_i xor X_j.
  static DependentModel xor_bipartite(std::size_t n, double p);
  /// Latent X_i ~ Bernoulli((1 - sqrt(2p-1))/2); edge iff X_i == X_j.
  static DependentModel equality_clique(std::size_t n, double p);
  /// G_{f,H} for a fixed H and f. Sampling ignores the seed.
  static DependentModel protocol_induced(BipartiteH h, std::vector<Vertex> f);

  Variant variant() const noexcept { return variant_; }
  std::size_t n() const noexcept { return n_; }
  /// Target parameter p (for ProtocolInduced, H's density).
  double p() const noexcept { return p_; }
  /// Dependency budget parameter (VertexColorAnd/BlockLift), or the preimage
  /// bound d_f for ProtocolInduced; 0 otherwise.
  std::size_t d() const noexcept { return d_; }
  const BipartiteH& h() const;
  const std::vector<Vertex>& f() const;

  /// Vertices per block for VertexColorAnd/BlockLift.
  std::size_t block_size() const noexcept { return block_; }
  Vertex block_of(Vertex v) const noexcept { return static_cast<Vertex>(v / block_); }
  std::size_t block_count() const noexcept { return block_ ? n_ / block_ : 0; }
  /// Success probability of each latent bit.
  double latent_probability() const noexcept { return latent_p_; }

  /// Up to two keys naming the latent variables an edge slot reads. Two slots
  /// are dependent iff their key sets intersect.
  struct LatentKeys {
    std::array<std::uint64_t, 2> keys{};
    std::size_t size = 0;
  };
  LatentKeys latent_keys(Vertex u, Vertex v) const;

  /// |f^{-1}(y)| for ProtocolInduced.
  std::size_t preimage_size(Vertex y) const;

 private:
  struct Protocol {
    BipartiteH h;
    std::vector<Vertex> f;
    std::vector<std::size_t> preimage;
  };

  DependentModel(Variant v, std::size_t n, double p) : variant_(v), n_(n), p_(p) {}

  Variant variant_;
  std::size_t n_;
  double p_;
  std::size_t d_ = 0;
  std::size_t block_ = 0;
  double latent_p_ = 0.0;
  std::shared_ptr<const Protocol> protocol_;
};

Graph sample(const DependentModel& model, std::uint64_t seed);

double marginal_edge_probability(const DependentModel& model);

/// Dependency graph over edge slots, induced by shared latent variables.
/// Implicit: adjacency is answered from the model's structure, so it stays
/// cheap at n in the thousands.
class DependencyGraph {
 public:
  explicit DependencyGraph(DependentModel model);

  const DependentModel& model() const noexcept { return model_; }
  std::uint64_t slot_count() const noexcept;
  bool adjacent(EdgeSlot a, EdgeSlot b) const;
  std::vector<EdgeSlot> neighbors(EdgeSlot e) const;
  std::size_t degree(EdgeSlot e) const;
  std::size_t max_degree() const noexcept { return max_degree_; }
  /// Upper bound on max_degree promised by the construction.
  std::size_t degree_bound() const noexcept;

 private:
  std::size_t pair_degree(Vertex i, Vertex j) const;

  DependentModel model_;
  std::size_t max_degree_ = 0;
};

DependencyGraph dependency_graph(const DependentModel& model);

/// True iff no two distinct edge slots inside s are dependent. Requires
/// |s| >= 2.
bool is_uncorrelated(const DependentModel& model, const VertexSet& s);

}  // namespace depjump
