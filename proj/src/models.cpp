#include "depjump/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depjump/error.hpp"
#include "depjump/rng.hpp"

namespace depjump {

namespace {

void require_probability(double p) {
  require(p >= 0.0 && p <= 1.0 && !std::isnan(p), ErrorKind::kInvalidArgument,
          "p must lie in [0, 1], got " + std::to_string(p));
}

std::size_t exact_sqrt(std::size_t d) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kErdosRenyi: return "ErdosRenyi";
    case Variant::kVertexColorAnd: return "VertexColorAnd";
    case Variant::kBlockLift: return "BlockLift";
    case Variant::kXorBipartite: return "XorBipartite";
    case Variant::kEqualityClique: return "EqualityClique";
    case Variant::kProtocolInduced: return "ProtocolInduced";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  for (const auto v : {Variant::kErdosRenyi, Variant::kVertexColorAnd, Variant::kBlockLift,
                       Variant::kXorBipartite, Variant::kEqualityClique,
                       Variant::kProtocolInduced}) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown model variant '" + std::string(name) + "'");
}

EdgeSlot slot_of(std::size_t n, Vertex u, Vertex v) {
  require(u != v && u < n && v < n, ErrorKind::kInvalidArgument, "invalid vertex pair for slot");
  if (u > v) std::swap(u, v);
  const std::uint64_t row = u;
  return {row * (2 * n - row - 1) / 2 + (v - u - 1)};
}

std::pair<Vertex, Vertex> endpoints(std::size_t n, EdgeSlot slot) {
  require(slot.index < slot_count(n), ErrorKind::kInvalidArgument, "edge slot out of range");
  // Row u starts at u(2n-u-1)/2; invert with a float estimate, then fix up.
  auto row_start = [n](std::uint64_t u) { return u * (2 * n - u - 1) / 2; };
  const double nn = static_cast<double>(n) - 0.5;
  const double est = nn - std::sqrt(nn * nn - 2.0 * static_cast<double>(slot.index));
  auto u = static_cast<std::uint64_t>(std::max(0.0, std::floor(est)));
  while (u > 0 && row_start(u) > slot.index) --u;
  while (u + 1 < n && row_start(u + 1) <= slot.index) ++u;
  return {static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + (slot.index - row_start(u)))};
}

DependentModel DependentModel::erdos_renyi(std::size_t n, double p) {
  require_probability(p);
  DependentModel m(Variant::kErdosRenyi, n, p);
  m.latent_p_ = p;
  return m;
}

DependentModel DependentModel::vertex_color_and(std::size_t n, double p, std::size_t d) {
  require_probability(p);
  require(d >= 2 && d % 2 == 0, ErrorKind::kInvalidArgument,
          "VertexColorAnd needs even d >= 2, got d=" + std::to_string(d));
  require(n % (d / 2) == 0, ErrorKind::kInvalidArgument,
          "VertexColorAnd needs d/2 to divide n (n=" + std::to_string(n) +
              ", d=" + std::to_string(d) + ")");
  DependentModel m(Variant::kVertexColorAnd, n, p);
  m.d_ = d;
  m.block_ = d / 2;
  m.latent_p_ = std::sqrt(p);
  return m;
}

DependentModel DependentModel::block_lift(std::size_t n, double p, std::size_t d) {
  require_probability(p);
  const auto root = exact_sqrt(d);
  require(d >= 1 && root * root == d, ErrorKind::kInvalidArgument,
          "BlockLift needs d to be a perfect square, got d=" + std::to_string(d));
  require(n % root == 0, ErrorKind::kInvalidArgument,
          "BlockLift needs sqrt(d) to divide n (n=" + std::to_string(n) +
              ", d=" + std::to_string(d) + ")");
  DependentModel m(Variant::kBlockLift, n, p);
  m.d_ = d;
  m.block_ = root;
  m.latent_p_ = p;
  return m;
}

DependentModel DependentModel::xor_bipartite(std::size_t n, double p) {
  require_probability(p);
  DependentModel m(Variant::kXorBipartite, n, p);
  m.latent_p_ = 1.0 - std::sqrt(1.0 - p);
  return m;
}

DependentModel DependentModel::equality_clique(std::size_t n, double p) {
  require_probability(p);
  require(p >= 0.5, ErrorKind::kInvalidArgument,
          "p must be >= 1/2 for EqualityClique, got " + std::to_string(p));
  DependentModel m(Variant::kEqualityClique, n, p);
  m.latent_p_ = (1.0 - std::sqrt(2.0 * p - 1.0)) / 2.0;
  return m;
}

DependentModel DependentModel::protocol_induced(BipartiteH h, std::vector<Vertex> f) {
  const auto n = h.n();
  require(f.size() == n, ErrorKind::kInvalidArgument,
          "ProtocolInduced needs |f| = n (" + std::to_string(f.size()) + " vs " +
              std::to_string(n) + ")");
  std::vector<std::size_t> preimage(n, 0);
  for (const Vertex y : f) {
    if (y >= n) {
      throw Error(ErrorKind::kInvalidArgument,
                  "ProtocolInduced f value out of range: " + std::to_string(y));
    }
    ++preimage[y];
  }
  DependentModel m(Variant::kProtocolInduced, n, h.density());
  m.d_ = n == 0 ? 0 : *std::max_element(preimage.begin(), preimage.end());
  m.latent_p_ = h.density();
  m.protocol_ = std::make_shared<const Protocol>(
      Protocol{std::move(h), std::move(f), std::move(preimage)});
  return m;
}

const BipartiteH& DependentModel::h() const {
  require(protocol_ != nullptr, ErrorKind::kInvalidArgument, "model has no H");
  return protocol_->h;
}

const std::vector<Vertex>& DependentModel::f() const {
  require(protocol_ != nullptr, ErrorKind::kInvalidArgument, "model has no f");
  return protocol_->f;
}

std::size_t DependentModel::preimage_size(Vertex y) const {
  require(protocol_ != nullptr, ErrorKind::kInvalidArgument, "model has no f");
  return protocol_->preimage[y];
}

DependentModel::LatentKeys DependentModel::latent_keys(Vertex u, Vertex v) const {
  const std::uint64_t n = n_;
  LatentKeys out;
  switch (variant_) {
    case Variant::kErdosRenyi:
      out.keys[0] = slot_of(n_, u, v).index;
      out.size = 1;
      break;
    case Variant::kVertexColorAnd: {
      const std::uint64_t blocks = block_count();
      out.keys = {u * blocks + block_of(v), v * blocks + block_of(u)};
      out.size = 2;
      break;
    }
    case Variant::kBlockLift: {
      const std::uint64_t blocks = block_count();
      const auto bu = block_of(u);
      const auto bv = block_of(v);
      const auto lo = std::min(bu, bv);
      const auto hi = std::max(bu, bv);
      out.keys[0] = lo * blocks + hi;
      out.size = 1;
      break;
    }
    case Variant::kXorBipartite:
    case Variant::kEqualityClique:
      out.keys = {u, v};
      out.size = 2;
      break;
    case Variant::kProtocolInduced: {
      const auto& f = protocol_->f;
      out.keys = {u * n + f[v], v * n + f[u]};
      out.size = 2;
      break;
    }
  }
  return out;
}

Graph sample(const DependentModel& model, std::uint64_t seed) {
  const auto n = model.n();
  Graph g(n);
  const double q = model.latent_probability();
  switch (model.variant()) {
    case Variant::kErdosRenyi: {
      const auto key = rng::stream_key(seed, rng::kStreamErdosRenyi);
      std::uint64_t slot = 0;
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v, ++slot) {
          if (rng::bernoulli_keyed(q, key, slot)) g.add_edge(u, v);
        }
      }
      break;
    }
    case Variant::kVertexColorAnd: {
      const auto blocks = model.block_count();
      std::vector<std::uint8_t> x(n * blocks);
      for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = rng::bernoulli(q, seed, rng::kStreamVertexColor, k);
      }
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (x[u * blocks + model.block_of(v)] && x[v * blocks + model.block_of(u)]) {
            g.add_edge(u, v);
          }
        }
      }
      break;
    }
    case Variant::kBlockLift: {
      const auto blocks = model.block_count();
      std::vector<std::uint8_t> x(blocks * blocks);
      for (std::size_t s = 0; s < blocks; ++s) {
        for (std::size_t t = s; t < blocks; ++t) {
          x[s * blocks + t] = x[t * blocks + s] =
              rng::bernoulli(q, seed, rng::kStreamBlockLift, s * blocks + t);
        }
      }
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (x[model.block_of(u) * blocks + model.block_of(v)]) g.add_edge(u, v);
        }
      }
      break;
    }
    case Variant::kXorBipartite:
    case Variant::kEqualityClique: {
      const bool is_xor = model.variant() == Variant::kXorBipartite;
      const auto stream = is_xor ? rng::kStreamXor : rng::kStreamEquality;
      std::vector<std::uint8_t> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = rng::bernoulli(q, seed, stream, i);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if ((x[u] != x[v]) == is_xor) g.add_edge(u, v);
        }
      }
      break;
    }
    case Variant::kProtocolInduced:
      return build_gfh(model.h(), model.f());
  }
  return g;
}

double marginal_edge_probability(const DependentModel& model) {
  const double q = model.latent_probability();
  switch (model.variant()) {
    case Variant::kErdosRenyi:
    case Variant::kBlockLift:
      return model.p();
    case Variant::kVertexColorAnd:
      return q * q;
    case Variant::kXorBipartite:
      return 2.0 * q * (1.0 - q);
    case Variant::kEqualityClique:
      return q * q + (1.0 - q) * (1.0 - q);
    case Variant::kProtocolInduced:
      return model.p() * model.p();
  }
  return 0.0;
}

DependencyGraph::DependencyGraph(DependentModel model) : model_(std::move(model)) {
  const auto n = model_.n();
  switch (model_.variant()) {
    case Variant::kErdosRenyi:
      max_degree_ = 0;
      break;
    case Variant::kXorBipartite:
    case Variant::kEqualityClique:
      max_degree_ = n >= 3 ? 2 * (n - 2) : 0;
      break;
    default:
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          max_degree_ = std::max(max_degree_, pair_degree(u, v));
        }
      }
  }
}

std::uint64_t DependencyGraph::slot_count() const noexcept {
  return depjump::slot_count(model_.n());
}

bool DependencyGraph::adjacent(EdgeSlot a, EdgeSlot b) const {
  if (a == b) return false;
  const auto n = model_.n();
  const auto [u1, v1] = endpoints(n, a);
  const auto [u2, v2] = endpoints(n, b);
  const auto ka = model_.latent_keys(u1, v1);
  const auto kb = model_.latent_keys(u2, v2);
  for (std::size_t i = 0; i < ka.size; ++i) {
    for (std::size_t j = 0; j < kb.size; ++j) {
      if (ka.keys[i] == kb.keys[j]) return true;
    }
  }
  return false;
}

std::vector<EdgeSlot> DependencyGraph::neighbors(EdgeSlot e) const {
  const auto n = model_.n();
  const auto [i, j] = endpoints(n, e);
  std::vector<EdgeSlot> out;
  auto add = [&](Vertex a, Vertex b) {
    if (a == b) return;
    const auto s = slot_of(n, a, b);
    if (s != e) out.push_back(s);
  };
  switch (model_.variant()) {
    case Variant::kErdosRenyi:
      break;
    case Variant::kXorBipartite:
    case Variant::kEqualityClique:
      for (Vertex w = 0; w < n; ++w) {
        if (w != i && w != j) {
          add(i, w);
          add(j, w);
        }
      }
      break;
    case Variant::kVertexColorAnd: {
      const auto size = model_.block_size();
      for (std::size_t k = 0; k < size; ++k) {
        const auto in_j = static_cast<Vertex>(model_.block_of(j) * size + k);
        const auto in_i = static_cast<Vertex>(model_.block_of(i) * size + k);
        if (in_j != j) add(i, in_j);
        if (in_i != i) add(j, in_i);
      }
      break;
    }
    case Variant::kBlockLift: {
      const auto size = model_.block_size();
      const auto bi = model_.block_of(i);
      const auto bj = model_.block_of(j);
      for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
          const auto a = static_cast<Vertex>(bi * size + x);
          const auto b = static_cast<Vertex>(bj * size + y);
          if (bi == bj && a >= b) continue;
          add(a, b);
        }
      }
      break;
    }
    case Variant::kProtocolInduced: {
      const auto& f = model_.f();
      for (Vertex w = 0; w < n; ++w) {
        if (w != j && f[w] == f[j]) add(i, w);
        if (w != i && f[w] == f[i]) add(j, w);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t DependencyGraph::degree(EdgeSlot e) const {
  const auto [i, j] = endpoints(model_.n(), e);
  return pair_degree(i, j);
}

std::size_t DependencyGraph::pair_degree(Vertex i, Vertex j) const {
  const auto n = model_.n();
  switch (model_.variant()) {
    case Variant::kErdosRenyi:
      return 0;
    case Variant::kXorBipartite:
    case Variant::kEqualityClique:
      return 2 * (n - 2);
    case Variant::kVertexColorAnd: {
      const auto h = model_.block_size();
      return model_.block_of(i) == model_.block_of(j) ? 2 * (h - 2) : 2 * (h - 1);
    }
    case Variant::kBlockLift: {
      const auto b = model_.block_size();
      return model_.block_of(i) == model_.block_of(j) ? b * (b - 1) / 2 - 1 : b * b - 1;
    }
    case Variant::kProtocolInduced: {
      const auto& f = model_.f();
      const std::size_t same = f[i] == f[j] ? 1 : 0;
      return (model_.preimage_size(f[j]) - 1 - same) + (model_.preimage_size(f[i]) - 1 - same);
    }
  }
  return 0;
}

std::size_t DependencyGraph::degree_bound() const noexcept {
  const auto n = model_.n();
  switch (model_.variant()) {
    case Variant::kErdosRenyi: return 0;
    case Variant::kVertexColorAnd: return model_.d();
    case Variant::kBlockLift: return model_.d() - 1;
    case Variant::kXorBipartite:
    case Variant::kEqualityClique: return n >= 1 ? 2 * n - 2 : 0;
    case Variant::kProtocolInduced: return model_.d() >= 1 ? 2 * model_.d() - 2 : 0;
  }
  return 0;
}

DependencyGraph dependency_graph(const DependentModel& model) {
  return DependencyGraph(model);
}

bool is_uncorrelated(const DependentModel& model, const VertexSet& s) {
  require(s.size() >= 2, ErrorKind::kInvalidArgument, "is_uncorrelated needs |s| >= 2");
  require(s.members().back() < model.n(), ErrorKind::kInvalidArgument,
          "vertex set member out of range");
  std::vector<DependentModel::LatentKeys> keys;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) keys.push_back(model.latent_keys(s[a], s[b]));
  }
  for (std::size_t x = 0; x < keys.size(); ++x) {
    for (std::size_t y = x + 1; y < keys.size(); ++y) {
      for (std::size_t i = 0; i < keys[x].size; ++i) {
        for (std::size_t j = 0; j < keys[y].size; ++j) {
          if (keys[x].keys[i] == keys[y].keys[j]) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace depjump
