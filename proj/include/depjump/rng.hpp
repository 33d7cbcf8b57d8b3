#pragma once

#include <cstdint>

// Counter-based randomness. Every random draw is a pure function of
// (seed, stream, index), so results never depend on draw order or on how
// work is split between threads.

namespace depjump::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Key of (seed, stream); hoist it out of loops that draw many indices.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ stream);
}

constexpr std::uint64_t mix_keyed(std::uint64_t key, std::uint64_t index) noexcept {
  return splitmix64(key ^ index);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) noexcept {
  return mix_keyed(stream_key(seed, stream), index);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) noexcept {
  return static_cast<double>(mix(seed, stream, index) >> 11) * 0x1.0p-53;
}

constexpr bool bernoulli(double p, std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t index) noexcept {
  return uniform01(seed, stream, index) < p;
}

/// Same draw as bernoulli(p, seed, stream, index) with key = stream_key(seed, stream).
constexpr bool bernoulli_keyed(double p, std::uint64_t key, std::uint64_t index) noexcept {
  return static_cast<double>(mix_keyed(key, index) >> 11) * 0x1.0p-53 < p;
}

/// Seed for trial `index` of an experiment run under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix(master, 0x747269616cULL, index);
}

// Named stream ids. Distinct constructions never share a stream.
inline constexpr std::uint64_t kStreamErdosRenyi = 1;
inline constexpr std::uint64_t kStreamVertexColor = 2;
inline constexpr std::uint64_t kStreamBlockLift = 3;
inline constexpr std::uint64_t kStreamXor = 4;
inline constexpr std::uint64_t kStreamEquality = 5;
inline constexpr std::uint64_t kStreamBipartiteH = 6;
inline constexpr std::uint64_t kStreamGeneral = 7;

/// Sequential view over a counter-based stream, for code that needs many
/// draws (subset sampling, random instances).
class Stream {
 public:
  constexpr Stream(std::uint64_t seed, std::uint64_t stream = kStreamGeneral)
      : seed_(seed), stream_(stream) {}

  constexpr std::uint64_t next_u64() noexcept {
    return mix(seed_, stream_, counter_++);
  }

  constexpr double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Multiply-shift reduction; bias is below
  /// 2^-32 for every bound used here.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    __extension__ using Wide = unsigned __int128;
    const auto wide = static_cast<Wide>(next_u64()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  constexpr bool bernoulli(double p) noexcept { return next_double() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace depjump::rng
