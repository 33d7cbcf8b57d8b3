#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "depjump/algorithms.hpp"
#include "depjump/error.hpp"
#include "depjump/estimators.hpp"
#include "depjump/models.hpp"
#include "depjump/rng.hpp"

using namespace depjump;

namespace {

unsigned workers() { return std::max(2U, std::thread::hardware_concurrency()); }

Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

// Every k-subset as a bitmask, in increasing numeric order.
std::vector<std::uint32_t> masks_of_size(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == k) out.push_back(m);
  }
  return out;
}

std::vector<Vertex> members(std::uint32_t mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; mask >> v; ++v) {
    if (mask >> v & 1U) out.push_back(v);
  }
  return out;
}

std::vector<std::uint32_t> brute_cliques(const Graph& g, const DependentModel& m, std::size_t k) {
  std::vector<std::uint32_t> out;
  for (const auto mask : masks_of_size(g.order(), k)) {
    const auto vs = members(mask);
    if (is_clique(g, vs) && is_uncorrelated(m, VertexSet(vs))) out.push_back(mask);
  }
  return out;
}

}  // namespace

TEST_CASE("trial runner") {
  const auto fn = [](std::uint64_t s) { return static_cast<double>(s % 1000); };
  const auto one = run_trials(500, 9, 1, fn);
  CHECK(one.size() == 500);
  CHECK(run_trials(500, 9, 4, fn) == one);
  CHECK(run_trials(500, 9, 17, fn) == one);
  CHECK(run_trials(500, 10, 1, fn) != one);
  CHECK(run_trials(0, 9, 4, fn).empty());
}

TEST_CASE("reports") {
  const auto r = make_report("{}", "x", 3, {1.0, 2.0, 2.0, 5.0});
  CHECK(r.trials == 4);
  CHECK(r.mean == doctest::Approx(2.5));
  CHECK(r.min == 1.0);
  CHECK(r.max == 5.0);
  CHECK(r.histogram.at(2) == 2);
  std::size_t mass = 0;
  for (const auto& [value, count] : r.histogram) mass += count;
  CHECK(mass == 4);
}

TEST_CASE("clique distributions") {
  SUBCASE("complete samples") {
    const auto r = clique_distribution(DependentModel::erdos_renyi(10, 1.0), 20, 1, CliqueMethod::kExact);
    CHECK(r.histogram.size() == 1);
    CHECK(r.histogram.at(10) == 20);
    CHECK(r.statistic == "omega");
  }
  SUBCASE("greedy never beats exact on the same samples") {
    for (const auto& m : {DependentModel::erdos_renyi(24, 0.5), DependentModel::vertex_color_and(24, 0.4, 8),
                          DependentModel::block_lift(24, 0.6, 16), DependentModel::xor_bipartite(24, 0.5)}) {
      const auto exact = clique_distribution(m, 100, 5, CliqueMethod::kExact);
      const auto greedy = clique_distribution(m, 100, 5, CliqueMethod::kGreedy);
      for (std::size_t t = 0; t < 100; ++t) {
        CHECK(greedy.values[t] <= exact.values[t]);
        CHECK(exact.values[t] == static_cast<double>(max_clique_exact(sample(m, rng::derive_seed(5, t))).size()));
      }
    }
  }
  SUBCASE("greedy on G(1024, 1/2) concentrates near log2 n") {
    const auto r = clique_distribution(DependentModel::erdos_renyi(1024, 0.5), 1000, 2, CliqueMethod::kGreedy,
                                       {workers(), kExactCliqueLimit});
    const auto mode = std::max_element(r.histogram.begin(), r.histogram.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; })->first;
    CHECK(mode >= 7);
    CHECK(mode <= 13);
    const auto med = static_cast<long long>(r.median);
    std::size_t near = 0;
    for (const auto& [value, count] : r.histogram) {
      if (value >= med - 2 && value <= med + 2) near += count;
    }
    CHECK(near >= 990);
  }
  SUBCASE("exact on blocks for VertexColorAnd") {
    const auto m = DependentModel::vertex_color_and(128, 0.25, 16);
    const auto r = clique_distribution(m, 200, 3, CliqueMethod::kExactOnBlocks);
    CHECK(r.statistic == "omega_blocks");
    CHECK(r.min >= 2);
  }
  SUBCASE("reproducible and independent of threads") {
    const auto m = DependentModel::block_lift(40, 0.5, 16);
    const auto a = clique_distribution(m, 64, 11, CliqueMethod::kExact);
    const auto b = clique_distribution(m, 64, 11, CliqueMethod::kExact, {4, kExactCliqueLimit});
    CHECK(a.values == b.values);
    CHECK(a.descriptor == b.descriptor);
    CHECK(clique_distribution(m, 64, 12, CliqueMethod::kExact).values != a.values);
  }
  SUBCASE("exact search refuses large graphs") {
    try {
      clique_distribution(DependentModel::erdos_renyi(64, 0.5), 2, 1, CliqueMethod::kExact);
      FAIL("expected a size-limit error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kSizeLimitExceeded);
    }
  }
}

TEST_CASE("chromatic bound") {
  CHECK(chromatic_bound(4096, 0.8, 0.1) == doctest::Approx(1.4 * 4096 * std::log(5.0) / std::log(4096.0)));
  CHECK(chromatic_bound(4096, 0.8, 0.1) == doctest::Approx(1109).epsilon(0.01));
  CHECK(chromatic_batch_size(4096) == static_cast<std::size_t>(std::ceil(4096 / std::pow(std::log(4096.0), 2))));

  const auto empty = chromatic_upper_report(DependentModel::erdos_renyi(256, 0.0), 3, 1, 0.1);
  CHECK_FALSE(empty.in_regime);
  CHECK(empty.check.analytic == 0.0);
  // Full batches become one class each, the leftovers singletons.
  CHECK(empty.report.max == static_cast<double>(256 / empty.batch + 256 % empty.batch));

  const auto mid = chromatic_upper_report(DependentModel::erdos_renyi(512, 0.85), 4, 2, 0.1);
  CHECK(mid.in_regime);
  CHECK(mid.check.pass);
  CHECK_FALSE(chromatic_upper_report(DependentModel::erdos_renyi(128, 0.5), 2, 2, 0.1).in_regime);
  CHECK(mid.report.values ==
        chromatic_upper_report(DependentModel::erdos_renyi(512, 0.85), 4, 2, 0.1, 2.0, {4, kExactCliqueLimit})
            .report.values);
}

TEST_CASE("uncorrelated probability") {
  const auto er = uncorrelated_probability(DependentModel::erdos_renyi(64, 0.3), 5, 500, 1);
  CHECK(er.empirical == 1.0);
  CHECK(er.pass);

  const auto vca = uncorrelated_probability(DependentModel::vertex_color_and(1024, 0.5, 8), 4, 4000, 2);
  const double d = static_cast<double>(DependencyGraph(DependentModel::vertex_color_and(1024, 0.5, 8)).max_degree());
  CHECK(vca.analytic == doctest::Approx(1.0 - 3.0 * d * 64 / 2048));
  CHECK(vca.pass);
  CHECK(vca.empirical > 0.8);

  try {
    uncorrelated_probability(DependentModel::vertex_color_and(64, 0.5, 8), 4, 10, 1);
    FAIL("expected a hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kHypothesisViolation);
  }
  CHECK(vca.empirical ==
        uncorrelated_probability(DependentModel::vertex_color_and(1024, 0.5, 8), 4, 4000, 2, {4, kExactCliqueLimit})
            .empirical);
}

TEST_CASE("tail bound") {
  const auto zero = janson_tail_check(DependentModel::erdos_renyi(32, 0.5), 0.0, 50, 1);
  CHECK(zero.analytic == doctest::Approx(1.0));
  CHECK(zero.pass);

  const auto er = janson_tail_check(DependentModel::erdos_renyi(64, 0.5), 200.0, 2000, 2);
  CHECK(er.analytic == doctest::Approx(std::exp(-2.0 * 40000 / 2016)));
  CHECK(er.empirical == 0.0);
  CHECK(er.pass);

  const auto xm = DependentModel::xor_bipartite(64, 0.5);
  const auto dx = static_cast<double>(DependencyGraph(xm).max_degree());
  const auto xr = janson_tail_check(xm, 400.0, 2000, 3);
  CHECK(xr.analytic == doctest::Approx(std::exp(-2.0 * 160000 / ((dx + 1) * 2016))));
  CHECK(xr.pass);
}

TEST_CASE("certainty constructions") {
  const auto bip = bipartite_certainty(DependentModel::xor_bipartite(64, 0.5), 1000, 1, {workers(), kExactCliqueLimit});
  CHECK(bip.empirical == 1.0);
  CHECK(bip.pass);
  const auto eq = equality_clique_certainty(DependentModel::equality_clique(64, 0.75), 1000, 2);
  CHECK(eq.empirical == 1.0);
  CHECK(eq.pass);
  CHECK(large_clique_threshold(16, 0.25) == doctest::Approx(4.0 - std::sqrt(8.0)));
  CHECK(large_clique_threshold(32, 0.25) == doctest::Approx(4.0).epsilon(1e-9));
  const auto lc = large_clique_check(DependentModel::vertex_color_and(128, 0.25, 16), 200, 3);
  CHECK(lc.pass);
  CHECK_THROWS_AS(large_clique_check(DependentModel::erdos_renyi(16, 0.5), 2, 1), Error);
  const auto cu = clique_upper_check(DependentModel::vertex_color_and(40, 0.3, 8), 50, 4);
  CHECK(cu.pass);
}

TEST_CASE("uncorrelated clique oracles") {
  const auto er5 = DependentModel::erdos_renyi(5, 0.5);
  CHECK(count_uncorrelated_kcliques(Graph::complete(5), er5, 3) == 10);
  CHECK(count_uncorrelated_kcliques(Graph::complete(5), DependentModel::xor_bipartite(5, 0.5), 3) == 0);
  CHECK(count_uncorrelated_kcliques(Graph(5), er5, 2) == 0);

  const auto er4 = DependentModel::erdos_renyi(4, 0.5);
  CHECK(count_intersecting_pairs_W(Graph::complete(4), er4, 3) == 12);
  CHECK(count_intersecting_pairs_W(Graph::complete(3), DependentModel::erdos_renyi(3, 0.5), 3) == 0);
  const Graph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  CHECK(count_intersecting_pairs_W(bowtie, er5, 3) == 0);

  const auto er6 = DependentModel::erdos_renyi(6, 0.5);
  CHECK(max_edge_disjoint_uncorrelated_kcliques(two_triangles(), er6, 3, FamilyMode::kExactTiny) == 2);
  CHECK(max_edge_disjoint_uncorrelated_kcliques(Graph::complete(4), er4, 3, FamilyMode::kExactTiny) == 1);
  CHECK(max_edge_disjoint_uncorrelated_kcliques(Graph(6), er6, 3, FamilyMode::kGreedy) == 0);

  SUBCASE("guards") {
    const auto big = DependentModel::erdos_renyi(200, 0.5);
    try {
      count_uncorrelated_kcliques(Graph(200), big, 4);
      FAIL("expected a guard error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kGuardViolation);
    }
    const auto er8 = DependentModel::erdos_renyi(8, 0.5);
    CHECK_THROWS_AS(max_edge_disjoint_uncorrelated_kcliques(Graph::complete(8), er8, 3, FamilyMode::kExactTiny),
                    Error);
    CHECK(max_edge_disjoint_uncorrelated_kcliques(Graph::complete(8), er8, 3, FamilyMode::kGreedy) >= 4);
  }

  SUBCASE("agree with subset enumeration") {
    std::mt19937_64 gen(7);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 4 + gen() % 5;
      const double p = 0.4 + 0.1 * static_cast<double>(gen() % 6);
      std::vector<DependentModel> ms{DependentModel::erdos_renyi(n, p), DependentModel::xor_bipartite(n, p)};
      if (n % 2 == 0) ms.push_back(DependentModel::vertex_color_and(n, p, 4));
      if (n % 2 == 0) ms.push_back(DependentModel::block_lift(n, p, 4));
      for (const auto& m : ms) {
        const Graph g = sample(m, gen());
        for (std::size_t k = 2; k <= 4; ++k) {
          const auto cl = brute_cliques(g, m, k);
          CHECK(count_uncorrelated_kcliques(g, m, k) == cl.size());
          std::size_t w = 0;
          for (const auto a : cl) {
            for (const auto b : cl) {
              const auto shared = static_cast<std::size_t>(std::popcount(a & b));
              if (a != b && shared >= 2 && shared <= k - 1) ++w;
            }
          }
          CHECK(count_intersecting_pairs_W(g, m, k) == w);
          CHECK(max_edge_disjoint_uncorrelated_kcliques(g, m, k, FamilyMode::kGreedy) <= cl.size());
        }
      }
    }
  }
}

TEST_CASE("disjoint clique report") {
  CHECK(disjoint_clique_bound(100, 0.5, 2) == doctest::Approx(10000 * 0.5 / (19.0 * 32)));
  const auto r = disjoint_clique_report(DependentModel::erdos_renyi(30, 0.5), 3, 20, 1);
  CHECK(r.informational);
  CHECK(r.empirical > 0);
  CHECK(binomial_coefficient(10, 3) == 120.0);
  CHECK(binomial_coefficient(3, 5) == 0.0);
}
