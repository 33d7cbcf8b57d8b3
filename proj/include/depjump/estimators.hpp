#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "depjump/algorithms.hpp"
#include "depjump/graph.hpp"
#include "depjump/models.hpp"

namespace depjump {

/// Per-trial values of one statistic plus summary. Reproducible from
/// (descriptor, seed, trials).
struct TrialReport {
  std::string descriptor;
  std::string statistic;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<double> values;
  /// Integer-rounded value -> count; total mass equals trials.
  std::map<long long, std::size_t> histogram;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double median = 0.0;
  double q95 = 0.0;
};

TrialReport make_report(std::string descriptor, std::string statistic, std::uint64_t seed,
                        std::vector<double> values);

/// One analytic-vs-empirical comparison. `pass` records whether the empirical
/// side satisfied the declared inequality within `slack`.
struct BoundCheck {
  std::string name;
  double analytic = 0.0;
  double empirical = 0.0;
  bool pass = false;
  double slack = 0.0;
  /// Informational rows carry no pass/fail meaning.
  bool informational = false;
  /// Not run because a hypothesis of the bound failed.
  bool skipped = false;
  std::string note;
};

struct RunOptions {
  /// Worker threads for independent trials. Results do not depend on it.
  unsigned threads = 1;
  std::size_t exact_limit = kExactCliqueLimit;
};

/// Runs fn(trial_seed) for every trial, in parallel when asked, returning
/// values in trial order. Trial t uses rng::derive_seed(seed, t).
std::vector<double> run_trials(std::size_t trials, std::uint64_t seed, unsigned threads,
                               const std::function<double(std::uint64_t)>& fn);

enum class CliqueMethod {
  kExact,
  kGreedy,
  /// Exact maximum clique inside each block of a blocked model, maximised
  /// over blocks. A lower bound on omega.
  kExactOnBlocks,
};

TrialReport clique_distribution(const DependentModel& model, std::size_t trials,
                                std::uint64_t seed, CliqueMethod method,
                                const RunOptions& opts = {});

struct ChromaticReport {
  TrialReport report;
  BoundCheck check;
  bool in_regime = false;
  std::size_t batch = 0;
  std::size_t k_target = 0;
};

/// Batch size ceil(n / ln^2 n) used by the colouring bound check.
std::size_t chromatic_batch_size(std::size_t n);
/// (1 + 4 eps) * (-n ln(1-q)) / ln n.
double chromatic_bound(std::size_t n, double q, double epsilon);

ChromaticReport chromatic_upper_report(const DependentModel& model, std::size_t trials,
                                       std::uint64_t seed, double epsilon,
                                       double slack_factor = 2.0,
                                       const RunOptions& opts = {});

/// Empirical Pr[uniform k-set is uncorrelated] against 1 - 3dk^3/(2n), with
/// d the dependency graph's max degree. Throws kHypothesisViolation when
/// d k^3 > n.
BoundCheck uncorrelated_probability(const DependentModel& model, std::size_t k,
                                    std::size_t trials, std::uint64_t seed,
                                    const RunOptions& opts = {});

/// Empirical Pr[|Y - E Y| >= t] for Y = edge count, against
/// exp(-2t^2 / ((d+1) N)).
BoundCheck janson_tail_check(const DependentModel& model, double t, std::size_t trials,
                             std::uint64_t seed, const RunOptions& opts = {});

/// Every sample bipartite.
BoundCheck bipartite_certainty(const DependentModel& model, std::size_t trials,
                               std::uint64_t seed, const RunOptions& opts = {});

/// Every sample splits into two cliques (vertex 0's closed neighbourhood and
/// the rest), one with at least n/2 vertices.
BoundCheck equality_clique_certainty(const DependentModel& model, std::size_t trials,
                                     std::uint64_t seed, const RunOptions& opts = {});

/// d sqrt(p)/2 - sqrt(d) p^(1/4).
double large_clique_threshold(std::size_t d, double p);

/// Fraction of VertexColorAnd samples with a within-block clique larger than
/// large_clique_threshold, against 1 - exp(-2n/d) minus `slack`.
BoundCheck large_clique_check(const DependentModel& model, std::size_t trials,
                              std::uint64_t seed, double slack = 0.02,
                              const RunOptions& opts = {});

/// Exact omega of every sample at most (d+1) ln n / (1-p)^2. Needs n within
/// the exact-search limit.
BoundCheck clique_upper_check(const DependentModel& model, std::size_t trials,
                              std::uint64_t seed, const RunOptions& opts = {});

// Brute-force oracles over k-subsets. All refuse (kGuardViolation) when
// C(n, k) exceeds kSubsetGuard.

inline constexpr double kSubsetGuard = 1e6;
inline constexpr std::size_t kExactFamilyGuard = 20;

std::vector<VertexSet> uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                             std::size_t k);
std::size_t count_uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                        std::size_t k);
/// Ordered pairs (S, T) of uncorrelated k-cliques with 2 <= |S n T| <= k-1.
std::size_t count_intersecting_pairs_W(const Graph& g, const DependentModel& model,
                                       std::size_t k);

enum class FamilyMode { kExactTiny, kGreedy };

/// Largest (exact) or a maximal (greedy, lexicographic scan) family of
/// pairwise edge-disjoint uncorrelated k-cliques.
std::size_t max_edge_disjoint_uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                                    std::size_t k, FamilyMode mode);

/// n^2 p / (19 k^5).
double disjoint_clique_bound(std::size_t n, double p, std::size_t k);

/// Mean greedy family size over samples against disjoint_clique_bound.
/// Informational only.
BoundCheck disjoint_clique_report(const DependentModel& model, std::size_t k,
                                  std::size_t trials, std::uint64_t seed,
                                  const RunOptions& opts = {});

double binomial_coefficient(std::size_t n, std::size_t k);

}  // namespace depjump
