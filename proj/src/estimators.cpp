#include "depjump/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "depjump/error.hpp"
#include "depjump/io.hpp"
#include "depjump/rng.hpp"

namespace depjump {

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double standard_error(double freq, std::size_t trials) {
  return trials == 0 ? 0.0 : std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials));
}

double fraction(const std::vector<double>& indicators) {
  if (indicators.empty()) return 0.0;
  return std::accumulate(indicators.begin(), indicators.end(), 0.0) /
         static_cast<double>(indicators.size());
}

// Uniform k-subset of 0..n-1 by rejection; k is tiny relative to n here.
VertexSet random_subset(std::size_t n, std::size_t k, std::uint64_t seed) {
  rng::Stream s(seed);
  std::vector<Vertex> picked;
  while (picked.size() < k) {
    const auto v = static_cast<Vertex>(s.below(n));
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  return VertexSet(std::move(picked));
}

std::size_t block_clique(const Graph& g, const DependentModel& model, std::size_t limit) {
  const auto size = model.block_size();
  std::size_t best = 0;
  std::vector<Vertex> block(size);
  for (std::size_t b = 0; b < model.block_count(); ++b) {
    std::iota(block.begin(), block.end(), static_cast<Vertex>(b * size));
    best = std::max(best, max_clique_exact(g.induced(block), limit).size());
  }
  return best;
}

void guard_subsets(std::size_t n, std::size_t k) {
  require(k >= 2, ErrorKind::kInvalidArgument, "k must be >= 2");
  const double count = binomial_coefficient(n, k);
  require(count <= kSubsetGuard, ErrorKind::kGuardViolation,
          "brute force refused: C(" + std::to_string(n) + "," + std::to_string(k) +
              ") = " + std::to_string(count) + " exceeds 1e6");
}

void extend_cliques(const Graph& g, std::size_t k, std::vector<Vertex>& current, Vertex from,
                    std::vector<VertexSet>& out, const DependentModel& model) {
  if (current.size() == k) {
    VertexSet s(current);
    if (is_uncorrelated(model, s)) out.push_back(std::move(s));
    return;
  }
  for (Vertex v = from; v < g.order(); ++v) {
    if (g.order() - v < k - current.size()) break;
    const bool joins = std::all_of(current.begin(), current.end(),
                                   [&](Vertex u) { return g.has_edge(u, v); });
    if (!joins) continue;
    current.push_back(v);
    extend_cliques(g, k, current, v + 1, out, model);
    current.pop_back();
  }
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

TrialReport make_report(std::string descriptor, std::string statistic, std::uint64_t seed,
                        std::vector<double> values) {
  TrialReport r;
  r.descriptor = std::move(descriptor);
  r.statistic = std::move(statistic);
  r.seed = seed;
  r.trials = values.size();
  r.values = std::move(values);
  for (const double v : r.values) ++r.histogram[std::llround(v)];
  if (!r.values.empty()) {
    auto sorted = r.values;
    std::sort(sorted.begin(), sorted.end());
    r.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    r.min = sorted.front();
    r.max = sorted.back();
    r.q05 = quantile(sorted, 0.05);
    r.median = quantile(sorted, 0.5);
    r.q95 = quantile(sorted, 0.95);
  }
  return r;
}

std::vector<double> run_trials(std::size_t trials, std::uint64_t seed, unsigned threads,
                               const std::function<double(std::uint64_t)>& fn) {
  std::vector<double> values(trials);
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) values[t] = fn(rng::derive_seed(seed, t));
    return values;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < trials && !failed; t = next++) {
        try {
          values[t] = fn(rng::derive_seed(seed, t));
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return values;
}

TrialReport clique_distribution(const DependentModel& model, std::size_t trials,
                                std::uint64_t seed, CliqueMethod method,
                                const RunOptions& opts) {
  const char* statistic = "omega";
  if (method == CliqueMethod::kExact) {
    require(model.n() <= opts.exact_limit, ErrorKind::kSizeLimitExceeded,
            "exact clique distribution refused: n=" + std::to_string(model.n()) +
                " exceeds limit " + std::to_string(opts.exact_limit));
  } else if (method == CliqueMethod::kGreedy) {
    statistic = "omega_greedy";
  } else {
    require(model.block_size() > 0, ErrorKind::kInvalidArgument,
            "exact-on-blocks needs a blocked model (VertexColorAnd or BlockLift)");
    statistic = "omega_blocks";
  }
  auto values = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    const Graph g = sample(model, s);
    switch (method) {
      case CliqueMethod::kExact: return static_cast<double>(max_clique_exact(g, opts.exact_limit).size());
      case CliqueMethod::kGreedy: return static_cast<double>(greedy_clique(g).size());
      case CliqueMethod::kExactOnBlocks: return static_cast<double>(block_clique(g, model, opts.exact_limit));
    }
    return 0.0;
  });
  return make_report(describe(model), statistic, seed, std::move(values));
}

std::size_t chromatic_batch_size(std::size_t n) {
  if (n < 3) return std::max<std::size_t>(n, 1);
  const double ln = std::log(static_cast<double>(n));
  const auto m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / (ln * ln)));
  return std::clamp<std::size_t>(m, 1, n);
}

double chromatic_bound(std::size_t n, double q, double epsilon) {
  const double nn = static_cast<double>(n);
  return (1.0 + 4.0 * epsilon) * (-nn * std::log(1.0 - q)) / std::log(nn);
}

ChromaticReport chromatic_upper_report(const DependentModel& model, std::size_t trials,
                                       std::uint64_t seed, double epsilon,
                                       double slack_factor, const RunOptions& opts) {
  const auto n = model.n();
  const double q = model.p();
  ChromaticReport out;
  out.in_regime = q > 0.75 && q < 1.0;
  out.batch = chromatic_batch_size(n);
  const double k_real = (1.0 - 2.0 * epsilon) * std::log(static_cast<double>(out.batch)) /
                        (-std::log(1.0 - q));
  out.k_target = std::max<std::size_t>(
      1, std::isfinite(k_real) ? static_cast<std::size_t>(std::ceil(k_real)) : 1);

  auto values = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    const Graph g = sample(model, s);
    return static_cast<double>(greedy_color(g, out.batch, out.k_target).num_colors);
  });
  out.report = make_report(describe(model), "num_colors", seed, std::move(values));

  const double bound = chromatic_bound(n, q, epsilon);
  out.check.name = "chromatic_upper";
  out.check.analytic = bound;
  out.check.empirical = out.report.max;
  out.check.slack = slack_factor;
  out.check.pass = out.report.max <= slack_factor * bound;
  if (!out.in_regime) out.check.note = "out of regime (q not in (3/4, 1))";
  return out;
}

BoundCheck uncorrelated_probability(const DependentModel& model, std::size_t k,
                                    std::size_t trials, std::uint64_t seed,
                                    const RunOptions& opts) {
  const auto n = model.n();
  require(k >= 2 && k <= n, ErrorKind::kInvalidArgument, "k must lie in [2, n]");
  const auto d = dependency_graph(model).max_degree();
  const double dk3 = static_cast<double>(d) * std::pow(static_cast<double>(k), 3);
  require(dk3 <= static_cast<double>(n), ErrorKind::kHypothesisViolation,
          "hypothesis d*k^3 <= n fails: d=" + std::to_string(d) + ", k=" + std::to_string(k) +
              ", n=" + std::to_string(n));
  auto hits = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    return is_uncorrelated(model, random_subset(n, k, s)) ? 1.0 : 0.0;
  });
  BoundCheck c;
  c.name = "uncorrelated_probability";
  c.analytic = 1.0 - 3.0 * dk3 / (2.0 * static_cast<double>(n));
  c.empirical = fraction(hits);
  c.slack = 4.0 * standard_error(c.empirical, trials);
  c.pass = c.empirical >= c.analytic - c.slack;
  c.note = "d=" + std::to_string(d) + " k=" + std::to_string(k);
  return c;
}

BoundCheck janson_tail_check(const DependentModel& model, double t, std::size_t trials,
                             std::uint64_t seed, const RunOptions& opts) {
  const auto n = model.n();
  const double slots = static_cast<double>(slot_count(n));
  const auto d = dependency_graph(model).max_degree();
  const double expected = slots * marginal_edge_probability(model);
  auto hits = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    const double y = static_cast<double>(sample(model, s).edge_count());
    return std::abs(y - expected) >= t ? 1.0 : 0.0;
  });
  BoundCheck c;
  c.name = "janson_tail";
  c.analytic = std::exp(-2.0 * t * t / ((static_cast<double>(d) + 1.0) * slots));
  c.empirical = fraction(hits);
  c.slack = 4.0 * standard_error(c.empirical, trials);
  c.pass = c.empirical <= c.analytic + c.slack;
  c.note = "t=" + format_number(t) + " d=" + std::to_string(d);
  return c;
}

BoundCheck bipartite_certainty(const DependentModel& model, std::size_t trials,
                               std::uint64_t seed, const RunOptions& opts) {
  auto hits = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    return is_bipartite(sample(model, s)).bipartite ? 1.0 : 0.0;
  });
  BoundCheck c;
  c.name = "bipartite_certainty";
  c.analytic = 1.0;
  c.empirical = fraction(hits);
  c.pass = c.empirical == 1.0;
  return c;
}

BoundCheck equality_clique_certainty(const DependentModel& model, std::size_t trials,
                                     std::uint64_t seed, const RunOptions& opts) {
  const auto n = model.n();
  auto hits = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    const Graph g = sample(model, s);
    std::vector<Vertex> with_zero{0};
    std::vector<Vertex> rest;
    for (Vertex v = 1; v < n; ++v) (g.has_edge(0, v) ? with_zero : rest).push_back(v);
    const bool split = is_clique(g, with_zero) && is_clique(g, rest);
    const auto larger = std::max(with_zero.size(), rest.size());
    return split && 2 * larger >= n ? 1.0 : 0.0;
  });
  BoundCheck c;
  c.name = "equality_clique_certainty";
  c.analytic = 1.0;
  c.empirical = fraction(hits);
  c.pass = c.empirical == 1.0;
  return c;
}

double large_clique_threshold(std::size_t d, double p) {
  const double dd = static_cast<double>(d);
  return dd * std::sqrt(p) / 2.0 - std::sqrt(dd) * std::pow(p, 0.25);
}

BoundCheck large_clique_check(const DependentModel& model, std::size_t trials,
                              std::uint64_t seed, double slack, const RunOptions& opts) {
  require(model.variant() == Variant::kVertexColorAnd, ErrorKind::kInvalidArgument,
          "large_clique_check needs a VertexColorAnd model");
  const double threshold = large_clique_threshold(model.d(), model.p());
  const auto report = clique_distribution(model, trials, seed, CliqueMethod::kExactOnBlocks, opts);
  std::size_t above = 0;
  for (const double v : report.values) above += v > threshold ? 1 : 0;
  BoundCheck c;
  c.name = "large_clique";
  c.analytic = 1.0 - std::exp(-2.0 * static_cast<double>(model.n()) / static_cast<double>(model.d()));
  c.empirical = trials == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(trials);
  c.slack = slack;
  c.pass = c.empirical > c.analytic - slack;
  c.note = "threshold=" + std::to_string(threshold);
  return c;
}

BoundCheck clique_upper_check(const DependentModel& model, std::size_t trials,
                              std::uint64_t seed, const RunOptions& opts) {
  const auto report = clique_distribution(model, trials, seed, CliqueMethod::kExact, opts);
  const auto d = dependency_graph(model).max_degree();
  const double p = marginal_edge_probability(model);
  BoundCheck c;
  c.name = "clique_upper";
  c.analytic = (static_cast<double>(d) + 1.0) * std::log(static_cast<double>(model.n())) /
               ((1.0 - p) * (1.0 - p));
  c.empirical = report.max;
  c.pass = report.max <= c.analytic;
  c.note = "d=" + std::to_string(d);
  return c;
}

std::vector<VertexSet> uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                             std::size_t k) {
  require(g.order() == model.n(), ErrorKind::kInvalidArgument, "graph and model disagree on n");
  guard_subsets(g.order(), k);
  std::vector<VertexSet> out;
  std::vector<Vertex> current;
  extend_cliques(g, k, current, 0, out, model);
  return out;
}

std::size_t count_uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                        std::size_t k) {
  return uncorrelated_kcliques(g, model, k).size();
}

std::size_t count_intersecting_pairs_W(const Graph& g, const DependentModel& model,
                                       std::size_t k) {
  const auto cliques = uncorrelated_kcliques(g, model, k);
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < cliques.size(); ++a) {
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      const auto shared = intersection_size(cliques[a], cliques[b]);
      if (shared >= 2 && shared < k) pairs += 2;
    }
  }
  return pairs;
}

std::size_t max_edge_disjoint_uncorrelated_kcliques(const Graph& g, const DependentModel& model,
                                                    std::size_t k, FamilyMode mode) {
  const auto cliques = uncorrelated_kcliques(g, model, k);
  const auto count = cliques.size();
  // Two k-cliques share an edge iff they share at least two vertices.
  std::vector<std::uint32_t> conflict(count, 0);
  if (mode == FamilyMode::kExactTiny) {
    require(count <= kExactFamilyGuard, ErrorKind::kGuardViolation,
            "exact family search refused: " + std::to_string(count) +
                " uncorrelated cliques exceed 20");
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        if (a != b && intersection_size(cliques[a], cliques[b]) >= 2) conflict[a] |= 1U << b;
      }
    }
    // Maximum independent set of the conflict graph by branching on the
    // lowest remaining clique.
    std::function<std::size_t(std::uint32_t)> best = [&](std::uint32_t open) -> std::size_t {
      if (open == 0) return 0;
      const auto v = static_cast<std::size_t>(std::countr_zero(open));
      const std::uint32_t rest = open & ~(1U << v);
      const auto take = 1 + best(rest & ~conflict[v]);
      if ((conflict[v] & rest) == 0) return take;
      return std::max(take, best(rest));
    };
    return best(count == 32 ? ~0U : (1U << count) - 1);
  }
  std::vector<std::size_t> chosen;
  for (std::size_t a = 0; a < count; ++a) {
    const bool disjoint = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t b) {
      return intersection_size(cliques[a], cliques[b]) < 2;
    });
    if (disjoint) chosen.push_back(a);
  }
  return chosen.size();
}

double disjoint_clique_bound(std::size_t n, double p, std::size_t k) {
  const double nn = static_cast<double>(n);
  return nn * nn * p / (19.0 * std::pow(static_cast<double>(k), 5));
}

BoundCheck disjoint_clique_report(const DependentModel& model, std::size_t k,
                                  std::size_t trials, std::uint64_t seed,
                                  const RunOptions& opts) {
  guard_subsets(model.n(), k);
  auto values = run_trials(trials, seed, opts.threads, [&](std::uint64_t s) {
    return static_cast<double>(max_edge_disjoint_uncorrelated_kcliques(
        sample(model, s), model, k, FamilyMode::kGreedy));
  });
  BoundCheck c;
  c.name = "disjoint_uncorrelated_cliques";
  c.analytic = disjoint_clique_bound(model.n(), marginal_edge_probability(model), k);
  c.empirical = values.empty() ? 0.0
                               : std::accumulate(values.begin(), values.end(), 0.0) /
                                     static_cast<double>(values.size());
  c.informational = true;
  c.pass = c.empirical >= c.analytic;
  c.note = "greedy lower bound on the maximum family; outside the asymptotic regime";
  return c;
}

}  // namespace depjump
