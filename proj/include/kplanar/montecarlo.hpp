#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "kplanar/bounds.hpp"
#include "kplanar/construction.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/oracle.hpp"
#include "kplanar/rational.hpp"
#include "kplanar/rng.hpp"
#include "kplanar/weights.hpp"

namespace kplanar::mc {

struct EdgeTail {
  EdgeId edge = 0;
  double mean_load = 0;         ///< empirical E[g(e)]
  double empirical_tail = 0;    ///< fraction of trials with g(e) > (gamma + eps) L
  double bound = 1;             ///< McDiarmid bound for that event
  double slack = 0;             ///< 4 sigma sampling slack on the bound
  bool dominated = true;        ///< empirical_tail <= bound + slack
};

struct MonteCarloSummary {
  std::int64_t trials = 0;
  int k = 1;
  double epsilon = 0;
  double gamma = 0;
  std::int64_t L = 0;
  std::int64_t max_degree = 0;
  double load_threshold = 0;    ///< (gamma + eps) L

  double mean_total = 0;        ///< empirical E[sum_i C_i]
  double variance_total = 0;    ///< unbiased sample variance of sum_i C_i
  std::int64_t min_total = 0;
  std::int64_t max_total = 0;

  std::optional<Rational> exact_mean;      ///< oracle expectation
  std::optional<Rational> exact_variance;  ///< oracle variance when available
  std::optional<double> z_score;           ///< (mean - E) / sigma_mean
  bool z_uses_exact_variance = false;

  std::vector<EdgeTail> edges;
  bool tails_dominated = true;
};

namespace detail {

struct Accumulator {
  std::int64_t sum = 0;
  __int128 sum_sq = 0;
  std::int64_t min_total = INT64_MAX;
  std::int64_t max_total = INT64_MIN;
  std::vector<std::int64_t> load_sum;
  std::vector<std::int64_t> tail_count;

  explicit Accumulator(std::size_t m) : load_sum(m, 0), tail_count(m, 0) {}

  void merge(const Accumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    min_total = std::min(min_total, o.min_total);
    max_total = std::max(max_total, o.max_total);
    for (std::size_t e = 0; e < load_sum.size(); ++e) {
      load_sum[e] += o.load_sum[e];
      tail_count[e] += o.tail_count[e];
    }
  }
};

inline int default_threads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace detail

/// Samples `trials` independent labelings. Trial t draws from its own stream
/// derived from (seed, t), and all aggregates are integer sums or extrema, so
/// the summary does not depend on the thread count.
inline MonteCarloSummary run(const Drawing& drawing, const WeightVector& weights, double epsilon,
                             std::int64_t trials, std::uint64_t seed, int threads = 0,
                             bool with_oracle = true) {
  if (trials < 1) throw Error("trials must be >= 1");
  if (!std::isfinite(epsilon) || epsilon < 0) throw Error("epsilon must be a finite value >= 0");
  const Graph& graph = drawing.graph();
  const auto m = static_cast<std::size_t>(graph.edge_count());
  MonteCarloSummary out;
  out.trials = trials;
  out.k = weights.k();
  out.epsilon = epsilon;
  out.gamma = to_double(weights.gamma());
  out.L = drawing.local_crossing_number();
  out.max_degree = graph.max_degree();
  out.load_threshold = (out.gamma + epsilon) * static_cast<double>(out.L);

  const std::uint64_t base = derive_seed(seed, 5);
  auto work = [&](std::int64_t begin, std::int64_t end, detail::Accumulator& acc) {
    VertexLabeling labeling{std::vector<Label>(static_cast<std::size_t>(graph.vertex_count()), 0),
                            weights.k(), seed};
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng = make_rng(base, static_cast<std::uint64_t>(t));
      resample_all(labeling.labels, weights, rng);
      const auto report = surviving_report(drawing, assign_planes(graph, labeling));
      acc.sum += report.total;
      acc.sum_sq += static_cast<__int128>(report.total) * report.total;
      acc.min_total = std::min(acc.min_total, report.total);
      acc.max_total = std::max(acc.max_total, report.total);
      for (std::size_t e = 0; e < m; ++e) {
        acc.load_sum[e] += report.g[e];
        if (static_cast<double>(report.g[e]) > out.load_threshold) ++acc.tail_count[e];
      }
    }
  };

  if (threads <= 0) threads = detail::default_threads();
  threads = static_cast<int>(std::min<std::int64_t>(threads, trials));
  std::vector<detail::Accumulator> parts(static_cast<std::size_t>(threads), detail::Accumulator(m));
  if (threads == 1) {
    work(0, trials, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      std::int64_t begin = trials * i / threads, end = trials * (i + 1) / threads;
      pool.emplace_back(work, begin, end, std::ref(parts[static_cast<std::size_t>(i)]));
    }
    for (auto& th : pool) th.join();
  }
  detail::Accumulator total(m);
  for (const auto& p : parts) total.merge(p);

  const double n = static_cast<double>(trials);
  out.mean_total = static_cast<double>(total.sum) / n;
  out.min_total = total.min_total;
  out.max_total = total.max_total;
  if (trials > 1) {
    // Exact integer form of sum (x - mean)^2 = sum x^2 - (sum x)^2 / N.
    const __int128 centered = total.sum_sq * trials - static_cast<__int128>(total.sum) * total.sum;
    out.variance_total = static_cast<double>(centered) / (n * (n - 1.0));
  }

  for (std::size_t e = 0; e < m; ++e) {
    EdgeTail tail;
    tail.edge = static_cast<EdgeId>(e);
    tail.mean_load = static_cast<double>(total.load_sum[e]) / n;
    tail.empirical_tail = static_cast<double>(total.tail_count[e]) / n;
    if (out.L >= 1 && out.max_degree >= 1 && epsilon > 0) {
      tail.bound = bounds::mcdiarmid_edge_tail(epsilon, out.L, out.max_degree);
    }
    tail.slack = 4.0 * std::sqrt(std::max(0.0, tail.bound * (1.0 - tail.bound)) / n);
    tail.dominated = tail.empirical_tail <= tail.bound + tail.slack;
    out.tails_dominated = out.tails_dominated && tail.dominated;
    out.edges.push_back(tail);
  }

  if (with_oracle) {
    out.exact_mean = oracle::exact_survival_expectation(drawing, weights);
    out.exact_variance = oracle::exact_survival_variance(drawing, weights);
    double variance = out.variance_total;
    if (out.exact_variance) {
      variance = to_double(*out.exact_variance);
      out.z_uses_exact_variance = true;
    }
    if (variance > 0) {
      out.z_score = (out.mean_total - to_double(*out.exact_mean)) / std::sqrt(variance / n);
    }
  }
  return out;
}

struct ConditionalFrequencies {
  std::int64_t trials = 0;
  std::vector<EdgeId> partners;
  std::vector<double> frequency;  ///< fraction of trials in which the partner survives
};

/// Fixes the labels of `edge`'s endpoints to (label_u, label_v), samples the
/// rest, and counts how often each crossing partner gets the same type.
inline ConditionalFrequencies conditional_survival(const Drawing& drawing,
                                                   const WeightVector& weights, EdgeId edge,
                                                   int label_u, int label_v, std::int64_t trials,
                                                   std::uint64_t seed) {
  const Graph& graph = drawing.graph();
  if (edge < 0 || edge >= graph.edge_count()) throw Error("unknown edge id");
  if (trials < 1) throw Error("trials must be >= 1");
  const Edge uv = graph.edge(edge);
  const EdgeType target = make_type(label_u, label_v);
  ConditionalFrequencies out;
  out.trials = trials;
  std::vector<VertexId> scope;
  for (const auto& p : drawing.partners(edge)) {
    out.partners.push_back(p.edge);
    scope.push_back(graph.edge(p.edge).u);
    scope.push_back(graph.edge(p.edge).v);
  }
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  std::vector<std::int64_t> hits(out.partners.size(), 0);
  std::vector<Label> labels(static_cast<std::size_t>(graph.vertex_count()), 0);
  Rng rng = make_rng(seed, 6);
  for (std::int64_t t = 0; t < trials; ++t) {
    resample_labels(labels, scope, weights, rng);
    labels[static_cast<std::size_t>(uv.u)] = label_u;
    labels[static_cast<std::size_t>(uv.v)] = label_v;
    for (std::size_t i = 0; i < out.partners.size(); ++i) {
      const Edge& f = graph.edge(out.partners[i]);
      if (make_type(labels[static_cast<std::size_t>(f.u)], labels[static_cast<std::size_t>(f.v)]) ==
          target) {
        ++hits[i];
      }
    }
  }
  for (auto h : hits) out.frequency.push_back(static_cast<double>(h) / static_cast<double>(trials));
  return out;
}

}  // namespace kplanar::mc
