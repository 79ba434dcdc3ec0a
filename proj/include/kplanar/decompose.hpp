#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kplanar/construction.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/graph.hpp"
#include "kplanar/rng.hpp"
#include "kplanar/weights.hpp"

namespace kplanar {

enum class ResampleStrategy {
  local,    ///< Moser-Tardos: resample one violated event's variables per round
  restart,  ///< draw a fresh labeling every round
};

enum class SearchGoal {
  certify,   ///< stop at the first labeling meeting the target
  minimize,  ///< spend the whole budget minimizing max_e g(e)
};

struct SearchOptions {
  ResampleStrategy strategy = ResampleStrategy::local;
  SearchGoal goal = SearchGoal::certify;
  /// Rounds without improvement before a full restart; 0 means budget / 10.
  std::int64_t stagnation_limit = 0;
};

struct DecompositionResult {
  std::string mode;
  std::optional<WeightVector> weights;
  std::optional<VertexLabeling> labeling;
  PlaneAssignment assignment;
  DecompositionReport report;
  std::uint64_t seed = 0;
  std::int64_t rounds = 0;
  std::int64_t restarts = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline void check_epsilon(double epsilon, std::vector<std::string>& warnings) {
  if (!std::isfinite(epsilon) || epsilon < 0) throw Error("epsilon must be a finite value >= 0");
  if (!(epsilon > 0 && epsilon <= 0.1)) {
    warnings.push_back("epsilon outside (0, 1/10]; guarantees assume small positive epsilon");
  }
}

inline void check_drawing(const Drawing& drawing, std::vector<std::string>& warnings) {
  if (drawing.has_adjacent_crossings()) {
    warnings.push_back("drawing has crossings between edges sharing an endpoint");
  }
}

inline std::int64_t stagnation_limit(const SearchOptions& options, std::int64_t budget) {
  if (options.stagnation_limit > 0) return options.stagnation_limit;
  return std::max<std::int64_t>(1, budget / 10);
}

/// Variables of the event "edge e is overloaded": its endpoints and the
/// endpoints of every edge crossing it.
inline std::vector<VertexId> edge_event_scope(const Drawing& drawing, EdgeId e) {
  const Graph& g = drawing.graph();
  std::vector<VertexId> scope{g.edge(e).u, g.edge(e).v};
  for (const auto& partner : drawing.partners(e)) {
    scope.push_back(g.edge(partner.edge).u);
    scope.push_back(g.edge(partner.edge).v);
  }
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  return scope;
}

/// Shared resample loop over vertex labelings of the drawing's graph.
///
/// `evaluate(report, best_objective)` returns (objective, satisfied,
/// violated_edges). Lower objectives are better.
template <class Objective, class Evaluate>
DecompositionResult labeling_search(const Drawing& drawing, const WeightVector& weights,
                                    std::int64_t budget, std::uint64_t seed,
                                    const SearchOptions& options, std::uint64_t stream,
                                    Evaluate evaluate) {
  if (budget < 1) throw Error("budget must be >= 1");
  const Graph& graph = drawing.graph();
  Rng rng = make_rng(seed, stream);
  VertexLabeling labeling{std::vector<Label>(static_cast<std::size_t>(graph.vertex_count()), 0),
                          weights.k(), seed};
  resample_all(labeling.labels, weights, rng);

  DecompositionResult result;
  result.seed = seed;
  result.weights = weights;
  std::optional<Objective> best;
  VertexLabeling best_labeling = labeling;
  const std::int64_t limit = stagnation_limit(options, budget);
  std::int64_t stagnant = 0;

  for (std::int64_t round = 1; round <= budget; ++round) {
    result.rounds = round;
    PlaneAssignment assignment = assign_planes(graph, labeling);
    DecompositionReport report = surviving_report(drawing, assignment);
    auto [objective, satisfied, violated] = evaluate(report, best);
    if (!best || objective < *best) {
      best = objective;
      best_labeling = labeling;
      stagnant = 0;
    } else {
      ++stagnant;
    }
    if (satisfied) break;
    if (round == budget) break;
    // With no local event to repair (only a global target missed) the round
    // restarts from scratch.
    if (options.strategy == ResampleStrategy::restart || stagnant >= limit || violated.empty()) {
      resample_all(labeling.labels, weights, rng);
      ++result.restarts;
      stagnant = 0;
    } else {
      EdgeId pick = violated[uniform_below(rng, violated.size())];
      auto scope = edge_event_scope(drawing, pick);
      resample_labels(labeling.labels, scope, weights, rng);
    }
  }
  // The returned report always comes from a fresh recount of the kept labeling.
  result.labeling = best_labeling;
  result.assignment = assign_planes(graph, best_labeling);
  result.report = surviving_report(drawing, result.assignment);
  return result;
}

}  // namespace detail

/// Randomized k-plane decomposition bounding every edge's surviving load by
/// (gamma_k + epsilon) * L.
///
/// Labels are drawn from `weights`; edge uv goes to plane (label u + label v)
/// mod k. A crossing survives only between edges of the same type. Violated
/// events (edges over the target) are repaired by Moser-Tardos resampling with
/// a full restart after a stagnation window. `certified` is decided by a
/// final recount only.
inline DecompositionResult decompose_lcr(const Drawing& drawing, int k, double epsilon,
                                         const WeightVector& weights, std::int64_t budget,
                                         std::uint64_t seed, const SearchOptions& options = {}) {
  if (k < 1) throw Error("k must be >= 1");
  if (weights.k() != k) throw Error("weight vector length does not match k");
  std::vector<std::string> warnings;
  detail::check_epsilon(epsilon, warnings);
  detail::check_drawing(drawing, warnings);
  const double target = (to_double(weights.gamma()) + epsilon) *
                        static_cast<double>(drawing.local_crossing_number());
  const int m = drawing.graph().edge_count();
  using Objective = std::tuple<std::int64_t, std::int64_t>;

  auto evaluate = [&](const DecompositionReport& report, const std::optional<Objective>& best) {
    Objective objective{report.max_load, report.total};
    bool satisfied = options.goal == SearchGoal::certify
                         ? static_cast<double>(report.max_load) <= target
                         : report.max_load == 0;
    std::vector<EdgeId> violated;
    std::int64_t floor = report.max_load;
    if (options.goal == SearchGoal::minimize && best) floor = std::min(floor, std::get<0>(*best));
    for (EdgeId e = 0; e < m; ++e) {
      auto g = report.g[static_cast<std::size_t>(e)];
      bool bad = options.goal == SearchGoal::certify ? static_cast<double>(g) > target
                                                     : (g > 0 && g >= floor);
      if (bad) violated.push_back(e);
    }
    return std::tuple{objective, satisfied, violated};
  };
  auto result =
      detail::labeling_search<Objective>(drawing, weights, budget, seed, options, 1, evaluate);
  result.mode = "construction";
  result.warnings = std::move(warnings);
  result.report.thresholds["max_load"] = target;
  result.report.certified = static_cast<double>(result.report.max_load) <= target;
  return result;
}

/// Both targets at once: sum_i C_i <= (2/k^2 - 1/k^3 + epsilon) C and
/// max_i L_i <= (2/k^2 + epsilon) L. Always uses uniform labels.
inline DecompositionResult decompose_combined(const Drawing& drawing, int k, double epsilon,
                                              std::int64_t budget, std::uint64_t seed,
                                              const SearchOptions& options = {}) {
  if (k < 2) throw Error("combined decomposition needs k >= 2");
  std::vector<std::string> warnings;
  detail::check_epsilon(epsilon, warnings);
  detail::check_drawing(drawing, warnings);
  const double kk = k;
  const double total_target =
      (2.0 / (kk * kk) - 1.0 / (kk * kk * kk) + epsilon) *
      static_cast<double>(drawing.total_crossings());
  const double load_target =
      (2.0 / (kk * kk) + epsilon) * static_cast<double>(drawing.local_crossing_number());
  const int m = drawing.graph().edge_count();
  using Objective = std::tuple<int, std::int64_t, std::int64_t>;

  auto evaluate = [&](const DecompositionReport& report, const std::optional<Objective>&) {
    bool total_ok = static_cast<double>(report.total) <= total_target;
    bool load_ok = static_cast<double>(report.max_load) <= load_target;
    Objective objective{(total_ok ? 0 : 1) + (load_ok ? 0 : 1), report.max_load, report.total};
    std::vector<EdgeId> violated;
    for (EdgeId e = 0; e < m; ++e) {
      if (static_cast<double>(report.g[static_cast<std::size_t>(e)]) > load_target) {
        violated.push_back(e);
      }
    }
    return std::tuple{objective, total_ok && load_ok, violated};
  };
  auto result = detail::labeling_search<Objective>(drawing, uniform_weights(k), budget, seed,
                                                   options, 3, evaluate);
  result.mode = "combined";
  result.warnings = std::move(warnings);
  result.report.thresholds["total"] = total_target;
  result.report.thresholds["max_load"] = load_target;
  result.report.certified = static_cast<double>(result.report.total) <= total_target &&
                            static_cast<double>(result.report.max_load) <= load_target;
  return result;
}

struct DegreePartitionResult {
  VertexLabeling labeling;
  bool certified = false;
  std::int64_t max_induced_degree = 0;
  double threshold = 0.0;
  std::int64_t rounds = 0;
  std::int64_t restarts = 0;
};

/// Splits V(H) into k parts with every induced degree at most
/// (1/k + epsilon) * Delta(H).
///
/// Uniform labels, then Moser-Tardos on the events "same-part degree of v
/// exceeds deg(v)/k + epsilon * Delta(H)" with scope v and its neighbours.
inline DegreePartitionResult degree_partition(const Graph& h, int k, double epsilon,
                                              std::int64_t budget, std::uint64_t seed,
                                              const SearchOptions& options = {}) {
  if (k < 1) throw Error("k must be >= 1");
  if (budget < 1) throw Error("budget must be >= 1");
  if (!std::isfinite(epsilon) || epsilon <= 0) throw Error("epsilon must be > 0");
  const int n = h.vertex_count();
  const double delta = h.max_degree();
  const double threshold = (1.0 / k + epsilon) * delta;
  const WeightVector weights = uniform_weights(k);
  Rng rng = make_rng(seed, 2);

  DegreePartitionResult result;
  result.threshold = threshold;
  std::vector<Label> labels(static_cast<std::size_t>(n), 0);
  resample_all(labels, weights, rng);
  std::optional<std::tuple<std::int64_t, std::int64_t>> best;
  std::vector<Label> best_labels = labels;
  const std::int64_t limit = detail::stagnation_limit(options, budget);
  std::int64_t stagnant = 0;
  std::vector<std::int64_t> same(static_cast<std::size_t>(n));

  for (std::int64_t round = 1; round <= budget; ++round) {
    result.rounds = round;
    std::int64_t max_same = 0;
    std::vector<VertexId> violated;
    for (VertexId v = 0; v < n; ++v) {
      std::int64_t count = 0;
      for (const auto& inc : h.incidences(v)) {
        count += labels[static_cast<std::size_t>(inc.neighbor)] == labels[static_cast<std::size_t>(v)];
      }
      same[static_cast<std::size_t>(v)] = count;
      max_same = std::max(max_same, count);
      if (static_cast<double>(count) > h.degree(v) / static_cast<double>(k) + epsilon * delta) {
        violated.push_back(v);
      }
    }
    std::tuple<std::int64_t, std::int64_t> objective{max_same,
                                                     static_cast<std::int64_t>(violated.size())};
    if (!best || objective < *best) {
      best = objective;
      best_labels = labels;
      stagnant = 0;
    } else {
      ++stagnant;
    }
    if (static_cast<double>(max_same) <= threshold || round == budget) break;
    if (options.strategy == ResampleStrategy::restart || stagnant >= limit || violated.empty()) {
      resample_all(labels, weights, rng);
      ++result.restarts;
      stagnant = 0;
    } else {
      VertexId v = violated[uniform_below(rng, violated.size())];
      std::vector<VertexId> scope{v};
      for (const auto& inc : h.incidences(v)) scope.push_back(inc.neighbor);
      resample_labels(labels, scope, weights, rng);
    }
  }
  // Full recount of the kept labeling.
  std::int64_t max_same = 0;
  for (VertexId v = 0; v < n; ++v) {
    std::int64_t count = 0;
    for (const auto& inc : h.incidences(v)) {
      count += best_labels[static_cast<std::size_t>(inc.neighbor)] ==
               best_labels[static_cast<std::size_t>(v)];
    }
    max_same = std::max(max_same, count);
  }
  result.labeling = VertexLabeling{std::move(best_labels), k, seed};
  result.max_induced_degree = max_same;
  result.certified = static_cast<double>(max_same) <= threshold;
  return result;
}

/// Degree partition of the intersection graph: the part of edge-vertex e is
/// the plane of e. Loads use co-plane semantics.
inline DecompositionResult decompose_via_degree_partition(const Drawing& drawing, int k,
                                                          double epsilon, std::int64_t budget,
                                                          std::uint64_t seed,
                                                          const SearchOptions& options = {}) {
  std::vector<std::string> warnings;
  detail::check_epsilon(epsilon, warnings);
  detail::check_drawing(drawing, warnings);
  if (!drawing.all_multiplicities_one()) {
    warnings.push_back("multiplicities > 1: loads count crossing points, Delta(I) counts partners");
  }
  const Graph intersections = intersection_graph(drawing);
  auto partition = degree_partition(intersections, k, epsilon, budget, seed, options);

  DecompositionResult result;
  result.mode = "degree-partition";
  result.seed = seed;
  result.rounds = partition.rounds;
  result.restarts = partition.restarts;
  result.warnings = std::move(warnings);
  result.assignment.k = k;
  result.assignment.plane.assign(partition.labeling.labels.begin(), partition.labeling.labels.end());
  result.report = co_plane_report(drawing, result.assignment);
  const double threshold = (1.0 / k + epsilon) * intersections.max_degree();
  result.report.thresholds["max_load"] = threshold;
  result.report.certified = static_cast<double>(result.report.max_load) <= threshold;
  return result;
}

/// Greedy proper coloring of the intersection graph in descending-degree
/// order (ties by edge id); color classes become planes. Uses at most
/// Delta(I) + 1 planes and leaves no crossing inside any plane.
inline DecompositionResult decompose_by_coloring(const Drawing& drawing) {
  const Graph intersections = intersection_graph(drawing);
  const int m = intersections.vertex_count();
  std::vector<VertexId> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return intersections.degree(a) > intersections.degree(b);
  });
  std::vector<int> color(static_cast<std::size_t>(m), -1);
  std::vector<char> used;
  int colors = 1;
  for (VertexId v : order) {
    used.assign(static_cast<std::size_t>(intersections.degree(v)) + 1, 0);
    for (const auto& inc : intersections.incidences(v)) {
      int c = color[static_cast<std::size_t>(inc.neighbor)];
      if (c >= 0 && c < static_cast<int>(used.size())) used[static_cast<std::size_t>(c)] = 1;
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    color[static_cast<std::size_t>(v)] = c;
    colors = std::max(colors, c + 1);
  }
  DecompositionResult result;
  result.mode = "coloring";
  detail::check_drawing(drawing, result.warnings);
  result.assignment.k = colors;
  result.assignment.plane = std::move(color);
  result.report = co_plane_report(drawing, result.assignment);
  result.report.thresholds["max_load"] = 0.0;
  result.report.certified = result.report.max_load == 0;
  return result;
}

}  // namespace kplanar
