#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/graph.hpp"
#include "kplanar/rng.hpp"
#include "kplanar/weights.hpp"

namespace kplanar {

using Label = std::int32_t;

/// One label in [0, k) per vertex.
struct VertexLabeling {
  std::vector<Label> labels;
  int k = 1;
  std::uint64_t seed = 0;
};

/// Unordered label pair of an edge's endpoints, stored low <= high.
struct EdgeType {
  Label low = 0;
  Label high = 0;
  friend bool operator==(const EdgeType&, const EdgeType&) = default;
};

inline EdgeType make_type(Label a, Label b) { return a <= b ? EdgeType{a, b} : EdgeType{b, a}; }

/// Edge-to-plane map. Assignments derived from a labeling also carry each
/// edge's type; other assignments (coloring, degree partition) leave
/// `types` empty.
struct PlaneAssignment {
  int k = 1;
  std::vector<int> plane;
  std::vector<EdgeType> types;
};

/// Draws one label per vertex using a single stream from the seed.
inline void resample_labels(std::span<Label> labels, std::span<const VertexId> vertices,
                            const WeightVector& weights, Rng& rng) {
  const auto p = weights.probabilities_double();
  for (VertexId v : vertices) {
    double u = uniform01(rng);
    Label chosen = weights.k() - 1;
    double cumulative = 0.0;
    for (int i = 0; i < weights.k(); ++i) {
      cumulative += p[static_cast<std::size_t>(i)];
      if (u < cumulative) {
        chosen = i;
        break;
      }
    }
    // Never land on a zero-probability label through rounding in the tail.
    while (p[static_cast<std::size_t>(chosen)] == 0.0 && chosen > 0) --chosen;
    labels[static_cast<std::size_t>(v)] = chosen;
  }
}

inline void resample_all(std::span<Label> labels, const WeightVector& weights, Rng& rng) {
  std::vector<VertexId> all(labels.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VertexId>(v);
  resample_labels(labels, all, weights, rng);
}

/// Independent labels with Pr[label(v) = i] = p_i; deterministic in the seed.
inline VertexLabeling sample_labeling(const Graph& graph, const WeightVector& weights,
                                      std::uint64_t seed) {
  VertexLabeling out;
  out.k = weights.k();
  out.seed = seed;
  out.labels.assign(static_cast<std::size_t>(graph.vertex_count()), 0);
  Rng rng = make_rng(seed);
  resample_all(out.labels, weights, rng);
  return out;
}

/// Plane of edge uv is (label(u) + label(v)) mod k.
inline PlaneAssignment assign_planes(const Graph& graph, const VertexLabeling& labeling) {
  if (static_cast<int>(labeling.labels.size()) != graph.vertex_count()) {
    throw Error("labeling does not cover the graph's vertices");
  }
  PlaneAssignment out;
  out.k = labeling.k;
  out.plane.reserve(static_cast<std::size_t>(graph.edge_count()));
  out.types.reserve(static_cast<std::size_t>(graph.edge_count()));
  for (const auto& e : graph.edges()) {
    Label a = labeling.labels[static_cast<std::size_t>(e.u)];
    Label b = labeling.labels[static_cast<std::size_t>(e.v)];
    if (a < 0 || b < 0 || a >= labeling.k || b >= labeling.k) throw Error("label out of range");
    out.plane.push_back((a + b) % labeling.k);
    out.types.push_back(make_type(a, b));
  }
  return out;
}

/// Per-edge surviving loads and per-plane aggregates of one decomposition.
struct DecompositionReport {
  std::vector<std::int64_t> g;           ///< surviving crossings on each edge
  std::vector<std::int64_t> plane_total;  ///< C_i
  std::vector<std::int64_t> plane_max;    ///< L_i
  std::int64_t max_load = 0;             ///< max_i L_i
  std::int64_t total = 0;                ///< sum_i C_i
  std::map<std::string, double> thresholds;
  bool certified = false;
};

namespace detail {

template <class Survives>
DecompositionReport aggregate_report(const Drawing& drawing, const PlaneAssignment& assignment,
                                     Survives survives) {
  const int m = drawing.graph().edge_count();
  if (static_cast<int>(assignment.plane.size()) != m) {
    throw Error("plane assignment does not cover the drawing's edges");
  }
  DecompositionReport report;
  report.g.assign(static_cast<std::size_t>(m), 0);
  report.plane_total.assign(static_cast<std::size_t>(assignment.k), 0);
  report.plane_max.assign(static_cast<std::size_t>(assignment.k), 0);
  for (const auto& c : drawing.crossings()) {
    if (!survives(c.e, c.f)) continue;
    report.g[static_cast<std::size_t>(c.e)] += c.multiplicity;
    report.g[static_cast<std::size_t>(c.f)] += c.multiplicity;
    report.plane_total[static_cast<std::size_t>(assignment.plane[c.e])] += c.multiplicity;
    report.total += c.multiplicity;
  }
  for (EdgeId e = 0; e < m; ++e) {
    auto& slot = report.plane_max[static_cast<std::size_t>(assignment.plane[e])];
    slot = std::max(slot, report.g[static_cast<std::size_t>(e)]);
    report.max_load = std::max(report.max_load, report.g[static_cast<std::size_t>(e)]);
  }
  return report;
}

}  // namespace detail

/// Construction semantics: a crossing survives iff both edges have the same
/// type (hence the same plane); the redrawing step separates different types.
inline DecompositionReport surviving_report(const Drawing& drawing,
                                            const PlaneAssignment& assignment) {
  if (static_cast<int>(assignment.types.size()) != drawing.graph().edge_count()) {
    throw Error("surviving_report needs a labeling-derived assignment with edge types");
  }
  return detail::aggregate_report(drawing, assignment, [&](EdgeId e, EdgeId f) {
    return assignment.types[e] == assignment.types[f];
  });
}

/// Co-plane semantics: a crossing survives iff both edges share a plane.
inline DecompositionReport co_plane_report(const Drawing& drawing,
                                           const PlaneAssignment& assignment) {
  return detail::aggregate_report(drawing, assignment, [&](EdgeId e, EdgeId f) {
    return assignment.plane[e] == assignment.plane[f];
  });
}

/// Report under whichever semantics the assignment supports.
inline DecompositionReport recount(const Drawing& drawing, const PlaneAssignment& assignment) {
  if (!assignment.types.empty()) return surviving_report(drawing, assignment);
  return co_plane_report(drawing, assignment);
}

}  // namespace kplanar
