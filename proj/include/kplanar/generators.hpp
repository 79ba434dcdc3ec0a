#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/geometry.hpp"
#include "kplanar/graph.hpp"
#include "kplanar/rng.hpp"

namespace kplanar::gen {

inline std::int64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

namespace detail {

inline std::pair<std::int32_t, std::int32_t> ordered(std::int32_t a, std::int32_t b) {
  return a <= b ? std::pair(a, b) : std::pair(b, a);
}

inline Point round_point(double x, double y) {
  return {static_cast<std::int64_t>(std::llround(x)), static_cast<std::int64_t>(std::llround(y))};
}

}  // namespace detail

/// K_n with vertices on a circle in cyclic order, rounded to integers. The
/// radius doubles until the rounded points are in general position and in
/// convex position (checked by C = C(n,4)). Each vertex is shifted off the
/// regular n-gon by up to 0.3 of a step, since the diagonals of a regular
/// polygon meet in many triple points that rounding alone does not break.
inline Drawing convex_kn(int n) {
  if (n < 3) throw Error("convex_kn needs n >= 3");
  const Graph graph = complete_graph(n);
  const std::int64_t expected = binomial(n, 4);
  for (double radius = 64.0 * n; radius < static_cast<double>(kMaxCoordinate) / 2; radius *= 2) {
    std::vector<Point> coords;
    for (int i = 0; i < n; ++i) {
      const double jitter = 0.3 * std::fmod(i * std::numbers::phi, 1.0);
      const double angle = 2.0 * std::numbers::pi * (i + jitter) / n + 0.1;
      coords.push_back(detail::round_point(radius + 0.31 + radius * std::cos(angle),
                                           radius + 0.73 + radius * std::sin(angle)));
    }
    try {
      Drawing d = crossings_from_geometry(graph, std::move(coords));
      if (d.total_crossings() == expected) return d;
    } catch (const DegenerateGeometry&) {
    }
  }
  throw Error("convex_kn: no non-degenerate rounding found");
}

/// K_n with n/2 vertices on each of two concentric circles (inner radius
/// half the outer), straight-line edges. Vertices 0..n/2-1 are outer. Vertex
/// angles carry the same small offsets as convex_kn; failed placements retry
/// with a different inner-ring rotation and a larger scale.
inline Drawing cylindrical_kn(int n) {
  if (n < 6 || n % 2 != 0) throw Error("cylindrical_kn needs even n >= 6");
  const Graph graph = complete_graph(n);
  const int half = n / 2;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double radius = 256.0 * n * (1 << (attempt / 8));
    const double twist = 0.5 + 0.037 * attempt;
    std::vector<Point> coords;
    for (int ring = 0; ring < 2; ++ring) {
      double r = ring == 0 ? radius : radius / 2;
      for (int i = 0; i < half; ++i) {
        const double jitter = 0.3 * std::fmod((ring * half + i) * std::numbers::phi, 1.0);
        const double angle =
            2.0 * std::numbers::pi * (i + jitter + (ring == 0 ? 0.0 : twist)) / half;
        coords.push_back(detail::round_point(radius + 0.31 + r * std::cos(angle),
                                             radius + 0.73 + r * std::sin(angle)));
      }
    }
    try {
      return crossings_from_geometry(graph, std::move(coords));
    } catch (const DegenerateGeometry&) {
    }
  }
  throw Error("cylindrical_kn: no non-degenerate placement found");
}

struct RegularishGraph {
  Graph graph;
  double alpha = 0.0;  ///< Delta * n / (2m)
  int repairs = 0;     ///< edge switches used to remove loops and multi-edges
  int dropped = 0;     ///< stub pairs that could not be repaired
};

/// Random near-d-regular simple graph: configuration-model pairing, then
/// loops and repeated pairs are removed by random edge switches that keep
/// every degree. Pairs that cannot be switched within the retry budget are
/// dropped; the result must satisfy alpha <= 1 + 3/d.
inline RegularishGraph random_regularish(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw Error("random_regularish needs n*d even and 0 <= d < n");
  }
  RegularishGraph out;
  if (d == 0) {
    out.graph = Graph(n, {});
    return out;
  }
  Rng rng = make_rng(seed, 11);
  for (int retry = 0; retry < 32; ++retry) {
    std::vector<VertexId> stubs;
    for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(d), v);
    shuffle(stubs, rng);
    std::vector<std::pair<VertexId, VertexId>> good, bad;
    std::set<std::pair<VertexId, VertexId>> present;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      auto key = detail::ordered(stubs[i], stubs[i + 1]);
      if (key.first == key.second || present.count(key)) {
        bad.emplace_back(stubs[i], stubs[i + 1]);
      } else {
        present.insert(key);
        good.emplace_back(key.first, key.second);
      }
    }
    int repairs = 0, dropped = 0;
    for (auto [a, b] : bad) {
      bool fixed = false;
      for (int attempt = 0; attempt < 200 && !fixed && !good.empty(); ++attempt) {
        std::size_t idx = uniform_below(rng, good.size());
        auto [x, y] = good[idx];
        if (uniform_below(rng, 2)) std::swap(x, y);
        // Replace {a,b} + {x,y} with {a,x} + {b,y}.
        auto ax = detail::ordered(a, x), by = detail::ordered(b, y);
        if (ax.first == ax.second || by.first == by.second || ax == by) continue;
        if (present.count(ax) || present.count(by)) continue;
        present.erase(detail::ordered(good[idx].first, good[idx].second));
        good[idx] = ax;
        good.push_back(by);
        present.insert(ax);
        present.insert(by);
        fixed = true;
        ++repairs;
      }
      if (!fixed) ++dropped;
    }
    std::vector<Edge> edges;
    for (auto [a, b] : good) edges.push_back({a, b});
    Graph graph(n, std::move(edges));
    double alpha = graph.degree_ratio();
    if (alpha <= 1.0 + 3.0 / d) {
      out.graph = std::move(graph);
      out.alpha = alpha;
      out.repairs = repairs;
      out.dropped = dropped;
      return out;
    }
  }
  throw Error("random_regularish: retry budget exhausted");
}

/// Uniform random simple graph with exactly m edges.
inline Graph random_graph(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 1 || m < 0 || m > binomial(n, 2)) throw Error("random_graph needs 0 <= m <= C(n,2)");
  Rng rng = make_rng(seed, 15);
  std::set<std::pair<VertexId, VertexId>> chosen;
  std::vector<Edge> edges;
  while (static_cast<std::int64_t>(edges.size()) < m) {
    auto u = static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    auto v = static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    if (u == v || !chosen.insert(detail::ordered(u, v)).second) continue;
    edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

/// Places the vertices at distinct random integer points of a 10n x 10n box,
/// resampling until the straight-line drawing is in general position.
inline Drawing random_geometric_drawing(const Graph& graph, std::uint64_t seed,
                                        int max_attempts = 200) {
  const int n = graph.vertex_count();
  const std::int64_t side = std::max<std::int64_t>(10, 10LL * n);
  Rng rng = make_rng(seed, 12);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::vector<Point> coords;
    while (static_cast<int>(coords.size()) < n) {
      Point p{static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(side))),
              static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(side)))};
      if (used.emplace(p.x, p.y).second) coords.push_back(p);
    }
    try {
      return crossings_from_geometry(graph, std::move(coords));
    } catch (const DegenerateGeometry&) {
    }
  }
  throw Error("random_geometric_drawing: retries exhausted");
}

/// Random combinatorial drawing: up to `pairs` crossing pairs between
/// non-adjacent edges, keeping every edge's partner count <= max_partners.
inline Drawing random_combinatorial_drawing(const Graph& graph, int max_partners, int pairs,
                                            std::uint64_t seed) {
  const int m = graph.edge_count();
  Rng rng = make_rng(seed, 13);
  std::vector<int> partners(static_cast<std::size_t>(m), 0);
  std::set<std::pair<EdgeId, EdgeId>> chosen;
  std::vector<Crossing> crossings;
  for (std::int64_t attempt = 0; m >= 2 && attempt < 50LL * pairs &&
                                 static_cast<int>(crossings.size()) < pairs;
       ++attempt) {
    auto e = static_cast<EdgeId>(uniform_below(rng, static_cast<std::uint64_t>(m)));
    auto f = static_cast<EdgeId>(uniform_below(rng, static_cast<std::uint64_t>(m)));
    if (e == f || graph.edge(e).shares_endpoint(graph.edge(f))) continue;
    if (partners[static_cast<std::size_t>(e)] >= max_partners ||
        partners[static_cast<std::size_t>(f)] >= max_partners) {
      continue;
    }
    if (!chosen.insert(detail::ordered(e, f)).second) continue;
    ++partners[static_cast<std::size_t>(e)];
    ++partners[static_cast<std::size_t>(f)];
    crossings.push_back({e, f, 1});
  }
  return Drawing(graph, std::move(crossings));
}

/// Combinatorial drawing of a random perfect matching with m edges whose
/// intersection graph is a disjoint union of paths and cycles with maximum
/// degree exactly 2 (for m >= 3).
inline Drawing paths_and_cycles_drawing(int m, std::uint64_t seed) {
  if (m < 1) throw Error("paths_and_cycles_drawing needs m >= 1");
  Rng rng = make_rng(seed, 14);
  std::vector<VertexId> vertices(2 * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < vertices.size(); ++i) vertices[i] = static_cast<VertexId>(i);
  shuffle(vertices, rng);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({vertices[2 * static_cast<std::size_t>(i)], vertices[2 * static_cast<std::size_t>(i) + 1]});
  Graph graph(2 * m, std::move(edges));

  std::vector<EdgeId> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  shuffle(order, rng);
  std::vector<Crossing> crossings;
  std::size_t pos = 0;
  bool first = true;
  while (pos < order.size()) {
    std::size_t remaining = order.size() - pos;
    std::size_t length = 1 + uniform_below(rng, std::min<std::size_t>(remaining, 12));
    if (first && remaining >= 3) length = std::max<std::size_t>(length, 3);
    first = false;
    for (std::size_t i = 1; i < length; ++i) crossings.push_back({order[pos + i - 1], order[pos + i], 1});
    if (length >= 3 && uniform_below(rng, 2)) crossings.push_back({order[pos], order[pos + length - 1], 1});
    pos += length;
  }
  return Drawing(std::move(graph), std::move(crossings));
}

}  // namespace kplanar::gen
