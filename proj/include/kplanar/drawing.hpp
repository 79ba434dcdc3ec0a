#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kplanar/error.hpp"
#include "kplanar/graph.hpp"

namespace kplanar {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// An unordered crossing pair {e, f} (stored e < f) with its number of
/// crossing points.
struct Crossing {
  EdgeId e = 0;
  EdgeId f = 0;
  int multiplicity = 1;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct Partner {
  EdgeId edge;
  int multiplicity;
};

enum class Representation { geometric, combinatorial };

/// A graph together with the crossing structure of one fixed drawing.
///
/// Loads count crossing points: an edge crossed twice by the same partner
/// has load 2. Immutable after construction.
class Drawing {
 public:
  Drawing() = default;

  Drawing(Graph graph, std::vector<Crossing> crossings,
          Representation representation = Representation::combinatorial,
          std::vector<Point> coords = {})
      : graph_(std::move(graph)), representation_(representation), coords_(std::move(coords)) {
    const int m = graph_.edge_count();
    if (representation_ == Representation::geometric &&
        static_cast<int>(coords_.size()) != graph_.vertex_count()) {
      throw Error("geometric drawing needs one coordinate per vertex");
    }
    for (auto& c : crossings) {
      if (c.e < 0 || c.f < 0 || c.e >= m || c.f >= m) {
        throw Error("crossing references unknown edge id " +
                    std::to_string(c.e < 0 || c.e >= m ? c.e : c.f));
      }
      if (c.e == c.f) throw Error("edge " + std::to_string(c.e) + " cannot cross itself");
      if (c.multiplicity < 1) throw Error("crossing multiplicity must be >= 1");
      if (c.e > c.f) std::swap(c.e, c.f);
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
      return std::pair(a.e, a.f) < std::pair(b.e, b.f);
    });
    // Repeated pairs in the input form a multiset; fold them together.
    for (const auto& c : crossings) {
      if (!crossings_.empty() && crossings_.back().e == c.e && crossings_.back().f == c.f) {
        crossings_.back().multiplicity += c.multiplicity;
      } else {
        crossings_.push_back(c);
      }
    }
    partners_.resize(static_cast<std::size_t>(m));
    loads_.assign(static_cast<std::size_t>(m), 0);
    for (const auto& c : crossings_) {
      partners_[c.e].push_back({c.f, c.multiplicity});
      partners_[c.f].push_back({c.e, c.multiplicity});
      loads_[c.e] += c.multiplicity;
      loads_[c.f] += c.multiplicity;
      total_ += c.multiplicity;
      if (graph_.edge(c.e).shares_endpoint(graph_.edge(c.f))) adjacent_crossings_ = true;
    }
    for (auto load : loads_) local_ = std::max(local_, load);
  }

  const Graph& graph() const { return graph_; }
  Representation representation() const { return representation_; }
  std::span<const Point> coords() const { return coords_; }
  std::span<const Crossing> crossings() const { return crossings_; }
  std::span<const Partner> partners(EdgeId e) const { return partners_[e]; }

  std::int64_t load(EdgeId e) const { return loads_[e]; }
  std::span<const std::int64_t> loads() const { return loads_; }
  /// C: total number of crossing points.
  std::int64_t total_crossings() const { return total_; }
  /// L: the largest per-edge load.
  std::int64_t local_crossing_number() const { return local_; }
  /// Set when some crossing pair shares an endpoint (combinatorial input only).
  bool has_adjacent_crossings() const { return adjacent_crossings_; }
  bool all_multiplicities_one() const {
    return std::all_of(crossings_.begin(), crossings_.end(),
                       [](const Crossing& c) { return c.multiplicity == 1; });
  }

 private:
  Graph graph_;
  Representation representation_ = Representation::combinatorial;
  std::vector<Point> coords_;
  std::vector<Crossing> crossings_;
  std::vector<std::vector<Partner>> partners_;
  std::vector<std::int64_t> loads_;
  std::int64_t total_ = 0;
  std::int64_t local_ = 0;
  bool adjacent_crossings_ = false;
};

/// The edge-crossing graph: one vertex per edge id, adjacent iff the two edges
/// cross at least once.
inline Graph intersection_graph(const Drawing& drawing) {
  std::vector<Edge> edges;
  edges.reserve(drawing.crossings().size());
  for (const auto& c : drawing.crossings()) edges.push_back({c.e, c.f});
  return Graph(drawing.graph().edge_count(), std::move(edges));
}

}  // namespace kplanar
