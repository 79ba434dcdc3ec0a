#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kplanar/error.hpp"

namespace kplanar {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

/// An undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  bool has_endpoint(VertexId w) const { return u == w || v == w; }
  bool shares_endpoint(const Edge& other) const {
    return has_endpoint(other.u) || has_endpoint(other.v);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Simple undirected graph with dense, stable edge ids.
///
/// Edges keep the order they were given in; each is normalized so that
/// u < v. Construction rejects self-loops, parallel edges and out-of-range
/// endpoints.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw Error("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n_));
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      Edge& e = edges_[id];
      if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n_) {
        throw Error("edge " + std::to_string(id) + " references a vertex outside [0, " +
                    std::to_string(n_) + ")");
      }
      if (!seen.emplace(e.u, e.v).second) {
        throw Error("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
      adjacency_[e.u].push_back({e.v, static_cast<EdgeId>(id)});
      adjacency_[e.v].push_back({e.u, static_cast<EdgeId>(id)});
    }
    for (const auto& adj : adjacency_) {
      max_degree_ = std::max(max_degree_, static_cast<int>(adj.size()));
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int max_degree() const { return max_degree_; }
  int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incidences(VertexId v) const { return adjacency_[v]; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
    const auto& adj = adjacency_[degree(a) <= degree(b) ? a : b];
    VertexId other = degree(a) <= degree(b) ? b : a;
    for (const auto& inc : adj) {
      if (inc.neighbor == other) return inc.edge;
    }
    return std::nullopt;
  }

  /// alpha = Delta * n / (2m); 0 for edgeless graphs.
  double degree_ratio() const {
    if (edges_.empty()) return 0.0;
    return static_cast<double>(max_degree_) * n_ / (2.0 * static_cast<double>(edges_.size()));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  int max_degree_ = 0;
};

/// Parses the edge-list text format: one "u v" pair per line, an optional
/// "n <count>" header line, blank lines and '#' comments ignored.
inline Graph load_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Edge> edges;
  std::optional<long long> declared_n;
  long long max_vertex = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (first == "n") {
      long long count = -1;
      std::string rest;
      if (!(fields >> count) || count < 0 || (fields >> rest)) {
        throw Error(where() + "malformed header, expected 'n <count>'");
      }
      if (declared_n || !edges.empty()) throw Error(where() + "header must come first");
      declared_n = count;
      continue;
    }
    long long u = -1, v = -1;
    std::string rest;
    try {
      std::size_t used = 0;
      u = std::stoll(first, &used);
      if (used != first.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error(where() + "expected a vertex id, got '" + first + "'");
    }
    if (!(fields >> v) || (fields >> rest)) throw Error(where() + "expected 'u v'");
    if (u < 0 || v < 0) throw Error(where() + "vertex ids must be nonnegative");
    if (u == v) throw Error(where() + "self-loop at vertex " + std::to_string(u));
    if (std::max(u, v) > INT32_MAX - 1) throw Error(where() + "vertex id too large");
    max_vertex = std::max({max_vertex, u, v});
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  long long n = max_vertex + 1;
  if (declared_n) {
    if (*declared_n < n) throw Error("header declares n=" + std::to_string(*declared_n) +
                                     " but vertex " + std::to_string(max_vertex) + " is used");
    n = *declared_n;
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string to_edge_list_text(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << "\n";
  for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) edges.push_back({a, b});
  }
  return Graph(n, std::move(edges));
}

}  // namespace kplanar
