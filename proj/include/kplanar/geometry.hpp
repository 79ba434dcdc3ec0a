#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"

namespace kplanar {

/// Coordinates must satisfy |x|, |y| <= this so every predicate below fits in
/// 128-bit integers.
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 30;

/// Raised for inputs violating general position. `witnesses` lists one
/// human-readable line per offending configuration.
class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(std::vector<std::string> witnesses)
      : Error(describe(witnesses)), witnesses_(std::move(witnesses)) {}

  const std::vector<std::string>& witnesses() const { return witnesses_; }

 private:
  static std::string describe(const std::vector<std::string>& w) {
    std::string out = "degenerate drawing (" + std::to_string(w.size()) + " witness" +
                      (w.size() == 1 ? "" : "es") + ")";
    for (std::size_t i = 0; i < w.size() && i < 5; ++i) out += "; " + w[i];
    return out;
  }
  std::vector<std::string> witnesses_;
};

namespace geom {

using i128 = __int128;

inline int sign(i128 v) { return (v > 0) - (v < 0); }

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) {
  i128 v = static_cast<i128>(b.x - a.x) * (c.y - a.y) - static_cast<i128>(b.y - a.y) * (c.x - a.x);
  return sign(v);
}

/// True if p lies strictly between a and b on segment ab.
inline bool in_open_segment(const Point& a, const Point& b, const Point& p) {
  if (orient(a, b, p) != 0) return false;
  if (p == a || p == b) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

/// Proper crossing: the open segments meet in exactly one point that is
/// interior to both. Assumes no endpoint lies on the other segment.
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Exact intersection point of two properly crossing segments, as a reduced
/// triple (x_num, y_num, den) with den > 0.
inline std::array<i128, 3> crossing_point(const Point& a, const Point& b, const Point& c,
                                          const Point& d) {
  i128 rx = b.x - a.x, ry = b.y - a.y;
  i128 sx = d.x - c.x, sy = d.y - c.y;
  i128 den = rx * sy - ry * sx;
  i128 t = static_cast<i128>(c.x - a.x) * sy - static_cast<i128>(c.y - a.y) * sx;
  i128 xn = static_cast<i128>(a.x) * den + rx * t;
  i128 yn = static_cast<i128>(a.y) * den + ry * t;
  if (den < 0) {
    den = -den;
    xn = -xn;
    yn = -yn;
  }
  auto mag = [](i128 v) { return static_cast<unsigned __int128>(v < 0 ? -v : v); };
  auto g = gcd_u128(gcd_u128(mag(xn), mag(yn)), mag(den));
  if (g > 1) {
    xn /= static_cast<i128>(g);
    yn /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  return {xn, yn, den};
}

}  // namespace geom

/// Converts real coordinates to integers, scaling every coordinate by the
/// smallest power of ten (up to 1e9) that makes all of them integral.
inline std::vector<Point> integerize(std::span<const std::array<double, 2>> coords) {
  for (int digits = 0; digits <= 9; ++digits) {
    double scale = std::pow(10.0, digits);
    bool integral = true;
    std::vector<Point> out;
    out.reserve(coords.size());
    for (const auto& [x, y] : coords) {
      if (!std::isfinite(x) || !std::isfinite(y)) throw Error("non-finite coordinate");
      double sx = x * scale, sy = y * scale;
      double rx = std::round(sx), ry = std::round(sy);
      double tol = 1e-9 * std::max(1.0, std::max(std::abs(sx), std::abs(sy)));
      if (std::abs(sx - rx) > tol || std::abs(sy - ry) > tol) {
        integral = false;
        break;
      }
      if (std::abs(rx) > static_cast<double>(kMaxCoordinate) ||
          std::abs(ry) > static_cast<double>(kMaxCoordinate)) {
        throw Error("coordinate magnitude exceeds 2^30 after scaling to integers");
      }
      out.push_back({static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)});
    }
    if (integral) return out;
  }
  throw Error("coordinates need more than 9 decimal digits to become integral");
}

/// Builds the straight-line drawing of `graph` with vertex i at coords[i].
///
/// Crossings are proper interior intersections of non-adjacent segments,
/// each with multiplicity 1, decided by exact integer orientation tests.
/// Throws DegenerateGeometry for coincident vertices, a vertex in the
/// interior of a non-incident edge (this also covers collinear overlaps), or
/// three or more edges through one crossing point.
inline Drawing crossings_from_geometry(const Graph& graph, std::vector<Point> coords) {
  const int n = graph.vertex_count();
  if (static_cast<int>(coords.size()) != n) {
    throw Error("expected " + std::to_string(n) + " coordinates, got " +
                std::to_string(coords.size()));
  }
  for (const auto& p : coords) {
    if (std::abs(p.x) > kMaxCoordinate || std::abs(p.y) > kMaxCoordinate) {
      throw Error("coordinate magnitude exceeds 2^30");
    }
  }
  std::vector<std::string> witnesses;
  {
    std::vector<std::tuple<std::int64_t, std::int64_t, VertexId>> sorted;
    for (VertexId v = 0; v < n; ++v) sorted.emplace_back(coords[v].x, coords[v].y, v);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (std::get<0>(sorted[i]) == std::get<0>(sorted[i - 1]) &&
          std::get<1>(sorted[i]) == std::get<1>(sorted[i - 1])) {
        witnesses.push_back("vertices " + std::to_string(std::get<2>(sorted[i - 1])) + " and " +
                            std::to_string(std::get<2>(sorted[i])) + " coincide");
      }
    }
  }
  if (!witnesses.empty()) throw DegenerateGeometry(std::move(witnesses));

  const auto edges = graph.edges();
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Point& a = coords[edges[e].u];
    const Point& b = coords[edges[e].v];
    for (VertexId w = 0; w < n; ++w) {
      if (edges[e].has_endpoint(w)) continue;
      if (geom::in_open_segment(a, b, coords[w])) {
        witnesses.push_back("vertex " + std::to_string(w) + " lies inside edge " +
                            std::to_string(e) + " (" + std::to_string(edges[e].u) + "," +
                            std::to_string(edges[e].v) + ")");
      }
    }
  }
  if (!witnesses.empty()) throw DegenerateGeometry(std::move(witnesses));

  struct Hit {
    std::array<geom::i128, 3> point;
    EdgeId e, f;
  };
  std::vector<Hit> hits;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Point& a = coords[edges[e].u];
    const Point& b = coords[edges[e].v];
    for (EdgeId f = e + 1; f < graph.edge_count(); ++f) {
      if (edges[e].shares_endpoint(edges[f])) continue;
      const Point& c = coords[edges[f].u];
      const Point& d = coords[edges[f].v];
      if (geom::segments_cross(a, b, c, d)) hits.push_back({geom::crossing_point(a, b, c, d), e, f});
    }
  }
  std::vector<Crossing> crossings;
  crossings.reserve(hits.size());
  for (const auto& h : hits) crossings.push_back({h.e, h.f, 1});

  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    return std::tie(x.point, x.e, x.f) < std::tie(y.point, y.e, y.f);
  });
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i + 1;
    while (j < hits.size() && hits[j].point == hits[i].point) ++j;
    if (j - i > 1) {
      std::vector<EdgeId> through;
      for (std::size_t q = i; q < j; ++q) {
        through.push_back(hits[q].e);
        through.push_back(hits[q].f);
      }
      std::sort(through.begin(), through.end());
      through.erase(std::unique(through.begin(), through.end()), through.end());
      std::string line = "edges";
      for (auto id : through) line += " " + std::to_string(id);
      line += " pass through one crossing point";
      witnesses.push_back(std::move(line));
    }
    i = j;
  }
  if (!witnesses.empty()) throw DegenerateGeometry(std::move(witnesses));

  return Drawing(graph, std::move(crossings), Representation::geometric, std::move(coords));
}

}  // namespace kplanar
