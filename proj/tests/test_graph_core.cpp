#include <gtest/gtest.h>

#include <set>

#include "kplanar/drawing.hpp"
#include "kplanar/generators.hpp"
#include "kplanar/geometry.hpp"
#include "kplanar/graph.hpp"
#include "kplanar/io.hpp"
#include "kplanar/rational.hpp"
#include "kplanar/rng.hpp"

namespace kp = kplanar;
using kp::Point;

namespace {

// Independent oracle: solve a + t(b-a) = c + s(d-c) in exact rationals and
// require 0 < t, s < 1. Parallel segments never count.
std::set<std::pair<int, int>> parametric_crossings(const kp::Graph& g, const std::vector<Point>& p) {
  std::set<std::pair<int, int>> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    for (int f = e + 1; f < g.edge_count(); ++f) {
      if (g.edge(e).shares_endpoint(g.edge(f))) continue;
      const Point a = p[g.edge(e).u], b = p[g.edge(e).v], c = p[g.edge(f).u], d = p[g.edge(f).v];
      kp::BigInt rx = b.x - a.x, ry = b.y - a.y, sx = d.x - c.x, sy = d.y - c.y;
      kp::BigInt den = rx * sy - ry * sx;
      if (den == 0) continue;
      kp::BigInt qx = c.x - a.x, qy = c.y - a.y;
      const kp::Rational t = kp::Rational(kp::BigInt(qx * sy - qy * sx)) / kp::Rational(den);
      const kp::Rational s = kp::Rational(kp::BigInt(qx * ry - qy * rx)) / kp::Rational(den);
      if (t > 0 && t < 1 && s > 0 && s < 1) out.insert({e, f});
    }
  }
  return out;
}

std::set<std::pair<int, int>> crossing_set(const kp::Drawing& d) {
  std::set<std::pair<int, int>> out;
  for (const auto& c : d.crossings()) out.insert({c.e, c.f});
  return out;
}

kp::Graph path3() { return kp::Graph(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST(LoadGraph, Triangle) {
  auto g = kp::load_graph("0 1\n1 2\n2 0");
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_EQ(g.max_degree(), 2);
}

TEST(LoadGraph, DuplicateEdgeRejected) {
  EXPECT_THROW(kp::load_graph("0 1\n0 1"), kp::Error);
  EXPECT_THROW(kp::load_graph("0 1\n1 0"), kp::Error);
}

TEST(LoadGraph, CompleteGraphK5) {
  std::string text;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) text += std::to_string(i) + " " + std::to_string(j) + "\n";
  auto g = kp::load_graph(text);
  EXPECT_EQ(g.vertex_count(), 5);
  EXPECT_EQ(g.edge_count(), 10);
  EXPECT_EQ(g.max_degree(), 4);
}

TEST(LoadGraph, HeaderAllowsIsolatedVertices) {
  auto g = kp::load_graph("n 7\n# comment\n0 1\n\n2 3 # trailing\n");
  EXPECT_EQ(g.vertex_count(), 7);
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_EQ(g.degree(6), 0);
}

TEST(LoadGraph, DiagnosticsNameTheLine) {
  try {
    kp::load_graph("0 1\n2 2\n");
    FAIL() << "self-loop accepted";
  } catch (const kp::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(kp::load_graph("0 x\n"), kp::Error);
  EXPECT_THROW(kp::load_graph("0 1 2\n"), kp::Error);
  EXPECT_THROW(kp::load_graph("n 2\n0 5\n"), kp::Error);
}

TEST(LoadGraph, DegreeSumIsTwiceEdges) {
  auto g = kp::gen::random_graph(30, 80, 5);
  std::int64_t sum = 0;
  int max = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    sum += g.degree(v);
    max = std::max(max, g.degree(v));
  }
  EXPECT_EQ(sum, 2 * g.edge_count());
  EXPECT_EQ(max, g.max_degree());
  EXPECT_EQ(kp::load_graph(kp::to_edge_list_text(g)).edges().size(), g.edges().size());
}

TEST(Geometry, ConvexK4UnitSquare) {
  auto d = kp::crossings_from_geometry(kp::complete_graph(4), {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(d.total_crossings(), 1);
  EXPECT_EQ(d.local_crossing_number(), 1);
  ASSERT_EQ(d.crossings().size(), 1u);
  const auto& c = d.crossings()[0];
  // The diagonals are {0,2} and {1,3}.
  EXPECT_EQ(d.graph().edge(c.e), (kp::Edge{0, 2}));
  EXPECT_EQ(d.graph().edge(c.f), (kp::Edge{1, 3}));
}

TEST(Geometry, PathHasNoCrossings) {
  auto d = kp::crossings_from_geometry(path3(), {{0, 0}, {5, 1}, {2, 7}});
  EXPECT_EQ(d.total_crossings(), 0);
  EXPECT_EQ(d.local_crossing_number(), 0);
}

TEST(Geometry, ConvexHexagonK6) {
  // Irregular convex hexagon: no three long diagonals meet.
  auto d = kp::crossings_from_geometry(kp::complete_graph(6),
                                       {{0, 0}, {10, -1}, {17, 6}, {15, 15}, {5, 17}, {-3, 9}});
  EXPECT_EQ(d.total_crossings(), 15);
  EXPECT_EQ(d.local_crossing_number(), 4);
}

TEST(Geometry, ConcurrentEdgesRejectedWithWitnesses) {
  // Three segments through the origin.
  kp::Graph g(6, {{0, 1}, {2, 3}, {4, 5}});
  std::vector<Point> p{{-2, 0}, {2, 0}, {0, -2}, {0, 2}, {-2, -2}, {2, 2}};
  try {
    kp::crossings_from_geometry(g, p);
    FAIL() << "concurrency accepted";
  } catch (const kp::DegenerateGeometry& e) {
    ASSERT_FALSE(e.witnesses().empty());
    EXPECT_NE(e.witnesses()[0].find("0"), std::string::npos);
  }
}

TEST(Geometry, VertexInsideEdgeRejected) {
  kp::Graph g(3, {{0, 1}});
  EXPECT_THROW(kp::crossings_from_geometry(g, {{0, 0}, {4, 0}, {2, 0}}), kp::DegenerateGeometry);
}

TEST(Geometry, CollinearOverlapRejected) {
  kp::Graph g(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(kp::crossings_from_geometry(g, {{0, 0}, {4, 0}, {2, 0}, {6, 0}}),
               kp::DegenerateGeometry);
}

TEST(Geometry, CoincidentVerticesRejected) {
  EXPECT_THROW(kp::crossings_from_geometry(path3(), {{1, 1}, {1, 1}, {3, 0}}),
               kp::DegenerateGeometry);
}

TEST(Geometry, OutOfRangeCoordinatesRejected) {
  EXPECT_THROW(kp::crossings_from_geometry(path3(), {{0, 0}, {kp::kMaxCoordinate + 1, 0}, {1, 1}}),
               kp::Error);
}

TEST(Geometry, IntegerizeScalesDecimals) {
  std::vector<std::array<double, 2>> raw{{0.5, 1.25}, {2, -0.75}};
  auto p = kp::integerize(raw);
  EXPECT_EQ(p[0], (Point{50, 125}));
  EXPECT_EQ(p[1], (Point{200, -75}));
}

TEST(Geometry, MatchesParametricOracleOnRandomDrawings) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = kp::gen::random_graph(12, 30, seed);
    auto d = kp::gen::random_geometric_drawing(g, seed);
    std::vector<Point> p(d.coords().begin(), d.coords().end());
    EXPECT_EQ(crossing_set(d), parametric_crossings(g, p)) << "seed " << seed;
  }
}

TEST(Geometry, InvariantUnderTranslationRotationScaling) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = kp::gen::random_geometric_drawing(kp::gen::random_graph(10, 25, seed), seed);
    const auto base = crossing_set(d);
    std::vector<Point> moved, turned, scaled;
    for (const auto& q : d.coords()) {
      moved.push_back({q.x + 1234, q.y - 987});
      turned.push_back({-q.y, q.x});
      scaled.push_back({q.x * 7, q.y * 7});
    }
    EXPECT_EQ(crossing_set(kp::crossings_from_geometry(d.graph(), moved)), base);
    EXPECT_EQ(crossing_set(kp::crossings_from_geometry(d.graph(), turned)), base);
    EXPECT_EQ(crossing_set(kp::crossings_from_geometry(d.graph(), scaled)), base);
  }
}

TEST(CombinatorialDrawing, SingleCrossing) {
  auto d = kp::io::parse_drawing(
      std::string_view(R"({"format":"combinatorial","edges":[[0,1],[2,3]],"crossings":[[0,1]]})"));
  EXPECT_EQ(d.total_crossings(), 1);
  EXPECT_EQ(d.local_crossing_number(), 1);
}

TEST(CombinatorialDrawing, SelfCrossingRejected) {
  EXPECT_THROW(kp::io::parse_drawing(std::string_view(
                   R"({"format":"combinatorial","edges":[[0,1],[2,3]],"crossings":[[0,0]]})")),
               kp::Error);
  EXPECT_THROW(kp::io::parse_drawing(std::string_view(
                   R"({"format":"combinatorial","edges":[[0,1],[2,3]],"crossings":[[0,7]]})")),
               kp::Error);
}

TEST(CombinatorialDrawing, CycleOfCrossingsOnC5) {
  kp::Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  std::vector<kp::Crossing> cr;
  for (int i = 0; i < 5; ++i) cr.push_back({i, (i + 1) % 5, 1});
  kp::Drawing d(c5, cr);
  EXPECT_EQ(d.local_crossing_number(), 2);
  EXPECT_EQ(d.total_crossings(), 5);
  EXPECT_TRUE(d.has_adjacent_crossings());
}

TEST(CombinatorialDrawing, MultiplicitiesCountCrossingPoints) {
  kp::Graph g(6, {{0, 1}, {2, 3}, {4, 5}});
  kp::Drawing d(g, {{0, 1, 3}, {1, 2, 1}, {1, 0, 1}});
  EXPECT_EQ(d.crossings().size(), 2u);
  EXPECT_EQ(d.load(0), 4);
  EXPECT_EQ(d.load(1), 5);
  EXPECT_EQ(d.total_crossings(), 5);
  EXPECT_EQ(d.local_crossing_number(), 5);
  EXPECT_FALSE(d.all_multiplicities_one());
  // Delta(I) counts partners, so it is below L here.
  EXPECT_EQ(kp::intersection_graph(d).max_degree(), 2);
}

TEST(IntersectionGraph, ConvexK4) {
  auto i = kp::intersection_graph(kp::gen::convex_kn(4));
  EXPECT_EQ(i.vertex_count(), 6);
  EXPECT_EQ(i.edge_count(), 1);
}

TEST(IntersectionGraph, CrossingFreeIsEmpty) {
  auto d = kp::crossings_from_geometry(path3(), {{0, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(kp::intersection_graph(d).edge_count(), 0);
}

TEST(IntersectionGraph, ConvexK6DegreeEqualsL) {
  auto d = kp::gen::convex_kn(6);
  EXPECT_EQ(kp::intersection_graph(d).max_degree(), 4);
  EXPECT_EQ(d.local_crossing_number(), 4);
}

TEST(DrawingProperties, LoadSumAndIntersectionDegree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = kp::gen::random_graph(15, 40, seed);
    for (const auto& d : {kp::gen::random_geometric_drawing(g, seed),
                          kp::gen::random_combinatorial_drawing(g, 5, 60, seed)}) {
      std::int64_t sum = 0;
      for (auto l : d.loads()) sum += l;
      EXPECT_EQ(sum, 2 * d.total_crossings());
      const auto i = kp::intersection_graph(d);
      EXPECT_LE(i.max_degree(), d.local_crossing_number());
      if (d.all_multiplicities_one()) {
        EXPECT_EQ(i.max_degree(), d.local_crossing_number());
      }
    }
  }
}
