#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "kplanar/bounds.hpp"
#include "kplanar/generators.hpp"

namespace kp = kplanar;
namespace gen = kplanar::gen;

namespace {

// Segment-pair recount of the stored coordinates.
std::int64_t recount_crossings(const kp::Drawing& d) {
  const auto& g = d.graph();
  const auto p = d.coords();
  std::int64_t count = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    for (int f = e + 1; f < g.edge_count(); ++f) {
      if (g.edge(e).shares_endpoint(g.edge(f))) continue;
      count += kp::geom::segments_cross(p[g.edge(e).u], p[g.edge(e).v], p[g.edge(f).u], p[g.edge(f).v]);
    }
  }
  return count;
}

}  // namespace

TEST(ConvexKn, SmallExamples) {
  auto k4 = gen::convex_kn(4);
  EXPECT_EQ(k4.total_crossings(), 1);
  EXPECT_EQ(k4.local_crossing_number(), 1);
  auto k5 = gen::convex_kn(5);
  EXPECT_EQ(k5.total_crossings(), 5);
  EXPECT_EQ(k5.local_crossing_number(), 2);
  auto k6 = gen::convex_kn(6);
  EXPECT_EQ(k6.total_crossings(), 15);
  EXPECT_EQ(k6.local_crossing_number(), 4);
  EXPECT_THROW(gen::convex_kn(2), kp::Error);
}

TEST(ConvexKn, CrossingCountsAndChordLoads) {
  for (int n = 3; n <= 12; ++n) {
    auto d = gen::convex_kn(n);
    EXPECT_EQ(d.total_crossings(), gen::binomial(n, 4)) << n;
    EXPECT_EQ(recount_crossings(d), gen::binomial(n, 4)) << n;
    for (kp::EdgeId e = 0; e < d.graph().edge_count(); ++e) {
      const auto& edge = d.graph().edge(e);
      const int diff = std::abs(edge.u - edge.v);
      const int g = std::min(diff, n - diff);
      EXPECT_EQ(d.load(e), static_cast<std::int64_t>(g - 1) * (n - g - 1)) << n << " edge " << e;
    }
  }
}

TEST(ConvexKn, LargeInstancesMeetLcrLowerBound) {
  for (int n : {15, 20, 30}) {
    auto d = gen::convex_kn(n);
    EXPECT_EQ(d.total_crossings(), gen::binomial(n, 4));
    auto lb = kp::bounds::lcr_lower_bound(d.graph().edge_count(), n);
    ASSERT_TRUE(lb.applies());
    EXPECT_GE(static_cast<double>(d.local_crossing_number()), *lb.value);
  }
}

TEST(ConvexKn, Deterministic) {
  auto a = gen::convex_kn(9), b = gen::convex_kn(9);
  EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end()));
}

TEST(CylindricalKn, DeterministicAndConsistent) {
  for (int n = 6; n <= 20; n += 2) {
    auto a = gen::cylindrical_kn(n), b = gen::cylindrical_kn(n);
    EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end()));
    EXPECT_TRUE(std::ranges::equal(a.crossings(), b.crossings()));
    EXPECT_EQ(recount_crossings(a), a.total_crossings());
    EXPECT_EQ(a.graph().edge_count(), n * (n - 1) / 2);
  }
  EXPECT_THROW(gen::cylindrical_kn(7), kp::Error);
  EXPECT_THROW(gen::cylindrical_kn(4), kp::Error);
}

TEST(CylindricalKn, LoadNotAboveConvexK8) {
  EXPECT_LE(gen::cylindrical_kn(8).local_crossing_number(), gen::convex_kn(8).local_crossing_number());
}

TEST(Regularish, NearRegular) {
  auto r = gen::random_regularish(100, 4, 7);
  for (kp::VertexId v = 0; v < 100; ++v) {
    EXPECT_GE(r.graph.degree(v), 3);
    EXPECT_LE(r.graph.degree(v), 5);
  }
  EXPECT_LE(r.alpha, 1.25);
  EXPECT_DOUBLE_EQ(r.alpha, r.graph.degree_ratio());
}

TEST(Regularish, AlphaGuaranteeAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int d : {3, 6, 10}) {
      auto r = gen::random_regularish(60, d, seed);
      EXPECT_LE(r.alpha, 1.0 + 3.0 / d);
      EXPECT_GE(r.alpha, 1.0);
    }
  }
}

TEST(Regularish, EdgeCases) {
  auto r = gen::random_regularish(10, 0, 1);
  EXPECT_EQ(r.graph.edge_count(), 0);
  EXPECT_EQ(r.graph.vertex_count(), 10);
  EXPECT_THROW(gen::random_regularish(5, 3, 1), kp::Error);
  EXPECT_THROW(gen::random_regularish(4, 4, 1), kp::Error);
}

TEST(Regularish, Deterministic) {
  auto a = gen::random_regularish(50, 4, 3), b = gen::random_regularish(50, 4, 3);
  EXPECT_TRUE(std::ranges::equal(a.graph.edges(), b.graph.edges()));
}

TEST(RandomGeometric, TriangleNeverCrosses) {
  kp::Graph tri(3, {{0, 1}, {1, 2}, {2, 0}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(gen::random_geometric_drawing(tri, seed).total_crossings(), 0);
  }
}

TEST(RandomGeometric, K5AlwaysCrosses) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto d = gen::random_geometric_drawing(kp::complete_graph(5), seed);
    EXPECT_GE(d.total_crossings(), 1);
    EXPECT_EQ(recount_crossings(d), d.total_crossings());
    for (const auto& p : d.coords()) {
      EXPECT_GE(p.x, 0);
      EXPECT_LT(p.x, 50);
      EXPECT_GE(p.y, 0);
      EXPECT_LT(p.y, 50);
    }
  }
}

TEST(RandomGeometric, Deterministic) {
  auto g = gen::random_graph(15, 40, 2);
  auto a = gen::random_geometric_drawing(g, 11), b = gen::random_geometric_drawing(g, 11);
  EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end()));
  auto c = gen::random_geometric_drawing(g, 12);
  EXPECT_FALSE(std::equal(a.coords().begin(), a.coords().end(), c.coords().begin(), c.coords().end()));
}

TEST(RandomGraph, ExactEdgeCount) {
  auto g = gen::random_graph(10, 45, 1);
  EXPECT_EQ(g.edge_count(), 45);
  EXPECT_THROW(gen::random_graph(10, 46, 1), kp::Error);
}

TEST(PathsAndCycles, IntersectionGraphShape) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto d = gen::paths_and_cycles_drawing(30, seed);
    auto ig = kp::intersection_graph(d);
    EXPECT_EQ(ig.max_degree(), 2);
    EXPECT_EQ(d.graph().max_degree(), 1);
  }
}

TEST(RandomCombinatorial, RespectsPartnerCap) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto d = gen::random_combinatorial_drawing(gen::random_graph(12, 30, seed), 4, 60, seed);
    EXPECT_LE(kp::intersection_graph(d).max_degree(), 4);
    EXPECT_FALSE(d.has_adjacent_crossings());
  }
}
