#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kplanar/bounds.hpp"
#include "kplanar/construction.hpp"
#include "kplanar/generators.hpp"
#include "kplanar/oracle.hpp"

namespace kp = kplanar;
namespace oc = kplanar::oracle;
using kp::Rational;
using Objective = oc::LabelingObjective;

namespace {

kp::Drawing crossing_free() {
  return kp::crossings_from_geometry(kp::Graph(4, {{0, 1}, {1, 2}, {2, 3}}),
                                     {{0, 0}, {3, 0}, {3, 3}, {0, 3}});
}

// Two vertex-disjoint edges that cross once: edges 0 = {0,1}, 1 = {2,3}.
kp::Drawing single_crossing() {
  return kp::Drawing(kp::Graph(4, {{0, 1}, {2, 3}}), {{0, 1, 1}});
}

kp::PlaneAssignment assignment_of(const kp::Graph& g, const std::vector<int>& labels, int k) {
  return kp::assign_planes(g, kp::VertexLabeling{{labels.begin(), labels.end()}, k, 0});
}

// Brute-force distribution of sum_i C_i over all k^n labelings.
struct Moments {
  Rational mean = 0;
  Rational variance = 0;
};

Moments brute_force_moments(const kp::Drawing& d, const kp::WeightVector& w) {
  const int n = d.graph().vertex_count(), k = w.k();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  Rational m1 = 0, m2 = 0;
  while (true) {
    Rational p = 1;
    for (int x : labels) p *= w[x];
    if (p != 0) {
      const auto total = kp::surviving_report(d, assignment_of(d.graph(), labels, k)).total;
      m1 += p * total;
      m2 += p * total * total;
    }
    int i = 0;
    while (i < n && ++labels[static_cast<std::size_t>(i)] == k) labels[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return {m1, m2 - m1 * m1};
}

std::vector<kp::Drawing> small_drawings() {
  std::vector<kp::Drawing> out;
  for (int n = 4; n <= 6; ++n) out.push_back(kp::gen::convex_kn(n));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = kp::gen::random_graph(7, 10, seed);
    out.push_back(kp::gen::random_combinatorial_drawing(g, 3, 12, seed));
    out.push_back(kp::gen::random_geometric_drawing(kp::gen::random_graph(6, 9, seed + 50), seed));
  }
  return out;
}

}  // namespace

TEST(BestLabeling, ConvexK4) {
  auto d = kp::gen::convex_kn(4);
  auto r = oc::exact_best_labeling(d, 2, Objective::max_g);
  EXPECT_EQ(r.objective, 0);
  EXPECT_EQ(r.search_space, 16u);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(kp::surviving_report(d, assignment_of(d.graph(), r.witness, 2)).max_load, 0);
}

TEST(BestLabeling, CrossingFreeIsZero) {
  for (auto obj : {Objective::max_g, Objective::sum_g, Objective::combined}) {
    auto r = oc::exact_best_labeling(crossing_free(), 2, obj, 0.1);
    EXPECT_EQ(r.objective, 0);
    EXPECT_TRUE(r.feasible);
  }
}

TEST(BestLabeling, WitnessesRoundTrip) {
  for (const auto& d : small_drawings()) {
    for (int k = 1; k <= 3; ++k) {
      auto a = oc::exact_best_labeling(d, k, Objective::max_g);
      auto rep = kp::surviving_report(d, assignment_of(d.graph(), a.witness, k));
      EXPECT_EQ(rep.max_load, a.objective);
      auto s = oc::exact_best_labeling(d, k, Objective::sum_g);
      auto srep = kp::surviving_report(d, assignment_of(d.graph(), s.witness, k));
      EXPECT_EQ(2 * srep.total, s.objective);
      auto c = oc::exact_best_labeling(d, k, Objective::combined, 0.2);
      if (c.feasible) {
        auto crep = kp::surviving_report(d, assignment_of(d.graph(), c.witness, k));
        EXPECT_EQ(crep.max_load, c.objective);
        EXPECT_GE(c.objective, a.objective);
      } else {
        EXPECT_EQ(c.objective, -1);
      }
    }
  }
}

TEST(BestLabeling, MatchesBruteForce) {
  for (const auto& d : small_drawings()) {
    const int n = d.graph().vertex_count();
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::int64_t best = INT64_MAX;
    std::vector<int> best_labels;
    while (true) {
      auto v = kp::surviving_report(d, assignment_of(d.graph(), labels, 2)).max_load;
      if (v < best) {
        best = v;
        best_labels = labels;
      }
      // Lexicographic increment (first vertex most significant).
      int i = n - 1;
      while (i >= 0 && ++labels[static_cast<std::size_t>(i)] == 2) labels[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
    auto r = oc::exact_best_labeling(d, 2, Objective::max_g);
    EXPECT_EQ(r.objective, best);
    EXPECT_EQ(r.witness, best_labels);
  }
}

TEST(BestLabeling, StateCapEnforced) {
  EXPECT_THROW(oc::exact_best_labeling(kp::gen::convex_kn(25), 2, Objective::max_g), kp::Error);
}

TEST(BestEdgePartition, Examples) {
  auto k4 = oc::exact_best_edge_partition(kp::gen::convex_kn(4), 2);
  EXPECT_EQ(k4.objective, 0);
  EXPECT_EQ(k4.search_space, 64u);
  EXPECT_EQ(oc::exact_best_edge_partition(single_crossing(), 1).objective, 1);
  EXPECT_THROW(oc::exact_best_edge_partition(kp::gen::convex_kn(10), 2), kp::Error);
}

TEST(BestEdgePartition, EnoughPlanesRemoveAllCrossings) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40 && checked < 15; ++seed) {
    auto g = kp::gen::random_graph(8, 10, seed);
    auto d = kp::gen::random_combinatorial_drawing(g, 2, 8, seed);
    const int k = kp::intersection_graph(d).max_degree() + 1;
    if (std::pow(k, d.graph().edge_count()) > 2e7) continue;
    auto r = oc::exact_best_edge_partition(d, k);
    EXPECT_EQ(r.objective, 0);
    std::vector<int> planes(r.witness.begin(), r.witness.end());
    EXPECT_EQ(kp::co_plane_report(d, kp::PlaneAssignment{k, planes, {}}).max_load, 0);
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(BestEdgePartition, WitnessRoundTrip) {
  for (const auto& d : small_drawings()) {
    if (d.graph().edge_count() > 12) continue;
    auto r = oc::exact_best_edge_partition(d, 2);
    std::vector<int> planes(r.witness.begin(), r.witness.end());
    EXPECT_EQ(kp::co_plane_report(d, kp::PlaneAssignment{2, planes, {}}).max_load, r.objective);
  }
}

TEST(TypeAwareVersusCoPlane, ExhaustiveOnSmallDrawings) {
  for (const auto& d : small_drawings()) {
    if (d.graph().edge_count() > 12) continue;
    const int n = d.graph().vertex_count();
    for (int k = 2; k <= 3; ++k) {
      std::vector<int> labels(static_cast<std::size_t>(n), 0);
      while (true) {
        auto a = assignment_of(d.graph(), labels, k);
        EXPECT_LE(kp::surviving_report(d, a).max_load, kp::co_plane_report(d, a).max_load);
        int i = 0;
        while (i < n && ++labels[static_cast<std::size_t>(i)] == k) labels[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
      }
    }
  }
}

TEST(SurvivalExpectation, Examples) {
  EXPECT_EQ(oc::exact_survival_expectation(kp::gen::convex_kn(6), kp::uniform_weights(2)),
            Rational(45, 8));
  EXPECT_EQ(oc::exact_survival_expectation(single_crossing(), kp::optimal_weights(2)),
            Rational(11, 27));
  auto k7 = kp::gen::convex_kn(7);
  EXPECT_EQ(oc::exact_survival_expectation(k7, kp::uniform_weights(1)), Rational(k7.total_crossings()));
}

TEST(SurvivalExpectation, UniformClosedFormOnVertexDisjointCrossings) {
  for (int n = 4; n <= 9; ++n) {
    auto d = kp::gen::convex_kn(n);
    for (int k = 1; k <= 5; ++k) {
      const Rational factor = Rational(2, k * k) - Rational(1, k * k * k);
      EXPECT_EQ(oc::exact_survival_expectation(d, kp::uniform_weights(k)),
                factor * d.total_crossings());
    }
  }
}

TEST(SurvivalMoments, MatchBruteForce) {
  for (const auto& d : small_drawings()) {
    for (const auto& w : {kp::uniform_weights(2), kp::optimal_weights(2), kp::uniform_weights(3)}) {
      if (std::pow(w.k(), d.graph().vertex_count()) > 1e5) continue;
      auto bf = brute_force_moments(d, w);
      EXPECT_EQ(oc::exact_survival_expectation(d, w), bf.mean);
      auto var = oc::exact_survival_variance(d, w);
      ASSERT_TRUE(var.has_value());
      EXPECT_EQ(*var, bf.variance);
    }
  }
}

TEST(ConditionalSurvival, ClosedForms) {
  auto d = single_crossing();
  auto same = oc::exact_conditional_survival(d, kp::optimal_weights(2), 0, 0, 0);
  ASSERT_EQ(same.partners.size(), 1u);
  EXPECT_EQ(same.partner_survival[0], Rational(4, 9));
  EXPECT_EQ(same.free_vertices, 2);
  auto diff = oc::exact_conditional_survival(d, kp::uniform_weights(2), 0, 0, 1);
  EXPECT_EQ(diff.partner_survival[0], Rational(1, 2));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto w = kp::WeightVector({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
      auto c = oc::exact_conditional_survival(d, w, 1, i, j);
      const Rational expected = i == j ? Rational(w[i] * w[i]) : Rational(2 * w[i] * w[j]);
      EXPECT_EQ(c.partner_survival[0], expected);
      EXPECT_EQ(c.mean, expected);
      EXPECT_EQ(c.load_distribution[0] + c.load_distribution[1], 1);
    }
  }
  EXPECT_THROW(oc::exact_conditional_survival(d, kp::uniform_weights(2), 0, 2, 0), kp::Error);
  EXPECT_THROW(oc::exact_conditional_survival(d, kp::uniform_weights(2), 5, 0, 0), kp::Error);
}

TEST(ConditionalSurvival, MeanIsSumOfPartnerSurvival) {
  auto d = kp::gen::convex_kn(7);
  auto w = kp::optimal_weights(2);
  for (kp::EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    auto c = oc::exact_conditional_survival(d, w, e, 0, 1);
    Rational sum = 0, mass = 0, mean = 0;
    for (const auto& p : c.partner_survival) sum += p;
    for (std::size_t s = 0; s < c.load_distribution.size(); ++s) {
      mass += c.load_distribution[s];
      mean += c.load_distribution[s] * static_cast<int>(s);
    }
    EXPECT_EQ(mass, 1);
    EXPECT_EQ(sum, c.mean);
    EXPECT_EQ(mean, c.mean);
  }
}

TEST(ConditionalSurvival, TailBelowMcDiarmidOnConvexK8) {
  auto d = kp::gen::convex_kn(8);
  auto w = kp::uniform_weights(2);
  const auto L = d.local_crossing_number();
  const auto delta = d.graph().max_degree();
  for (kp::EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    auto dist = oc::exact_load_distribution(d, w, e);
    Rational mean = 0;
    for (std::size_t s = 0; s < dist.size(); ++s) mean += dist[s] * static_cast<int>(s);
    for (int t = 1; t <= L; ++t) {
      Rational tail = 0;
      for (std::size_t s = 0; s < dist.size(); ++s) {
        if (Rational(static_cast<int>(s)) >= mean + t) tail += dist[s];
      }
      const double bound = kp::bounds::hoeffding_tail(t, L, std::sqrt(static_cast<double>(delta)));
      EXPECT_LE(kp::to_double(tail), bound) << "edge " << e << " t " << t;
    }
  }
}

TEST(DependencyScopes, CrossingFreeOnlyIncidentEdges) {
  auto d = crossing_free();
  auto s = oc::dependency_scopes(d);
  for (kp::EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    EXPECT_TRUE(s.scope[static_cast<std::size_t>(e)].empty());
    for (kp::EdgeId f : s.dependents[static_cast<std::size_t>(e)]) {
      EXPECT_TRUE(d.graph().edge(e).shares_endpoint(d.graph().edge(f)));
    }
  }
}

TEST(DependencyScopes, ConvexK6WithinBound) {
  auto d = kp::gen::convex_kn(6);
  auto s = oc::dependency_scopes(d);
  EXPECT_EQ(kp::bounds::dependency_degree_bound(d.local_crossing_number(), d.graph().max_degree()), 170);
  EXPECT_LE(s.max_degree, 170);
  EXPECT_EQ(s.max_degree, *std::max_element(s.degree.begin(), s.degree.end()));
}

TEST(DependencyScopes, DisjointPairsIndependent) {
  // Edges 0,1 cross; edges 2,3 cross; all eight endpoints distinct.
  kp::Drawing d(kp::Graph(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}), {{0, 1, 1}, {2, 3, 1}});
  auto s = oc::dependency_scopes(d);
  for (kp::EdgeId e : {0, 1}) {
    for (kp::EdgeId f : s.dependents[static_cast<std::size_t>(e)]) EXPECT_LT(f, 2);
  }
  EXPECT_EQ(s.scope[0], (std::vector<kp::VertexId>{2, 3}));
}

TEST(DependencyScopes, BoundHoldsOnGeneratedDrawings) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = kp::gen::random_graph(12, 24, seed);
    auto d = kp::gen::random_geometric_drawing(g, seed);
    auto s = oc::dependency_scopes(d);
    EXPECT_LE(s.max_degree,
              kp::bounds::dependency_degree_bound(d.local_crossing_number(), d.graph().max_degree()));
  }
}
