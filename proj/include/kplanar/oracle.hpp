#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kplanar/construction.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/rational.hpp"
#include "kplanar/weights.hpp"

namespace kplanar::oracle {

/// States an enumeration may visit before it refuses to run.
inline constexpr std::uint64_t kStateCap = 20'000'000;
/// Cap on label tuples of the free partner endpoints in conditional queries.
inline constexpr std::uint64_t kConditionalCap = std::uint64_t{1} << 20;

enum class LabelingObjective {
  max_g,     ///< max_e g(e)
  sum_g,     ///< sum_e g(e) (twice the surviving crossing total)
  combined,  ///< max_e g(e) subject to sum_i C_i <= (2/k^2 - 1/k^3 + eps) C
};

struct OracleResult {
  std::int64_t objective = 0;
  bool feasible = true;         ///< false when no candidate meets the constraint
  std::vector<int> witness;     ///< labels per vertex, or planes per edge
  std::uint64_t search_space = 0;
  bool exhaustive = true;
};

namespace detail {

/// base^exp, or nullopt once it exceeds cap.
inline std::optional<std::uint64_t> capped_power(std::uint64_t base, std::uint64_t exp,
                                                 std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return std::nullopt;
    out *= base;
  }
  return out;
}

/// Weights over a common denominator: p_i = numerator[i] / denominator.
struct IntegerWeights {
  std::vector<BigInt> numerator;
  BigInt denominator = 1;

  explicit IntegerWeights(const WeightVector& w) {
    for (const auto& p : w.probabilities()) denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(p));
    for (const auto& p : w.probabilities()) {
      numerator.push_back(boost::multiprecision::numerator(p) *
                          (denominator / boost::multiprecision::denominator(p)));
    }
  }
};

inline std::vector<VertexId> crossing_vertices(const Graph& g, const Crossing& c) {
  std::vector<VertexId> vs{g.edge(c.e).u, g.edge(c.e).v, g.edge(c.f).u, g.edge(c.f).v};
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace detail

/// Exact optimum of the vertex-labeling construction over all k^n labelings,
/// under surviving-crossing (same type) semantics.
///
/// Depth-first enumeration in lexicographic label order with branch-and-bound
/// on partial loads, which only ever grow. A strictly better leaf replaces
/// the incumbent, so the witness is the lexicographically smallest optimum.
inline OracleResult exact_best_labeling(const Drawing& drawing, int k, LabelingObjective objective,
                                        double epsilon = 0.0) {
  if (k < 1) throw Error("k must be >= 1");
  const Graph& g = drawing.graph();
  const int n = g.vertex_count();
  auto space = detail::capped_power(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                                    kStateCap);
  if (!space) throw SearchSpaceTooLarge("k^n exceeds the 2e7 enumeration cap");

  // Each crossing is decided once all its endpoints are labeled.
  std::vector<std::vector<std::size_t>> completes_at(static_cast<std::size_t>(std::max(n, 1)));
  const auto crossings = drawing.crossings();
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    auto vs = detail::crossing_vertices(g, crossings[c]);
    completes_at[static_cast<std::size_t>(vs.back())].push_back(c);
  }
  const double kk = k;
  const double total_cap = (2.0 / (kk * kk) - 1.0 / (kk * kk * kk) + epsilon) *
                           static_cast<double>(drawing.total_crossings());

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> load(static_cast<std::size_t>(g.edge_count()), 0);
  OracleResult result;
  result.search_space = *space;
  result.feasible = false;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  auto type_of = [&](EdgeId e) {
    return make_type(labels[static_cast<std::size_t>(g.edge(e).u)],
                     labels[static_cast<std::size_t>(g.edge(e).v)]);
  };
  auto score = [&](std::int64_t max_load, std::int64_t total) {
    return objective == LabelingObjective::sum_g ? 2 * total : max_load;
  };

  auto dfs = [&](auto&& self, int v, std::int64_t max_load, std::int64_t total) -> void {
    if (v == n) {
      std::int64_t value = score(max_load, total);
      if (value < best) {
        best = value;
        result.witness = labels;
        result.feasible = true;
      }
      return;
    }
    for (int label = 0; label < k; ++label) {
      labels[static_cast<std::size_t>(v)] = label;
      std::int64_t new_max = max_load, new_total = total;
      std::vector<std::size_t> applied;
      for (auto c : completes_at[static_cast<std::size_t>(v)]) {
        const auto& cr = crossings[c];
        if (type_of(cr.e) == type_of(cr.f)) {
          load[static_cast<std::size_t>(cr.e)] += cr.multiplicity;
          load[static_cast<std::size_t>(cr.f)] += cr.multiplicity;
          new_max = std::max({new_max, load[static_cast<std::size_t>(cr.e)],
                              load[static_cast<std::size_t>(cr.f)]});
          new_total += cr.multiplicity;
          applied.push_back(c);
        }
      }
      bool prune = score(new_max, new_total) >= best;
      if (objective == LabelingObjective::combined &&
          static_cast<double>(new_total) > total_cap) {
        prune = true;
      }
      if (!prune) self(self, v + 1, new_max, new_total);
      for (auto c : applied) {
        load[static_cast<std::size_t>(crossings[c].e)] -= crossings[c].multiplicity;
        load[static_cast<std::size_t>(crossings[c].f)] -= crossings[c].multiplicity;
      }
    }
  };
  dfs(dfs, 0, 0, 0);
  result.objective = result.feasible ? best : -1;
  return result;
}

/// Exact minimum over all k^m edge partitions of the largest co-plane load:
/// the drawing-restricted k-planar local crossing number.
inline OracleResult exact_best_edge_partition(const Drawing& drawing, int k) {
  if (k < 1) throw Error("k must be >= 1");
  const int m = drawing.graph().edge_count();
  auto space = detail::capped_power(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m),
                                    kStateCap);
  if (!space) throw SearchSpaceTooLarge("k^m exceeds the 2e7 enumeration cap");
  std::vector<int> plane(static_cast<std::size_t>(m), 0);
  std::vector<std::int64_t> load(static_cast<std::size_t>(m), 0);
  OracleResult result;
  result.search_space = *space;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  auto dfs = [&](auto&& self, EdgeId e, std::int64_t max_load) -> void {
    if (e == m) {
      if (max_load < best) {
        best = max_load;
        result.witness = plane;
      }
      return;
    }
    for (int p = 0; p < k; ++p) {
      plane[static_cast<std::size_t>(e)] = p;
      std::int64_t new_max = max_load;
      for (const auto& partner : drawing.partners(e)) {
        if (partner.edge < e && plane[static_cast<std::size_t>(partner.edge)] == p) {
          load[static_cast<std::size_t>(e)] += partner.multiplicity;
          load[static_cast<std::size_t>(partner.edge)] += partner.multiplicity;
          new_max = std::max({new_max, load[static_cast<std::size_t>(e)],
                              load[static_cast<std::size_t>(partner.edge)]});
        }
      }
      if (new_max < best) self(self, e + 1, new_max);
      for (const auto& partner : drawing.partners(e)) {
        if (partner.edge < e && plane[static_cast<std::size_t>(partner.edge)] == p) {
          load[static_cast<std::size_t>(e)] -= partner.multiplicity;
          load[static_cast<std::size_t>(partner.edge)] -= partner.multiplicity;
        }
      }
    }
  };
  dfs(dfs, 0, 0);
  result.objective = best;
  return result;
}

/// E[sum_i C_i] under independent labels, exactly. Each crossing pair's
/// distinct endpoints (3 or 4) are enumerated jointly.
inline Rational exact_survival_expectation(const Drawing& drawing, const WeightVector& weights) {
  const Graph& g = drawing.graph();
  const detail::IntegerWeights iw(weights);
  const int k = weights.k();
  BigInt numerator = 0;  // scaled by denominator^4
  for (const auto& c : drawing.crossings()) {
    auto vs = detail::crossing_vertices(g, c);
    std::array<int, 4> label{};
    auto index_of = [&](VertexId v) {
      return static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
    };
    const std::size_t eu = index_of(g.edge(c.e).u), ev = index_of(g.edge(c.e).v);
    const std::size_t fu = index_of(g.edge(c.f).u), fv = index_of(g.edge(c.f).v);
    BigInt pair_sum = 0;
    auto dfs = [&](auto&& self, std::size_t i, const BigInt& prob) -> void {
      if (i == vs.size()) {
        if (make_type(label[eu], label[ev]) == make_type(label[fu], label[fv])) pair_sum += prob;
        return;
      }
      for (int l = 0; l < k; ++l) {
        if (iw.numerator[static_cast<std::size_t>(l)] == 0) continue;
        label[i] = l;
        self(self, i + 1, prob * iw.numerator[static_cast<std::size_t>(l)]);
      }
    };
    dfs(dfs, 0, BigInt(1));
    numerator += pair_sum * c.multiplicity * pow_int(iw.denominator, 4 - static_cast<unsigned>(vs.size()));
  }
  return Rational(numerator) / Rational(pow_int(iw.denominator, 4));
}

struct ConditionalSurvival {
  EdgeId edge = 0;
  int label_u = 0;
  int label_v = 0;
  std::vector<EdgeId> partners;
  std::vector<Rational> partner_survival;  ///< Pr[partner has the same type as edge]
  std::vector<Rational> load_distribution;  ///< Pr[g(edge) = s], s = 0..load(edge)
  Rational mean = 0;
  int free_vertices = 0;
};

/// Distribution of g(e) conditioned on the labels of e's endpoints, by
/// enumerating every label tuple of the partner endpoints other than u, v.
inline ConditionalSurvival exact_conditional_survival(const Drawing& drawing,
                                                      const WeightVector& weights, EdgeId edge,
                                                      int label_u, int label_v) {
  const Graph& g = drawing.graph();
  const int k = weights.k();
  if (edge < 0 || edge >= g.edge_count()) throw Error("unknown edge id");
  if (label_u < 0 || label_v < 0 || label_u >= k || label_v >= k) throw Error("label out of range");
  const Edge& uv = g.edge(edge);
  const auto partners = drawing.partners(edge);
  std::vector<VertexId> free;
  for (const auto& p : partners) {
    for (VertexId w : {g.edge(p.edge).u, g.edge(p.edge).v}) {
      if (!uv.has_endpoint(w)) free.push_back(w);
    }
  }
  std::sort(free.begin(), free.end());
  free.erase(std::unique(free.begin(), free.end()), free.end());
  if (!detail::capped_power(static_cast<std::uint64_t>(k), free.size(), kConditionalCap)) {
    throw SearchSpaceTooLarge("k^t exceeds the 2^20 conditional enumeration cap");
  }
  const detail::IntegerWeights iw(weights);
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), 0);
  label[static_cast<std::size_t>(uv.u)] = label_u;
  label[static_cast<std::size_t>(uv.v)] = label_v;
  const EdgeType own = make_type(label_u, label_v);

  ConditionalSurvival out;
  out.edge = edge;
  out.label_u = label_u;
  out.label_v = label_v;
  out.free_vertices = static_cast<int>(free.size());
  std::vector<BigInt> by_load(static_cast<std::size_t>(drawing.load(edge)) + 1, 0);
  std::vector<BigInt> by_partner(partners.size(), 0);
  for (const auto& p : partners) out.partners.push_back(p.edge);

  auto dfs = [&](auto&& self, std::size_t i, const BigInt& prob) -> void {
    if (i == free.size()) {
      std::int64_t s = 0;
      for (std::size_t q = 0; q < partners.size(); ++q) {
        const Edge& f = g.edge(partners[q].edge);
        if (make_type(label[static_cast<std::size_t>(f.u)], label[static_cast<std::size_t>(f.v)]) == own) {
          s += partners[q].multiplicity;
          by_partner[q] += prob;
        }
      }
      by_load[static_cast<std::size_t>(s)] += prob;
      return;
    }
    for (int l = 0; l < k; ++l) {
      if (iw.numerator[static_cast<std::size_t>(l)] == 0) continue;
      label[static_cast<std::size_t>(free[i])] = l;
      self(self, i + 1, prob * iw.numerator[static_cast<std::size_t>(l)]);
    }
  };
  dfs(dfs, 0, BigInt(1));
  const Rational scale(pow_int(iw.denominator, static_cast<unsigned>(free.size())));
  for (std::size_t s = 0; s < by_load.size(); ++s) {
    out.load_distribution.push_back(Rational(by_load[s]) / scale);
    out.mean += out.load_distribution.back() * static_cast<std::int64_t>(s);
  }
  for (const auto& b : by_partner) out.partner_survival.push_back(Rational(b) / scale);
  return out;
}

/// Unconditional distribution of g(e): the conditional distributions mixed
/// with weights p_i p_j over the endpoint labels.
inline std::vector<Rational> exact_load_distribution(const Drawing& drawing,
                                                     const WeightVector& weights, EdgeId edge) {
  std::vector<Rational> mix(static_cast<std::size_t>(drawing.load(edge)) + 1, 0);
  for (int i = 0; i < weights.k(); ++i) {
    for (int j = 0; j < weights.k(); ++j) {
      Rational w = weights[i] * weights[j];
      if (w == 0) continue;
      auto cond = exact_conditional_survival(drawing, weights, edge, i, j);
      for (std::size_t s = 0; s < mix.size(); ++s) mix[s] += w * cond.load_distribution[s];
    }
  }
  return mix;
}

struct DependencyScopes {
  /// Conditioned scope of each overload event: endpoints of the edge's
  /// crossing partners, excluding the edge's own endpoints.
  std::vector<std::vector<VertexId>> scope;
  /// Events each event may depend on: incident edges and edges whose scope
  /// meets this one.
  std::vector<std::vector<EdgeId>> dependents;
  std::vector<std::int64_t> degree;
  std::int64_t max_degree = 0;
};

inline DependencyScopes dependency_scopes(const Drawing& drawing) {
  const Graph& g = drawing.graph();
  const int m = g.edge_count();
  DependencyScopes out;
  out.scope.resize(static_cast<std::size_t>(m));
  std::vector<std::vector<EdgeId>> scoped_by(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeId e = 0; e < m; ++e) {
    auto& s = out.scope[static_cast<std::size_t>(e)];
    for (const auto& p : drawing.partners(e)) {
      for (VertexId w : {g.edge(p.edge).u, g.edge(p.edge).v}) {
        if (!g.edge(e).has_endpoint(w)) s.push_back(w);
      }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (VertexId w : s) scoped_by[static_cast<std::size_t>(w)].push_back(e);
  }
  out.dependents.resize(static_cast<std::size_t>(m));
  out.degree.assign(static_cast<std::size_t>(m), 0);
  std::vector<EdgeId> stamp(static_cast<std::size_t>(m), -1);
  for (EdgeId e = 0; e < m; ++e) {
    auto& deps = out.dependents[static_cast<std::size_t>(e)];
    auto add = [&](EdgeId other) {
      if (other == e || stamp[static_cast<std::size_t>(other)] == e) return;
      stamp[static_cast<std::size_t>(other)] = e;
      deps.push_back(other);
    };
    for (VertexId w : {g.edge(e).u, g.edge(e).v}) {
      for (const auto& inc : g.incidences(w)) add(inc.edge);
    }
    for (VertexId w : out.scope[static_cast<std::size_t>(e)]) {
      for (EdgeId other : scoped_by[static_cast<std::size_t>(w)]) add(other);
    }
    std::sort(deps.begin(), deps.end());
    out.degree[static_cast<std::size_t>(e)] = static_cast<std::int64_t>(deps.size());
    out.max_degree = std::max(out.max_degree, out.degree[static_cast<std::size_t>(e)]);
  }
  return out;
}

/// Exact Var[sum_i C_i] under independent labels, or nullopt when the
/// weights' common denominator exceeds 128 (the integer fast path limit).
///
/// Crossing indicators are independent unless their vertex sets meet. For a
/// dependent pair with shared vertices S, Pr[both survive] sums, over labels
/// of S, Pr[S] * Pr[p | S] * Pr[q | S]; the conditional tables are built per
/// crossing by enumeration.
inline std::optional<Rational> exact_survival_variance(const Drawing& drawing,
                                                       const WeightVector& weights) {
  using i128 = __int128;
  const detail::IntegerWeights iw(weights);
  if (iw.denominator > 128) return std::nullopt;
  const i128 den = iw.denominator.convert_to<long long>();
  std::vector<i128> a;
  for (const auto& x : iw.numerator) a.push_back(x.convert_to<long long>());
  const int k = weights.k();
  const Graph& g = drawing.graph();
  const auto crossings = drawing.crossings();
  std::vector<i128> den_pow(9, 1);
  for (int i = 1; i <= 8; ++i) den_pow[static_cast<std::size_t>(i)] = den_pow[static_cast<std::size_t>(i) - 1] * den;

  struct Table {
    std::vector<VertexId> vs;
    // table[mask][code]: Pr[survive | labels of vs restricted to mask], scaled
    // by den^(|vs| - |mask|); code is the base-k number of the masked labels.
    std::vector<std::vector<i128>> table;
  };
  std::vector<Table> tables(crossings.size());
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    auto& t = tables[c];
    t.vs = detail::crossing_vertices(g, crossings[c]);
    const std::size_t size = t.vs.size();
    auto index_of = [&](VertexId v) {
      return static_cast<std::size_t>(std::find(t.vs.begin(), t.vs.end(), v) - t.vs.begin());
    };
    const std::size_t eu = index_of(g.edge(crossings[c].e).u), ev = index_of(g.edge(crossings[c].e).v);
    const std::size_t fu = index_of(g.edge(crossings[c].f).u), fv = index_of(g.edge(crossings[c].f).v);
    t.table.assign(std::size_t{1} << size, {});
    std::size_t full = 1;
    for (std::size_t i = 0; i < size; ++i) full *= static_cast<std::size_t>(k);
    for (std::size_t mask = 0; mask < t.table.size(); ++mask) {
      std::size_t codes = 1;
      for (std::size_t i = 0; i < size; ++i) if (mask >> i & 1) codes *= static_cast<std::size_t>(k);
      t.table[mask].assign(codes, 0);
    }
    std::array<int, 4> label{};
    for (std::size_t code = 0; code < full; ++code) {
      std::size_t rest = code;
      for (std::size_t i = 0; i < size; ++i) {
        label[i] = static_cast<int>(rest % static_cast<std::size_t>(k));
        rest /= static_cast<std::size_t>(k);
      }
      if (make_type(label[eu], label[ev]) != make_type(label[fu], label[fv])) continue;
      for (std::size_t mask = 0; mask < t.table.size(); ++mask) {
        i128 prob = 1;
        std::size_t masked = 0, mult = 1;
        for (std::size_t i = 0; i < size; ++i) {
          if (mask >> i & 1) {
            masked += static_cast<std::size_t>(label[i]) * mult;
            mult *= static_cast<std::size_t>(k);
          } else {
            prob *= a[static_cast<std::size_t>(label[i])];
          }
        }
        t.table[mask][masked] += prob;
      }
    }
  }

  // Scale everything to den^8.
  i128 accumulated = 0;
  std::vector<std::vector<std::size_t>> at_vertex(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    for (VertexId v : tables[c].vs) at_vertex[static_cast<std::size_t>(v)].push_back(c);
  }
  std::vector<std::size_t> stamp(crossings.size(), SIZE_MAX);
  for (std::size_t p = 0; p < crossings.size(); ++p) {
    const auto& tp = tables[p];
    const i128 pp = tp.table[0][0];  // scaled by den^|vp|
    const std::size_t sp = tp.vs.size();
    for (VertexId v : tp.vs) {
      for (std::size_t q : at_vertex[static_cast<std::size_t>(v)]) {
        if (stamp[q] == p) continue;
        stamp[q] = p;
        const auto& tq = tables[q];
        const std::size_t sq = tq.vs.size();
        std::size_t mask_p = 0, mask_q = 0, shared = 0;
        std::vector<std::pair<std::size_t, std::size_t>> pos;
        for (std::size_t i = 0; i < sp; ++i) {
          for (std::size_t j = 0; j < sq; ++j) {
            if (tp.vs[i] == tq.vs[j]) {
              mask_p |= std::size_t{1} << i;
              mask_q |= std::size_t{1} << j;
              pos.emplace_back(i, j);
              ++shared;
            }
          }
        }
        std::size_t codes = 1;
        for (std::size_t i = 0; i < shared; ++i) codes *= static_cast<std::size_t>(k);
        i128 joint = 0;  // scaled by den^(sp + sq - shared)
        for (std::size_t code = 0; code < codes; ++code) {
          std::size_t rest = code;
          std::size_t code_p = 0, code_q = 0;
          i128 prob = 1;
          std::vector<int> shared_label(shared);
          for (std::size_t s = 0; s < shared; ++s) {
            shared_label[s] = static_cast<int>(rest % static_cast<std::size_t>(k));
            rest /= static_cast<std::size_t>(k);
            prob *= a[static_cast<std::size_t>(shared_label[s])];
          }
          // Codes follow each crossing's own vertex order within its mask.
          std::size_t mult_p = 1, mult_q = 1;
          for (std::size_t i = 0; i < sp; ++i) {
            if (!(mask_p >> i & 1)) continue;
            for (std::size_t s = 0; s < shared; ++s) {
              if (pos[s].first == i) code_p += static_cast<std::size_t>(shared_label[s]) * mult_p;
            }
            mult_p *= static_cast<std::size_t>(k);
          }
          for (std::size_t j = 0; j < sq; ++j) {
            if (!(mask_q >> j & 1)) continue;
            for (std::size_t s = 0; s < shared; ++s) {
              if (pos[s].second == j) code_q += static_cast<std::size_t>(shared_label[s]) * mult_q;
            }
            mult_q *= static_cast<std::size_t>(k);
          }
          joint += prob * tp.table[mask_p][code_p] * tq.table[mask_q][code_q];
        }
        const std::size_t union_size = sp + sq - shared;
        const i128 mults = static_cast<i128>(crossings[p].multiplicity) * crossings[q].multiplicity;
        accumulated += mults * (joint * den_pow[8 - union_size] -
                                pp * tq.table[0][0] * den_pow[8 - sp - sq]);
      }
    }
  }
  auto to_big = [](i128 v) {
    bool negative = v < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<unsigned long long>(mag >> 64);
    out <<= 64;
    out += static_cast<unsigned long long>(mag);
    return negative ? BigInt(-out) : out;
  };
  return Rational(to_big(accumulated)) / Rational(to_big(den_pow[8]));
}

}  // namespace kplanar::oracle
