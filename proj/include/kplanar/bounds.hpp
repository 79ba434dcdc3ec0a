#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kplanar/error.hpp"

namespace kplanar::bounds {

/// A bound that may not apply. When the hypothesis behind a formula is unmet
/// the value is absent and `unmet` says why; a bound of 0 is a real 0.
struct BoundValue {
  std::optional<double> value;
  std::string unmet;

  static BoundValue of(double v) { return {v, {}}; }
  static BoundValue hypothesis_unmet(std::string why) { return {std::nullopt, std::move(why)}; }
  bool applies() const { return value.has_value(); }
};

enum class LogBase { natural, binary };

inline double log_in(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

inline constexpr double kLllConstant = 3.0;
inline constexpr double kLllConstantE = 2.718281828459045;

struct TailBoundInputs {
  double deviation = 0.0;       ///< t > 0
  std::vector<double> widths;   ///< b_i - a_i, or bounded-difference constants c_i
};

/// Hoeffding / McDiarmid upper tail exp(-2 t^2 / sum w_i^2).
inline double hoeffding_tail(const TailBoundInputs& in) {
  if (!(in.deviation > 0) || !std::isfinite(in.deviation)) throw Error("deviation must be > 0");
  double sum = 0.0;
  for (double w : in.widths) {
    if (!(w >= 0) || !std::isfinite(w)) throw Error("widths must be finite and nonnegative");
    sum += w * w;
  }
  if (sum == 0.0) throw Error("at least one width must be positive");
  return std::exp(-2.0 * in.deviation * in.deviation / sum);
}

/// Same bound for `count` variables that all have width `cap`.
inline double hoeffding_tail(double deviation, std::int64_t count, double cap) {
  if (count < 1) throw Error("need at least one variable");
  return hoeffding_tail({deviation, std::vector<double>(static_cast<std::size_t>(count), cap)});
}

/// Edge-load tail exp(-2 eps^2 L / Delta): McDiarmid with
/// sum c_i^2 <= Delta * sum c_i <= Delta * L and deviation eps * L.
inline double mcdiarmid_edge_tail(double epsilon, std::int64_t L, std::int64_t max_degree) {
  if (L < 1 || max_degree < 1) throw Error("mcdiarmid_edge_tail needs L >= 1 and Delta >= 1");
  return std::exp(-2.0 * epsilon * epsilon * static_cast<double>(L) /
                  static_cast<double>(max_degree));
}

struct LllInstance {
  double q = 0.0;                         ///< per-event probability bound
  std::int64_t dependency_degree = 0;     ///< max degree of the dependency graph
  std::int64_t event_count = 0;
};

struct LllVerdict {
  bool holds = false;
  double success_lower_bound = 0.0;  ///< (1 - 1/(Delta+1))^n when the condition holds
};

/// Symmetric local lemma: if constant * q * (Delta + 1) < 1, all events are
/// avoided with probability > (1 - 1/(Delta + 1))^n.
inline LllVerdict lll_check(const LllInstance& in, double constant = kLllConstant) {
  if (!(in.q >= 0 && in.q <= 1)) throw Error("q must lie in [0,1]");
  if (in.dependency_degree < 0 || in.event_count < 0) throw Error("counts must be nonnegative");
  const double d1 = static_cast<double>(in.dependency_degree) + 1.0;
  LllVerdict out;
  out.holds = constant * in.q * d1 < 1.0;
  if (out.holds) out.success_lower_bound = std::pow(1.0 - 1.0 / d1, static_cast<double>(in.event_count));
  return out;
}

/// Crossing lemma cr(G) >= m^3 / (29 n^2), valid when m > 6.95 n.
inline BoundValue crossing_lower_bound(std::int64_t m, std::int64_t n) {
  if (n < 1 || !(static_cast<double>(m) > 6.95 * static_cast<double>(n))) {
    return BoundValue::hypothesis_unmet("needs m > 6.95 n");
  }
  double md = static_cast<double>(m), nd = static_cast<double>(n);
  return BoundValue::of(md * md * md / (29.0 * nd * nd));
}

/// lcr(G) >= 2 m^2 / (29 n^2): the crossing lemma with lcr >= 2 cr / m.
inline BoundValue lcr_lower_bound(std::int64_t m, std::int64_t n) {
  if (n < 1 || !(static_cast<double>(m) > 6.95 * static_cast<double>(n))) {
    return BoundValue::hypothesis_unmet("needs m > 6.95 n");
  }
  double md = static_cast<double>(m), nd = static_cast<double>(n);
  return BoundValue::of(2.0 * md * md / (29.0 * nd * nd));
}

/// Minimum lcr for the near-regular (alpha-bounded degree) regime:
/// 1000 alpha^2 eps^-4 (log alpha + log(1/eps))^2.
inline BoundValue beta_threshold_regular(double alpha, double epsilon,
                                         LogBase base = LogBase::natural) {
  if (!(alpha >= 1)) throw Error("alpha must be >= 1");
  if (!(epsilon > 0)) throw Error("epsilon must be > 0");
  if (epsilon >= 1) return BoundValue::hypothesis_unmet("needs epsilon < 1");
  double logs = log_in(alpha, base) + log_in(1.0 / epsilon, base);
  return BoundValue::of(1000.0 * alpha * alpha * std::pow(epsilon, -4.0) * logs * logs);
}

/// Minimum lcr for the degree-partition regime: 10 log(1/eps) / eps^2.
inline double beta_threshold_irregular(double epsilon, LogBase base = LogBase::natural) {
  if (!(epsilon > 0 && epsilon < 1)) throw Error("epsilon must lie in (0,1)");
  return 10.0 * log_in(1.0 / epsilon, base) / (epsilon * epsilon);
}

/// Each overload event depends on at most 2 L^2 Delta + 2 Delta others.
inline std::int64_t dependency_degree_bound(std::int64_t L, std::int64_t max_degree) {
  return 2 * L * L * max_degree + 2 * max_degree;
}

/// Probability that no edge is overloaded, from the local lemma:
/// (1 - 1/(2 L^2 Delta + 2 Delta + 1))^m.
inline double lll_avoidance_probability(std::int64_t L, std::int64_t max_degree, std::int64_t m) {
  double d1 = static_cast<double>(dependency_degree_bound(L, max_degree)) + 1.0;
  return std::pow(1.0 - 1.0 / d1, static_cast<double>(m));
}

struct KnLowerBound {
  BoundValue value;        ///< lcr_k(K_n) >= (2/k^2) C(n,2)^2 / (29 n^2)
  double ratio_floor = 0;  ///< liminf lcr_k(K_n) / lcr(K_n) >= 9 / (58 k^2)
};

inline KnLowerBound kn_lower_bound(std::int64_t n, int k) {
  if (n < 1 || k < 1) throw Error("kn_lower_bound needs n >= 1, k >= 1");
  const double kk = k, nd = static_cast<double>(n);
  KnLowerBound out;
  out.ratio_floor = 9.0 / (58.0 * kk * kk);
  const double pairs = nd * (nd - 1.0) / 2.0;
  if (!(pairs / kk > 6.95 * nd)) {
    out.value = BoundValue::hypothesis_unmet("needs C(n,2)/k > 6.95 n");
  } else {
    out.value = BoundValue::of((2.0 / (kk * kk)) * pairs * pairs / (29.0 * nd * nd));
  }
  return out;
}

struct RegimeParams {
  double alpha = 1.0;
  double epsilon = 0.1;
  int k = 2;
  double L = 0;
  double max_degree = 0;
  double m = 0;
  double n = 0;
  double C = 0;
};

struct ProbabilityGap {
  double lhs = 0;               ///< m / (L^2 Delta)
  double rhs = 0;               ///< 2 (eps C)^2 / (n (L Delta)^2)
  bool holds = false;           ///< lhs < rhs
  bool crossing_condition = false;  ///< C^2 > m n Delta / (2 eps^2)
};

/// The two equivalent forms of the condition under which the crossing-total
/// tail is smaller than the lcr success probability.
inline ProbabilityGap combined_probability_gap(const RegimeParams& p) {
  if (!(p.L > 0 && p.max_degree > 0 && p.m > 0 && p.n > 0 && p.epsilon > 0 && p.C >= 0)) {
    throw Error("combined_probability_gap needs positive L, Delta, m, n, epsilon");
  }
  ProbabilityGap out;
  out.lhs = p.m / (p.L * p.L * p.max_degree);
  double ec = p.epsilon * p.C;
  out.rhs = 2.0 * ec * ec / (p.n * (p.L * p.max_degree) * (p.L * p.max_degree));
  out.holds = out.lhs < out.rhs;
  out.crossing_condition = p.C * p.C > p.m * p.n * p.max_degree / (2.0 * p.epsilon * p.epsilon);
  return out;
}

}  // namespace kplanar::bounds
