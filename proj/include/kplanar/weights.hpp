#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kplanar/error.hpp"
#include "kplanar/rational.hpp"

namespace kplanar {

/// The survival objective of a weight vector: the largest of p_i^2 and
/// 2 p_i p_j (i != j). This bounds the conditional probability that a crossing
/// of an edge of any type survives the vertex-labeling construction.
inline Rational survival_gamma(std::span<const Rational> p) {
  Rational best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    best = std::max(best, Rational(p[i] * p[i]));
    for (std::size_t j = i + 1; j < p.size(); ++j) best = std::max(best, Rational(2 * p[i] * p[j]));
  }
  return best;
}

/// Label distribution p_0..p_{k-1} for the vertex-labeling construction.
/// Probabilities are exact and sum to exactly 1.
class WeightVector {
 public:
  WeightVector() = default;

  explicit WeightVector(std::vector<Rational> p) : p_(std::move(p)) {
    if (p_.empty()) throw Error("weight vector needs k >= 1 entries");
    Rational sum = 0;
    for (const auto& x : p_) {
      if (x < 0 || x > 1) throw Error("weight " + to_string(x) + " outside [0,1]");
      sum += x;
    }
    if (sum != 1) throw Error("weights sum to " + to_string(sum) + ", expected 1");
    gamma_ = survival_gamma(p_);
    doubles_.reserve(p_.size());
    for (const auto& x : p_) doubles_.push_back(to_double(x));
  }

  int k() const { return static_cast<int>(p_.size()); }
  const Rational& operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  std::span<const Rational> probabilities() const { return p_; }
  std::span<const double> probabilities_double() const { return doubles_; }
  const Rational& gamma() const { return gamma_; }

  bool is_uniform() const {
    return std::all_of(p_.begin(), p_.end(), [&](const Rational& x) { return x == p_.front(); });
  }

 private:
  std::vector<Rational> p_;
  Rational gamma_ = 0;
  std::vector<double> doubles_;
};

inline WeightVector uniform_weights(int k) {
  if (k < 1) throw Error("k must be >= 1");
  return WeightVector(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k)));
}

/// Minimax-optimal weights: (1) for k = 1, (2/3, 1/3) for k = 2 (gamma = 4/9),
/// uniform for k >= 3 (gamma = 2/k^2).
inline WeightVector optimal_weights(int k) {
  if (k < 1) throw Error("k must be >= 1");
  if (k == 2) return WeightVector({Rational(2, 3), Rational(1, 3)});
  return uniform_weights(k);
}

/// Parses a comma-separated list of exact probabilities ("2/3,1/3", "0.5,0.5").
inline WeightVector parse_weights(std::string_view text) {
  std::vector<Rational> p;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
    p.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return WeightVector(std::move(p));
}

struct GridSearchResult {
  WeightVector weights;
  std::int64_t points_examined = 0;
  int refinement_passes = 0;
  std::int64_t final_unit = 0;  ///< weights are integer multiples of 1/final_unit
};

namespace detail {

/// Completes a descending vector from its two largest entries (integer grid
/// units), filling the tail greedily with entries <= second. Returns false if
/// no descending completion summing to `unit` exists.
inline bool complete_descending(int k, std::int64_t unit, std::int64_t first, std::int64_t second,
                                std::vector<std::int64_t>& out) {
  if (first < second || second < 0) return false;
  out.assign(static_cast<std::size_t>(k), 0);
  out[0] = first;
  if (k == 1) return first == unit;
  out[1] = second;
  std::int64_t rest = unit - first - second;
  if (rest < 0) return false;
  for (int i = 2; i < k; ++i) {
    out[static_cast<std::size_t>(i)] = std::min(second, rest);
    rest -= out[static_cast<std::size_t>(i)];
  }
  return rest == 0;
}

/// max(p_i^2, 2 p_i p_j) in units of 1/unit^2, evaluated over every pair.
inline __int128 grid_objective(const std::vector<std::int64_t>& p) {
  __int128 best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    best = std::max(best, static_cast<__int128>(p[i]) * p[i]);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      best = std::max(best, 2 * static_cast<__int128>(p[i]) * p[j]);
    }
  }
  return best;
}

}  // namespace detail

/// Brute-force minimax search over the discretized probability simplex.
///
/// Candidates are descending-sorted grid vectors. The objective of a sorted
/// vector depends only on its two largest entries, so the search walks every
/// grid pair (p1, p2), completes the tail canonically and scores the full
/// vector. Ties go to the lexicographically smallest (p1, p2). The best point
/// is then refined locally on a grid 100x finer, repeatedly, until the grid
/// unit is at most 1e-9.
inline GridSearchResult minimax_weights_grid(int k, double step) {
  if (k < 2 || k > 6) throw Error("grid search supports k in 2..6");
  if (!(step > 0) || step > 1e-2) throw Error("grid step must be in (0, 1e-2]");
  const double inverse = 1.0 / step;
  if (std::abs(inverse - std::round(inverse)) > 1e-6 * inverse) {
    throw Error("grid step must divide 1");
  }
  std::int64_t unit = static_cast<std::int64_t>(std::llround(inverse));

  GridSearchResult result;
  std::vector<std::int64_t> candidate;
  std::int64_t best_first = -1, best_second = -1;
  const __int128 worst = ~static_cast<unsigned __int128>(0) >> 1;
  __int128 best_value = worst;
  auto consider = [&](std::int64_t first, std::int64_t second) {
    ++result.points_examined;
    if (!detail::complete_descending(k, unit, first, second, candidate)) return;
    __int128 value = detail::grid_objective(candidate);
    if (value < best_value) {
      best_value = value;
      best_first = first;
      best_second = second;
    }
  };
  for (std::int64_t first = 0; first <= unit; ++first) {
    for (std::int64_t second = 0; second <= std::min(first, unit - first); ++second) {
      consider(first, second);
    }
  }
  while (unit < 1'000'000'000) {
    const std::int64_t factor = 100;
    unit *= factor;
    std::int64_t center_first = best_first * factor, center_second = best_second * factor;
    best_value = worst;
    for (std::int64_t first = center_first - factor; first <= center_first + factor; ++first) {
      for (std::int64_t second = center_second - factor; second <= center_second + factor;
           ++second) {
        if (first < 0 || second < 0 || first > unit) continue;
        consider(first, second);
      }
    }
    ++result.refinement_passes;
  }
  detail::complete_descending(k, unit, best_first, best_second, candidate);
  std::vector<Rational> p;
  for (auto units : candidate) p.emplace_back(units, unit);
  result.weights = WeightVector(std::move(p));
  result.final_unit = unit;
  return result;
}

}  // namespace kplanar
