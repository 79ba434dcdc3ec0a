// Decomposes a convex K_12 drawing into two planes and prints the loads.
#include <iostream>

#include "kplanar/kplanar.hpp"

int main() {
  using namespace kplanar;
  const Drawing drawing = gen::convex_kn(12);
  const WeightVector weights = optimal_weights(2);
  const auto result = decompose_lcr(drawing, 2, 0.1, weights, 10000, 7);

  std::cout << "C = " << drawing.total_crossings() << ", L = " << drawing.local_crossing_number()
            << ", gamma = " << to_string(weights.gamma()) << '\n';
  std::cout << "max surviving load " << result.report.max_load << " (target "
            << result.report.thresholds.at("max_load") << "), certified "
            << std::boolalpha << result.report.certified << '\n';
  for (int plane = 0; plane < result.assignment.k; ++plane) {
    std::cout << "plane " << plane << ": C_i = " << result.report.plane_total[plane]
              << ", L_i = " << result.report.plane_max[plane] << '\n';
  }
  std::cout << "expected surviving total "
            << to_double(oracle::exact_survival_expectation(drawing, weights)) << '\n';
}
