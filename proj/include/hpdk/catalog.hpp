#pragma once

// Named exponent sets and coefficient models used by the tests, the
// self-test suites and the sample inputs.

#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"

#include <cmath>
#include <cstdint>

namespace hpdk::catalog {

/// (0,0) plus both axes; every difference value occurs.
[[nodiscard]] inline ExponentSetSpec full_grid_spec() {
  return {{{0, 0}}, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}}, true};
}

/// {(k,k)}: every difference is 0.
[[nodiscard]] inline ExponentSetSpec diagonal_spec() { return {{}, {{{0, 0}, {1, 1}}}, true}; }

/// (0,0) plus even powers on both axes: only even differences.
[[nodiscard]] inline ExponentSetSpec even_difference_spec() {
  return {{{0, 0}}, {{{0, 0}, {2, 0}}, {{0, 0}, {0, 2}}}, true};
}

/// Strides 2 and 3 whose cosets cover Z/6: odd values from stride 2, the
/// three classes mod 3 from stride 3.
[[nodiscard]] inline ExponentSetSpec mixed_stride_spec() {
  return {{{0, 0}},
          {{{1, 0}, {2, 0}}, {{0, 0}, {0, 3}}, {{0, 2}, {3, 0}}, {{2, 0}, {3, 0}}},
          true};
}

/// b_{0,0} = 1 only: f = 1.
[[nodiscard]] inline CoefficientModel constant_model() {
  return {{{{0, 0}}, {}, true}, {{{{0, 0}, 1.0}}, {}}};
}

/// b_{1,0} = 1 only: f(z) = z.
[[nodiscard]] inline CoefficientModel identity_model() {
  return {{{{1, 0}}, {}, false}, {{{{1, 0}, 1.0}}, {}}};
}

/// b_{k,k} = 1/k!: f(z) = exp(|z|^2).
[[nodiscard]] inline CoefficientModel diagonal_exponential_model() {
  return {diagonal_spec(), {{}, {{1.0, 1.0}}}};
}

/// b_{0,0} = 3 (three generators meet there), b_{2s,0} = b_{0,2s} = 1/s!.
[[nodiscard]] inline CoefficientModel even_difference_model() {
  return {even_difference_spec(), {{{{0, 0}, 1.0}}, {{1.0, 1.0}, {1.0, 1.0}}}};
}

/// b_{k,l} = 1/(k! l!) for l < rows, encoded as one family per row
/// (0,l) + s(1,0) with w = 1/l!, rho = 1.  As rows grows the kernel tends to
/// exp(z + conj(z)).
[[nodiscard]] inline CoefficientModel exponential_grid_model(std::int64_t rows) {
  ExponentSetSpec spec;
  WeightRule rule;
  for (std::int64_t l = 0; l < rows; ++l) {
    spec.families.push_back({{0, l}, {1, 0}});
    rule.family_weights.push_back({std::exp(-std::lgamma(static_cast<double>(l) + 1.0)), 1.0});
  }
  return {std::move(spec), std::move(rule)};
}

}  // namespace hpdk::catalog
