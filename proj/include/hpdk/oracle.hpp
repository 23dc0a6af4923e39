#pragma once

// Brute-force ground truth at desk scale.  For scalar points z_r the kernel
// quadratic form equals sum_{(k,l) in J} b_{k,l} |sum_r c_r z_r^k conj(z_r)^l|^2,
// so strictness at the points is full row rank of the collocation matrix.

#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"
#include "hpdk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpdk {

struct CollocationMatrix {
  std::vector<complex> points;
  std::vector<ExponentPair> columns;
  CMatrix entries;  // entries(r, j) = z_r^k conj(z_r)^l for columns[j] = (k, l)
  Eigen::Index rank = 0;
};

namespace detail {

inline void require_distinct_nonzero(const std::vector<complex>& points) {
  for (std::size_t r = 0; r < points.size(); ++r) {
    if (points[r] == complex(0.0, 0.0)) {
      throw std::invalid_argument("point " + std::to_string(r) +
                                  " is zero; the origin is handled by origin_counterexample");
    }
    for (std::size_t s = r + 1; s < points.size(); ++s) {
      if (points[r] == points[s]) {
        throw std::invalid_argument("duplicate points " + std::to_string(r) + " and " +
                                    std::to_string(s));
      }
    }
  }
}

}  // namespace detail

/// Monomials of J with k + l <= truncation evaluated at the points.
[[nodiscard]] inline CollocationMatrix collocation(const std::vector<complex>& points,
                                                   const ExponentSetSpec& spec,
                                                   std::int64_t truncation,
                                                   double rank_tol = 1e-10) {
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  detail::require_distinct_nonzero(points);
  CollocationMatrix out;
  out.points = points;
  out.columns = enumerate_truncated(spec, truncation);
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(out.columns.size());
  out.entries.resize(n, cols);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = out.columns[static_cast<std::size_t>(j)];
      out.entries(r, j) = monomial(points[static_cast<std::size_t>(r)], e.k, e.l);
    }
  }
  out.rank = numerical_rank(out.entries, rank_tol);
  return out;
}

struct QuadraticFormValue {
  double value = 0.0;
  double imaginary_defect = 0.0;
};

/// Re sum_{r,s} c_r f(z_r conj(z_s)) conj(c_s).
[[nodiscard]] inline QuadraticFormValue quadratic_form(const CoefficientModel& model,
                                                       const std::vector<complex>& points,
                                                       const CVector& c, double tol) {
  if (static_cast<Eigen::Index>(points.size()) != c.size()) {
    throw std::invalid_argument("quadratic_form: " + std::to_string(points.size()) +
                                " points but " + std::to_string(c.size()) + " coefficients");
  }
  complex acc(0.0, 0.0);
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t s = 0; s < points.size(); ++s) {
      const complex kr = eval_kernel(model, points[r] * std::conj(points[s]), tol);
      acc += c[static_cast<Eigen::Index>(r)] * kr * std::conj(c[static_cast<Eigen::Index>(s)]);
    }
  }
  return {acc.real(), std::abs(acc.imag())};
}

enum class Strictness { strict, witness, inconclusive };

[[nodiscard]] inline const char* to_string(Strictness s) {
  switch (s) {
    case Strictness::strict:
      return "strict";
    case Strictness::witness:
      return "witness";
    case Strictness::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct StrictnessResult {
  Strictness verdict = Strictness::inconclusive;
  Eigen::Index rank = 0;
  std::size_t columns = 0;
  double tail_mass = 0.0;  // weight mass beyond the truncation at the largest |z_r|^2
  bool guard_passed = false;
  std::optional<CVector> witness;
  double witness_form = 0.0;  // full-kernel quadratic form of the witness
};

/// Strict iff the collocation matrix has rank n and the truncation guard
/// holds; otherwise a unit null vector of the transposed collocation map is
/// returned, together with its full-kernel quadratic form.
[[nodiscard]] inline StrictnessResult strictness_oracle(const CoefficientModel& model,
                                                        const std::vector<complex>& points,
                                                        std::int64_t truncation, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const CollocationMatrix colloc = collocation(points, model.spec(), truncation, tol);
  StrictnessResult out;
  out.rank = colloc.rank;
  out.columns = colloc.columns.size();

  double radius = 0.0;
  for (const auto& z : points) radius = std::max(radius, std::norm(z));
  // kernel arguments z_r conj(z_s) have modulus at most max |z|^2
  out.tail_mass = tail_mass(model, radius, truncation);
  out.guard_passed = out.tail_mass < tol;

  const auto n = static_cast<Eigen::Index>(points.size());
  if (colloc.rank == n) {
    out.verdict = out.guard_passed ? Strictness::strict : Strictness::inconclusive;
    return out;
  }
  auto c = nullspace_vector(colloc.entries.transpose(), tol);
  if (!c) {
    out.verdict = Strictness::inconclusive;
    return out;
  }
  out.witness_form = quadratic_form(model, points, *c, tol).value;
  out.witness = std::move(c);
  out.verdict = Strictness::witness;
  return out;
}

/// Points sharing one modulus (1e-12 relative) and, per listed exponent,
/// sum over the class of c_r z_r^k conj(z_r)^l.
struct ModulusClass {
  double modulus = 0.0;
  std::vector<std::size_t> members;
  std::vector<complex> sums;  // aligned with the exponent list
};

[[nodiscard]] inline std::vector<ModulusClass> modulus_class_sums(
    const std::vector<complex>& points, const CVector& c,
    const std::vector<ExponentPair>& exponents) {
  if (static_cast<Eigen::Index>(points.size()) != c.size()) {
    throw std::invalid_argument("modulus_class_sums: length mismatch");
  }
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (points[i] == complex(0.0, 0.0)) throw std::invalid_argument("zero point");
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(points[a]) < std::abs(points[b]);
  });

  std::vector<ModulusClass> classes;
  for (const std::size_t i : order) {
    const double mod = std::abs(points[i]);
    if (classes.empty() || std::abs(mod - classes.back().modulus) > 1e-12 * classes.back().modulus) {
      classes.push_back({mod, {}, {}});
    }
    classes.back().members.push_back(i);
  }
  for (auto& cls : classes) {
    cls.sums.assign(exponents.size(), complex(0.0, 0.0));
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      for (const std::size_t i : cls.members) {
        cls.sums[j] += c[static_cast<Eigen::Index>(i)] * monomial(points[i], exponents[j].k, exponents[j].l);
      }
    }
  }
  return classes;
}

/// a_s = sum_r c_r z_r^s for s = -half_width..half_width.
struct RecurrenceWindow {
  std::int64_t half_width = 0;
  std::vector<complex> values;

  [[nodiscard]] complex at(std::int64_t s) const {
    return values.at(static_cast<std::size_t>(s + half_width));
  }
};

[[nodiscard]] inline RecurrenceWindow recurrence_window(const std::vector<complex>& points,
                                                        const CVector& c,
                                                        std::int64_t half_width) {
  if (static_cast<Eigen::Index>(points.size()) != c.size()) {
    throw std::invalid_argument("recurrence_window: length mismatch");
  }
  RecurrenceWindow out;
  out.half_width = half_width;
  for (std::int64_t s = -half_width; s <= half_width; ++s) {
    complex acc(0.0, 0.0);
    for (std::size_t r = 0; r < points.size(); ++r) {
      const complex power = s >= 0 ? monomial(points[r], s, 0)
                                   : complex(1.0, 0.0) / monomial(points[r], -s, 0);
      acc += c[static_cast<Eigen::Index>(r)] * power;
    }
    out.values.push_back(acc);
  }
  return out;
}

}  // namespace hpdk
