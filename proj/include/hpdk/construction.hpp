#pragma once

// Constructive steps behind the strictness characterization: reducing Gram
// matrices of vectors to scalar points, the 2x2 block embedding, and explicit
// point sets on which a failing kernel has a singular Gram matrix.

#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"
#include "hpdk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpdk {

/// <z^r, z^s> = z_r conj(z_s) + M_rs with distinct scalars z_r and PSD M.
struct DecompositionResult {
  std::vector<complex> scalars;
  CMatrix remainder;
  double gap = 0.0;
  Eigen::Index rank = 0;
  int attempts = 0;
  double reconstruction_error = 0.0;  // max abs row sum of A - (z z^H + M)
  double remainder_min_eigenvalue = 0.0;
  double scale = 0.0;
};

inline constexpr int kMaxSplitAttempts = 64;

/// Splits the inner-product Gram matrix of distinct vectors.  A = C^T conj(C)
/// is factored, a seeded random unit v gives z = v C with distinct entries,
/// and V = unitary completion of v yields M = (W C)^T conj(W C) where W is V
/// without its first row.
[[nodiscard]] inline DecompositionResult split_gram(const ComplexPointSet& pts, std::uint64_t seed,
                                                    double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const GramMatrix a = inner_gram(pts);
  const Eigen::Index n = a.size();
  const double scale = a.scale();

  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = r + 1; s < n; ++s) {
      if ((a.entries.row(r) - a.entries.row(s)).cwiseAbs().maxCoeff() <= tol * scale) {
        throw std::invalid_argument("points " + std::to_string(r) + " and " + std::to_string(s) +
                                    " coincide (identical Gram rows)");
      }
    }
  }

  DecompositionResult out;
  out.scale = scale;
  const RankFactorization factor = rank_factor(a.entries, tol);
  out.rank = factor.rank;
  const Eigen::Index m = factor.rank;

  if (m == 0) {
    // only possible for a single zero vector
    out.scalars.assign(static_cast<std::size_t>(n), complex(0.0, 0.0));
    out.remainder = CMatrix::Zero(n, n);
    out.gap = std::numeric_limits<double>::infinity();
    out.reconstruction_error = max_abs_row_sum(a.entries);
    return out;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(m);
  CVector z;
  for (out.attempts = 1;; ++out.attempts) {
    if (out.attempts > kMaxSplitAttempts) {
      throw std::runtime_error("split_gram: no direction with distinct scalars after " +
                               std::to_string(kMaxSplitAttempts) + " draws");
    }
    for (Eigen::Index i = 0; i < m; ++i) v[i] = complex(normal(rng), normal(rng));
    v.normalize();
    z = (v.transpose() * factor.factor).transpose();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index s = r + 1; s < n; ++s) gap = std::min(gap, std::abs(z[r] - z[s]));
    }
    if (gap > tol) {
      out.gap = gap;
      break;
    }
  }

  const CMatrix unitary = unitary_complete(v);
  const CMatrix rest = unitary.bottomRows(m - 1) * factor.factor;
  out.remainder = rest.transpose() * rest.conjugate();
  out.scalars.assign(z.data(), z.data() + z.size());

  const CMatrix rebuilt = z * z.adjoint() + out.remainder;
  out.reconstruction_error = max_abs_row_sum(a.entries - rebuilt);
  out.remainder_min_eigenvalue = min_eigenvalue(out.remainder, tol);
  // dropped eigenvalues are at most tol * scale each
  const double bound = static_cast<double>(n) * tol * scale;
  if (out.reconstruction_error > bound || out.remainder_min_eigenvalue < -bound) {
    throw std::runtime_error("split_gram: reconstruction check failed");
  }
  return out;
}

/// [[A + J, aA + bJ], [conj(a)A + conj(b)J, |a|^2 A + |b|^2 J]] with J the
/// all-ones matrix.  PSD whenever A is, with rank at most rank(A) + 1.
[[nodiscard]] inline CMatrix block_extend(const CMatrix& a, complex alpha, complex beta,
                                          double tol = 1e-10) {
  if (a.rows() != a.cols()) throw std::invalid_argument("block_extend: matrix is not square");
  const Eigen::Index n = a.rows();
  if (n > 0 && min_eigenvalue(a, tol) < -tol * max_abs_row_sum(a)) {
    throw contract_violation("block_extend: input matrix is indefinite");
  }
  const CMatrix ones = CMatrix::Ones(n, n);
  CMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a + ones;
  out.topRightCorner(n, n) = alpha * a + beta * ones;
  out.bottomLeftCorner(n, n) = std::conj(alpha) * a + std::conj(beta) * ones;
  out.bottomRightCorner(n, n) = std::norm(alpha) * a + std::norm(beta) * ones;
  return out;
}

/// d_t = exp(-2 pi i t q / p).  sum_t d_t exp(2 pi i t s / p) is p for
/// s = q (mod p) and zero otherwise.
[[nodiscard]] inline std::vector<complex> character_coefficients(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 0 || q >= p) throw std::invalid_argument("character: residue out of range");
  std::vector<complex> d(static_cast<std::size_t>(p));
  for (std::int64_t t = 0; t < p; ++t) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>((t * q) % p) /
                         static_cast<double>(p);
    d[static_cast<std::size_t>(t)] = std::polar(1.0, angle);
  }
  return d;
}

/// Unit-circle points z_{r,t} = exp(i(theta_r + 2 pi t / p)) and coefficients
/// d_t c_r annihilating every monomial z^k conj(z)^l with (k,l) in J.
/// Points and combined coefficients are stored r-major (index r * p + t).
struct AnnihilationWitness {
  std::int64_t p = 1;
  std::int64_t q = 0;
  std::vector<std::int64_t> class_differences;  // the N values k - l in class q mod p
  std::vector<double> thetas;
  std::vector<complex> points;
  std::vector<complex> row_coeffs;
  std::vector<complex> column_coeffs;
  std::vector<complex> coeffs;
  double max_residual = 0.0;
  std::size_t checked_exponents = 0;
  bool origin = false;  // single point 0 with coefficient 1
};

struct OriginWitness {
  complex point{0.0, 0.0};
  complex coeff{1.0, 0.0};
};

/// n = 1, z_1 = 0, c_1 = 1: every monomial but (0,0) vanishes at the origin.
[[nodiscard]] inline OriginWitness origin_counterexample(const ExponentSetSpec& spec) {
  if (membership(spec, ExponentPair{0, 0})) {
    throw std::invalid_argument("origin_counterexample: (0,0) belongs to J");
  }
  return {};
}

namespace detail {

[[nodiscard]] inline double witness_residual(const AnnihilationWitness& w,
                                             const std::vector<ExponentPair>& exponents) {
  double worst = 0.0;
  for (const auto& e : exponents) {
    complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < w.points.size(); ++i) acc += w.coeffs[i] * monomial(w.points[i], e.k, e.l);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace detail

/// Builds the witness for a failing class (p, q).  The N distinct values
/// a with k - l = a, a = q (mod p) come from the isolated part of the
/// difference profile; theta_r = 2 pi r / (p (N + 2)) for r = 1..N+1; c solves
/// sum_r c_r exp(i theta_r a_m) = 0; d_t is the character for q.  The result
/// is checked on every member of J with k + l <= truncation.
[[nodiscard]] inline AnnihilationWitness build_counterexample(const ExponentSetSpec& spec,
                                                              const CriterionVerdict& verdict,
                                                              std::int64_t truncation,
                                                              double tol) {
  if (verdict.holds) {
    throw std::invalid_argument("criterion holds; no counterexample exists");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  const auto exponents = enumerate_truncated(spec, truncation);

  AnnihilationWitness w;
  w.checked_exponents = exponents.size();
  if (!verdict.failing_class) {
    const OriginWitness o = origin_counterexample(spec);
    w.origin = true;
    w.points = {o.point};
    w.row_coeffs = {o.coeff};
    w.column_coeffs = {complex(1.0, 0.0)};
    w.coeffs = {o.coeff};
    w.max_residual = detail::witness_residual(w, exponents);
    return w;
  }

  const ResidueClass cls = *verdict.failing_class;
  w.p = cls.p;
  w.q = cls.q;
  w.class_differences = class_differences(difference_profile(spec), cls);
  const auto count = static_cast<Eigen::Index>(w.class_differences.size());
  const double p = static_cast<double>(cls.p);

  w.thetas.resize(static_cast<std::size_t>(count + 1));
  for (Eigen::Index r = 0; r <= count; ++r) {
    w.thetas[static_cast<std::size_t>(r)] =
        2.0 * std::numbers::pi * static_cast<double>(r + 1) / (p * static_cast<double>(count + 2));
  }

  CMatrix system(count, count + 1);
  for (Eigen::Index m = 0; m < count; ++m) {
    const auto diff = static_cast<double>(w.class_differences[static_cast<std::size_t>(m)]);
    for (Eigen::Index r = 0; r <= count; ++r) {
      system(m, r) = std::polar(1.0, w.thetas[static_cast<std::size_t>(r)] * diff);
    }
  }
  const auto c = nullspace_vector(system, tol);
  if (!c) throw std::runtime_error("build_counterexample: system has no null vector");
  w.row_coeffs.assign(c->data(), c->data() + c->size());
  w.column_coeffs = character_coefficients(cls.p, cls.q);

  for (std::size_t r = 0; r < w.thetas.size(); ++r) {
    for (std::int64_t t = 0; t < cls.p; ++t) {
      w.points.push_back(
          std::polar(1.0, w.thetas[r] + 2.0 * std::numbers::pi * static_cast<double>(t) / p));
      w.coeffs.push_back(w.column_coeffs[static_cast<std::size_t>(t)] * w.row_coeffs[r]);
    }
  }

  w.max_residual = detail::witness_residual(w, exponents);
  if (w.max_residual > tol) {
    throw std::runtime_error("build_counterexample: residual " + std::to_string(w.max_residual) +
                             " exceeds tolerance");
  }
  return w;
}

}  // namespace hpdk
