#pragma once

// Dense complex Hermitian linear algebra with explicit relative tolerances.
// Every rank decision compares against tol * (max absolute row sum).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpdk {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised when an input violates a documented precondition (non-Hermitian
/// input, indefinite matrix where PSD is required, and so on).
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[nodiscard]] inline double max_abs_row_sum(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// max |A_rs - conj(A_sr)|
[[nodiscard]] inline double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Multiplies v by a unit scalar so its first nonzero entry is real positive.
inline void normalize_phase(CVector& v) {
  if (v.size() == 0) return;
  const double cutoff = 1e-12 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > cutoff) {
      v *= std::conj(v[i]) / mag;
      v[i] = complex(mag, 0.0);
      return;
    }
  }
}

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double scale = 0.0;
};

namespace detail {

inline void require_hermitian(const CMatrix& a, double tol) {
  const double scale = max_abs_row_sum(a);
  const double defect = hermitian_defect(a);
  if (defect > tol * scale) {
    throw contract_violation("matrix is not Hermitian within tolerance (defect " +
                             std::to_string(defect) + ")");
  }
}

// Householder tridiagonalization followed by implicit symmetric QR.
[[nodiscard]] inline Eigen::SelfAdjointEigenSolver<CMatrix> solve_hermitian(const CMatrix& a,
                                                                            bool vectors) {
  const CMatrix hermitian_part = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(
      hermitian_part, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return solver;
}

}  // namespace detail

/// Real spectrum of the Hermitian part of A, ascending.
[[nodiscard]] inline HermitianSpectrum hermitian_eigen(const CMatrix& a, double tol) {
  detail::require_hermitian(a, tol);
  HermitianSpectrum out;
  out.scale = max_abs_row_sum(a);
  if (a.size() == 0) return out;
  const auto solver = detail::solve_hermitian(a, false);
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return out;
}

[[nodiscard]] inline double min_eigenvalue(const CMatrix& a, double tol) {
  const auto spectrum = hermitian_eigen(a, tol);
  return spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
}

/// A = C^T conj(C) with C of size rank x n.
struct RankFactorization {
  Eigen::Index rank = 0;
  CMatrix factor;
};

/// Keeps eigenpairs with eigenvalue > tol * scale; small negative eigenvalues
/// are treated as zero.  Row k of the factor is sqrt(lambda_k) * v_k^T.
[[nodiscard]] inline RankFactorization rank_factor(const CMatrix& a, double tol) {
  detail::require_hermitian(a, tol);
  const double scale = max_abs_row_sum(a);
  const Eigen::Index n = a.rows();
  RankFactorization out;
  out.factor.resize(0, n);
  if (n == 0) return out;

  const auto solver = detail::solve_hermitian(a, true);
  const auto& ev = solver.eigenvalues();
  if (ev[0] < -tol * scale) {
    throw contract_violation("matrix is indefinite beyond tolerance (min eigenvalue " +
                             std::to_string(ev[0]) + ")");
  }
  const double threshold = tol * scale;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (ev[i] > threshold) kept.push_back(i);
  }
  out.rank = static_cast<Eigen::Index>(kept.size());
  out.factor.resize(out.rank, n);
  for (Eigen::Index row = 0; row < out.rank; ++row) {
    const Eigen::Index i = kept[static_cast<std::size_t>(row)];
    CVector v = solver.eigenvectors().col(i);
    normalize_phase(v);
    out.factor.row(row) = std::sqrt(ev[i]) * v.transpose();
  }
  return out;
}

/// Number of singular values above tol * scale.
[[nodiscard]] inline Eigen::Index numerical_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  const double threshold = tol * max_abs_row_sum(m);
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return static_cast<Eigen::Index>((sv.array() > threshold).count());
}

/// Unit vector c with |M c| <= tol * scale, present only when the numerical
/// rank of M is below its column count.
[[nodiscard]] inline std::optional<CVector> nullspace_vector(const CMatrix& m, double tol) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return std::nullopt;
  if (m.rows() == 0) {
    CVector e = CVector::Zero(cols);
    e[0] = 1.0;
    return e;
  }
  const double threshold = tol * max_abs_row_sum(m);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto rank = static_cast<Eigen::Index>((sv.array() > threshold).count());
  if (rank >= cols) return std::nullopt;
  CVector c = svd.matrixV().col(cols - 1);
  c.normalize();
  normalize_phase(c);
  return c;
}

/// Unitary V (V V^H = I) whose first row is v.  Built from one Householder
/// reflection; rows after the first are phase-normalized.
[[nodiscard]] inline CMatrix unitary_complete(const CVector& v) {
  const Eigen::Index m = v.size();
  if (m == 0) throw std::invalid_argument("empty vector");
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("unitary_complete requires a unit vector");
  }
  const double lead = std::abs(v[0]);
  const complex phase = lead > 0.0 ? v[0] / lead : complex(1.0, 0.0);

  // H maps -phase * e1 to v; u = -phase * e1 - v never cancels.
  CVector u = -v;
  u[0] -= phase;
  const double unorm2 = u.squaredNorm();
  CMatrix q = CMatrix::Identity(m, m) - (2.0 / unorm2) * (u * u.adjoint());
  q.col(0) *= -phase;

  CMatrix out = q.transpose();
  out.row(0) = v.transpose();
  for (Eigen::Index r = 1; r < m; ++r) {
    CVector row = out.row(r).transpose();
    normalize_phase(row);
    out.row(r) = row.transpose();
  }
  return out;
}

}  // namespace hpdk
