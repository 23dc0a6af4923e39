#pragma once

// Dot-product kernels f(z) = sum_{(k,l) in J} b_{k,l} z^k conj(z)^l with
// nonnegative weights, their certified evaluation, and Gram assembly.

#include "hpdk/exponents.hpp"
#include "hpdk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpdk {

/// Family member s gets weight w * rho^s / s!.
struct FamilyWeight {
  double w = 1.0;
  double rho = 1.0;
};

struct WeightRule {
  std::map<ExponentPair, double> point_weights;
  std::vector<FamilyWeight> family_weights;  // aligned with spec.families
};

/// Coefficients b_{k,l} on an exponent set.  Weights of overlapping
/// generators add up, so b(k,l) > 0 exactly on J.
class CoefficientModel {
 public:
  CoefficientModel(ExponentSetSpec spec, WeightRule rule)
      : spec_(std::move(spec)), rule_(std::move(rule)) {
    validate_structure(spec_);
    if (rule_.family_weights.size() != spec_.families.size()) {
      throw std::invalid_argument("family_weights must align with families (" +
                                  std::to_string(rule_.family_weights.size()) + " vs " +
                                  std::to_string(spec_.families.size()) + ")");
    }
    for (const auto& fw : rule_.family_weights) {
      if (!(fw.w > 0.0) || !(fw.rho > 0.0) || !std::isfinite(fw.w) || !std::isfinite(fw.rho)) {
        throw std::invalid_argument("family weight (w, rho) must be finite and positive");
      }
    }
    if (rule_.point_weights.size() != spec_.points.size()) {
      throw std::invalid_argument("point_weights must cover every point exactly once");
    }
    for (const auto& e : spec_.points) {
      const auto it = rule_.point_weights.find(e);
      if (it == rule_.point_weights.end()) {
        throw std::invalid_argument("point (" + std::to_string(e.k) + "," + std::to_string(e.l) +
                                    ") has no weight");
      }
      if (!(it->second > 0.0) || !std::isfinite(it->second)) {
        throw std::invalid_argument("point weights must be finite and positive");
      }
    }
  }

  [[nodiscard]] const ExponentSetSpec& spec() const { return spec_; }
  [[nodiscard]] const WeightRule& rule() const { return rule_; }

  [[nodiscard]] std::size_t generator_count() const {
    return spec_.points.size() + spec_.families.size();
  }

  /// b(k,l); zero off J.
  [[nodiscard]] double coefficient(const ExponentPair& e) const {
    double b = 0.0;
    if (const auto it = rule_.point_weights.find(e); it != rule_.point_weights.end()) {
      b += it->second;
    }
    for (std::size_t i = 0; i < spec_.families.size(); ++i) {
      if (const auto s = family_index(spec_.families[i], e)) {
        const auto& fw = rule_.family_weights[i];
        b += fw.w * std::exp(static_cast<double>(*s) * std::log(fw.rho) -
                             std::lgamma(static_cast<double>(*s) + 1.0));
      }
    }
    return b;
  }

 private:
  ExponentSetSpec spec_;
  WeightRule rule_;
};

/// z^k conj(z)^l, computed so that conj(z) yields the exact conjugate and a
/// real z yields an exactly real value.  0^0 = 1.
[[nodiscard]] inline complex monomial(complex z, std::int64_t k, std::int64_t l) {
  const std::int64_t common = k < l ? k : l;
  std::int64_t excess = (k > l ? k : l) - common;
  complex base = k >= l ? z : std::conj(z);
  complex power(1.0, 0.0);
  while (excess > 0) {
    if (excess & 1) power *= base;
    excess >>= 1;
    if (excess > 0) base *= base;
  }
  if (common == 0) return power;
  return std::pow(std::norm(z), static_cast<double>(common)) * power;
}

namespace detail {

inline constexpr int kMaxSeriesTerms = 100000;

/// Smallest S with x^{S+1}/(S+1)! * e^x * prefactor < bound, where the left
/// side dominates sum_{s>S} prefactor * x^s / s!.
[[nodiscard]] inline int tail_cutoff(double x, double prefactor, double bound) {
  if (x == 0.0 || prefactor == 0.0) return 0;
  const double ex = std::exp(x);
  double term = x;  // x^{S+1}/(S+1)! at S = 0
  for (int s = 0; s < kMaxSeriesTerms; ++s) {
    if (prefactor * term * ex < bound) return s;
    term *= x / static_cast<double>(s + 2);
  }
  throw std::domain_error("series truncation did not reach the requested tolerance");
}

/// Upper bound for sum_{s>S} x^s/s!.
[[nodiscard]] inline double exp_tail_bound(double x, std::int64_t cutoff) {
  if (x == 0.0) return 0.0;
  const double s1 = static_cast<double>(cutoff + 1);
  return std::exp(s1 * std::log(x) - std::lgamma(s1 + 1.0) + x);
}

}  // namespace detail

/// f(a) truncated so that |F - f(a)| <= tol.  Points are summed exactly;
/// each family is cut where its remainder bound drops below
/// tol / (number of generators).
[[nodiscard]] inline complex eval_kernel(const CoefficientModel& model, complex a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const auto& spec = model.spec();
  const auto& rule = model.rule();
  const double radius = std::abs(a);
  const double share = tol / static_cast<double>(std::max<std::size_t>(model.generator_count(), 1));

  complex sum(0.0, 0.0);
  for (const auto& [e, w] : rule.point_weights) sum += w * monomial(a, e.k, e.l);

  for (std::size_t i = 0; i < spec.families.size(); ++i) {
    const auto& fam = spec.families[i];
    const auto& fw = rule.family_weights[i];
    const double x = fw.rho * std::pow(radius, static_cast<double>(fam.step.k + fam.step.l));
    const double prefactor = fw.w * std::pow(radius, static_cast<double>(fam.start.k + fam.start.l));
    const int cutoff = detail::tail_cutoff(x, prefactor, share);

    const complex ratio = monomial(a, fam.step.k, fam.step.l);
    complex term = fw.w * monomial(a, fam.start.k, fam.start.l);
    for (int s = 0; s <= cutoff; ++s) {
      sum += term;
      term *= ratio * (fw.rho / static_cast<double>(s + 1));
    }
  }
  return sum;
}

/// Upper bound on sum of b_{k,l} * radius^{k+l} over (k,l) in J with
/// k + l > truncation.
[[nodiscard]] inline double tail_mass(const CoefficientModel& model, double radius,
                                      std::int64_t truncation) {
  double mass = 0.0;
  for (const auto& [e, w] : model.rule().point_weights) {
    if (e.k + e.l > truncation) mass += w * std::pow(radius, static_cast<double>(e.k + e.l));
  }
  const auto& spec = model.spec();
  for (std::size_t i = 0; i < spec.families.size(); ++i) {
    const auto& fam = spec.families[i];
    const auto& fw = model.rule().family_weights[i];
    const std::int64_t base = fam.start.k + fam.start.l;
    const std::int64_t growth = fam.step.k + fam.step.l;
    // members s > cutoff lie beyond the truncation
    const std::int64_t cutoff = base > truncation ? -1 : (truncation - base) / growth;
    const double x = fw.rho * std::pow(radius, static_cast<double>(growth));
    const double prefactor = fw.w * std::pow(radius, static_cast<double>(base));
    mass += cutoff < 0 ? prefactor * std::exp(x) : prefactor * detail::exp_tail_bound(x, cutoff);
  }
  return mass;
}

/// The model of conj(f): every exponent (k,l) becomes (l,k).
[[nodiscard]] inline CoefficientModel conjugate_model(const CoefficientModel& model) {
  ExponentSetSpec spec = model.spec();
  WeightRule rule;
  rule.family_weights = model.rule().family_weights;
  for (auto& e : spec.points) std::swap(e.k, e.l);
  for (auto& f : spec.families) {
    std::swap(f.start.k, f.start.l);
    std::swap(f.step.k, f.step.l);
  }
  for (const auto& [e, w] : model.rule().point_weights) rule.point_weights[{e.l, e.k}] = w;
  return {std::move(spec), std::move(rule)};
}

/// Finite list of vectors in C^m.
class ComplexPointSet {
 public:
  ComplexPointSet(Eigen::Index dimension, std::vector<CVector> points)
      : dimension_(dimension), points_(std::move(points)) {
    if (dimension_ < 1) throw std::invalid_argument("dimension must be positive");
    for (const auto& z : points_) {
      if (z.size() != dimension_) {
        throw std::invalid_argument("point has dimension " + std::to_string(z.size()) +
                                    ", expected " + std::to_string(dimension_));
      }
    }
  }

  static ComplexPointSet from_scalars(const std::vector<complex>& values) {
    std::vector<CVector> pts;
    pts.reserve(values.size());
    for (const auto& v : values) pts.push_back(CVector::Constant(1, v));
    return {1, std::move(pts)};
  }

  [[nodiscard]] Eigen::Index dimension() const { return dimension_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<CVector>& points() const { return points_; }
  [[nodiscard]] const CVector& operator[](std::size_t i) const { return points_[i]; }

  /// min over r < s of |z^r - z^s|; +inf for fewer than two points.
  [[nodiscard]] double min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < points_.size(); ++r) {
      for (std::size_t s = r + 1; s < points_.size(); ++s) {
        gap = std::min(gap, (points_[r] - points_[s]).norm());
      }
    }
    return gap;
  }

  [[nodiscard]] bool distinct(double gap) const { return min_gap() > gap; }

 private:
  Eigen::Index dimension_;
  std::vector<CVector> points_;
};

enum class PsdVerdict { positive_definite, positive_semidefinite, indefinite };

[[nodiscard]] inline const char* to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::positive_definite:
      return "positive_definite";
    case PsdVerdict::positive_semidefinite:
      return "positive_semidefinite";
    case PsdVerdict::indefinite:
      return "indefinite";
  }
  return "unknown";
}

struct GramMatrix {
  CMatrix entries;
  double hermitian_defect = 0.0;
  std::optional<double> min_eigenvalue;
  std::optional<PsdVerdict> psd_verdict;

  GramMatrix() = default;
  explicit GramMatrix(CMatrix m)
      : entries(std::move(m)), hermitian_defect(hpdk::hermitian_defect(entries)) {}

  [[nodiscard]] Eigen::Index size() const { return entries.rows(); }
  [[nodiscard]] double scale() const { return max_abs_row_sum(entries); }
};

/// G_rs = <z^r, z^s> = sum_j z^r_j conj(z^s_j).
[[nodiscard]] inline GramMatrix inner_gram(const ComplexPointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  CMatrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      const auto& zr = pts[static_cast<std::size_t>(r)];
      const auto& zs = pts[static_cast<std::size_t>(s)];
      complex acc(0.0, 0.0);
      for (Eigen::Index j = 0; j < pts.dimension(); ++j) acc += zr[j] * std::conj(zs[j]);
      g(r, s) = acc;
    }
  }
  return GramMatrix(std::move(g));
}

/// (f(G_rs)) entrywise.
[[nodiscard]] inline GramMatrix kernel_gram(const CoefficientModel& model, const GramMatrix& g,
                                            double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (hermitian_defect(g.entries) > tol * g.scale()) {
    throw contract_violation("input Gram matrix is not Hermitian within tolerance");
  }
  const Eigen::Index n = g.size();
  CMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) out(r, s) = eval_kernel(model, g.entries(r, s), tol);
  }
  return GramMatrix(std::move(out));
}

/// Classifies the Hermitian part of G against eps * (max abs row sum) and
/// records the verdict and smallest eigenvalue on G.
inline PsdVerdict psd_check(GramMatrix& g, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  g.hermitian_defect = hermitian_defect(g.entries);
  const auto spectrum = hermitian_eigen(g.entries, eps);
  const double lambda_min = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
  const double threshold = eps * spectrum.scale;
  PsdVerdict verdict = PsdVerdict::indefinite;
  if (lambda_min > threshold) {
    verdict = PsdVerdict::positive_definite;
  } else if (lambda_min >= -threshold) {
    verdict = PsdVerdict::positive_semidefinite;
  }
  g.min_eigenvalue = lambda_min;
  g.psd_verdict = verdict;
  return verdict;
}

[[nodiscard]] inline bool is_psd(PsdVerdict v) { return v != PsdVerdict::indefinite; }

/// Entrywise (Hadamard) product.
[[nodiscard]] inline GramMatrix schur_product(const GramMatrix& g1, const GramMatrix& g2) {
  if (g1.entries.rows() != g2.entries.rows() || g1.entries.cols() != g2.entries.cols()) {
    throw std::invalid_argument("schur_product: dimension mismatch");
  }
  return GramMatrix(g1.entries.cwiseProduct(g2.entries));
}

}  // namespace hpdk
