#pragma once

// Random generators and brute-force reference computations shared by the
// unit tests, the acceptance suite and `hpdk selftest`.  Nothing here is used
// by the library proper.

#include "hpdk/catalog.hpp"
#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"
#include "hpdk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace hpdk::testing {

using Rng = std::mt19937_64;

[[nodiscard]] inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

[[nodiscard]] inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

[[nodiscard]] inline complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

/// Uniform in the closed disk of the given radius.
[[nodiscard]] inline complex random_in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

[[nodiscard]] inline CVector random_unit_vector(Rng& rng, Eigen::Index m) {
  CVector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v[i] = gaussian_complex(rng);
  return v.normalized();
}

/// B B^H with B of size n x rank.
[[nodiscard]] inline CMatrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  CMatrix b(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) b(i, j) = gaussian_complex(rng);
  }
  return b * b.adjoint();
}

/// n distinct Gaussian vectors in C^m.
[[nodiscard]] inline ComplexPointSet random_point_set(Rng& rng, std::size_t n, Eigen::Index m) {
  std::vector<CVector> pts;
  for (std::size_t i = 0; i < n; ++i) {
    CVector v(m);
    for (Eigen::Index j = 0; j < m; ++j) v[j] = gaussian_complex(rng);
    pts.push_back(std::move(v));
  }
  return {m, std::move(pts)};
}

/// Random exponent set: up to 3 points and up to 4 families, entries small,
/// strides |dk - dl| at most max_stride.  No duplicates.
[[nodiscard]] inline ExponentSetSpec random_spec(Rng& rng, std::int64_t max_stride = 5) {
  ExponentSetSpec spec;
  spec.require_origin = uniform_int(rng, 0, 3) != 0;
  std::set<ExponentPair> points;
  const auto np = uniform_int(rng, 0, 3);
  for (std::int64_t i = 0; i < np; ++i) points.insert({uniform_int(rng, 0, 4), uniform_int(rng, 0, 4)});
  if (uniform_int(rng, 0, 1) == 0) points.insert({0, 0});
  spec.points.assign(points.begin(), points.end());

  std::set<ExponentFamily> families;
  const auto nf = uniform_int(rng, 0, 4);
  for (std::int64_t i = 0; i < nf; ++i) {
    ExponentFamily f{{uniform_int(rng, 0, 4), uniform_int(rng, 0, 4)},
                     {uniform_int(rng, 0, max_stride), uniform_int(rng, 0, max_stride)}};
    if (f.step.k == 0 && f.step.l == 0) f.step.k = 1;
    if (std::abs(f.step.k - f.step.l) > max_stride) continue;
    families.insert(f);
  }
  spec.families.assign(families.begin(), families.end());
  return spec;
}

/// Residues mod p holding infinitely many distinct values of k - l, found by
/// walking each family directly: a family whose k - l changes along s hits a
/// residue again every p steps, so a residue met at least twice within the
/// first 10 p members is met infinitely often.  Points and families with
/// constant k - l contribute finitely many values and are ignored.
[[nodiscard]] inline std::set<std::int64_t> brute_coverage(const ExponentSetSpec& spec,
                                                           std::int64_t p) {
  std::map<std::int64_t, std::set<std::int64_t>> values;
  for (const auto& f : spec.families) {
    if (f.step.k == f.step.l) continue;
    for (std::int64_t s = 0; s < 10 * p; ++s) {
      const ExponentPair e = f.member(s);
      const std::int64_t v = e.k - e.l;
      values[floor_mod(v, p)].insert(v);
    }
  }
  std::set<std::int64_t> out;
  for (const auto& [q, vs] : values) {
    if (vs.size() >= 2) out.insert(q);
  }
  return out;
}

/// Verdict by scanning every p <= max_p with brute_coverage.
[[nodiscard]] inline CriterionVerdict brute_verdict(const ExponentSetSpec& spec, std::int64_t max_p) {
  CriterionVerdict v;
  bool has_origin = false;
  for (const auto& e : enumerate_truncated(spec, 0)) has_origin = has_origin || (e.k == 0 && e.l == 0);
  v.origin_missing = spec.require_origin && !has_origin;
  for (std::int64_t p = 1; p <= max_p && !v.failing_class; ++p) {
    const auto cov = brute_coverage(spec, p);
    for (std::int64_t q = 0; q < p; ++q) {
      if (!cov.contains(q)) {
        v.failing_class = ResidueClass{p, q};
        break;
      }
    }
  }
  v.holds = !v.origin_missing && !v.failing_class;
  return v;
}

/// Random coefficient model on a menu of structures; weights in [0.5, 1.5],
/// rho in [0.5, 1].
[[nodiscard]] inline CoefficientModel random_model(Rng& rng) {
  const auto w = [&] { return uniform(rng, 0.5, 1.5); };
  const auto rho = [&] { return uniform(rng, 0.5, 1.0); };
  switch (uniform_int(rng, 0, 4)) {
    case 0:
      return catalog::exponential_grid_model(13);
    case 1:
      return {catalog::diagonal_spec(), {{}, {{w(), rho()}}}};
    case 2:
      return {catalog::even_difference_spec(), {{{{0, 0}, w()}}, {{w(), rho()}, {w(), rho()}}}};
    case 3:
      return {catalog::full_grid_spec(), {{{{0, 0}, w()}}, {{w(), rho()}, {w(), rho()}}}};
    default: {
      ExponentSetSpec spec;
      WeightRule rule;
      std::set<ExponentFamily> seen;
      const auto nf = uniform_int(rng, 1, 3);
      for (std::int64_t i = 0; i < nf; ++i) {
        ExponentFamily f{{uniform_int(rng, 0, 2), uniform_int(rng, 0, 2)},
                         {uniform_int(rng, 0, 2), uniform_int(rng, 0, 2)}};
        if (f.step.k == 0 && f.step.l == 0) f.step.k = 1;
        if (!seen.insert(f).second) continue;
        spec.families.push_back(f);
        rule.family_weights.push_back({w(), rho()});
      }
      if (uniform_int(rng, 0, 2) == 0) {
        spec.points.push_back({0, 0});
        rule.point_weights[{0, 0}] = w();
      }
      return {std::move(spec), std::move(rule)};
    }
  }
}

/// 1 to max_n scalar points on two circles (|z| in [0.6, 0.7] and
/// [0.8, 0.95]) with pairwise distance >= 0.3, optionally in +-z pairs.
/// Equal moduli and antipodal pairs produce exactly singular configurations
/// for several exponent structures; otherwise the points are well separated.
[[nodiscard]] inline std::vector<complex> random_oracle_points(Rng& rng, std::int64_t max_n = 6) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, max_n));
  const double inner = uniform(rng, 0.6, 0.7);
  const double outer = uniform(rng, 0.8, 0.95);
  const bool pairs = uniform_int(rng, 0, 1) == 1;
  std::vector<complex> pts;
  for (int attempt = 0; pts.size() < n && attempt < 10000; ++attempt) {
    const double r = uniform_int(rng, 0, 1) == 1 ? inner : outer;
    const complex z = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
    bool ok = true;
    for (const auto& w : pts) {
      ok = ok && std::abs(w - z) >= 0.3 && (!pairs || std::abs(w + z) >= 0.3);
    }
    if (!ok) continue;
    pts.push_back(z);
    if (pairs && pts.size() < n) pts.push_back(-z);
  }
  return pts;
}

[[nodiscard]] inline CVector to_vector(const std::vector<complex>& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

}  // namespace hpdk::testing
