#pragma once

// Invariant suites for every module, run by `hpdk selftest`.  Each suite is
// seeded, so a (level, seed) pair always produces the same report.

#include "hpdk/catalog.hpp"
#include "hpdk/construction.hpp"
#include "hpdk/exponents.hpp"
#include "hpdk/kernel.hpp"
#include "hpdk/linalg.hpp"
#include "hpdk/oracle.hpp"
#include "hpdk/testing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace hpdk::selftest {

enum class Level { quick, full };

struct SuiteReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> messages;  // first few failures only

  [[nodiscard]] bool passed() const { return failures == 0; }
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : report_(r) {}

  void check(bool ok, const std::string& what) {
    ++report_.cases;
    if (ok) return;
    ++report_.failures;
    if (report_.messages.size() < 8) report_.messages.push_back(what);
  }

  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }

 private:
  SuiteReport& report_;
};

[[nodiscard]] inline int count(Level level, int full) {
  return level == Level::full ? full : std::max(1, full / 5);
}

[[nodiscard]] inline std::string str(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace detail

[[nodiscard]] inline SuiteReport exponents_suite(Level level, std::uint64_t seed) {
  SuiteReport report{"exponents", 0, 0, {}};
  detail::Recorder rec(report);
  testing::Rng rng(seed);
  const int specs = detail::count(level, 200);

  for (int i = 0; i < specs; ++i) {
    const ExponentSetSpec spec = testing::random_spec(rng);
    const std::string tag = "spec " + std::to_string(i);
    rec.guarded(tag, [&] {
      const DifferenceProfile profile = difference_profile(spec);
      for (std::int64_t p = 1; p <= 64; ++p) {
        if (residue_coverage(profile, p) != testing::brute_coverage(spec, p)) {
          rec.check(false, tag + ": coverage mismatch at p=" + std::to_string(p));
          return;
        }
      }
      rec.check(true, tag);

      const CriterionVerdict v = check_strict_criterion(spec);
      const CriterionVerdict brute = testing::brute_verdict(spec, 4 * v.effective_modulus);
      rec.check(v.holds == brute.holds && v.failing_class == brute.failing_class,
                tag + ": p* reduction disagrees with scan up to 4 p*");

      ExponentSetSpec shuffled = spec;
      std::shuffle(shuffled.points.begin(), shuffled.points.end(), rng);
      std::shuffle(shuffled.families.begin(), shuffled.families.end(), rng);
      if (!shuffled.families.empty()) shuffled.families.push_back(shuffled.families.front());
      rec.check(check_strict_criterion(shuffled).holds == v.holds,
                tag + ": verdict changed under permutation or duplicate family");

      if (v.holds) {
        ExponentSetSpec bigger = spec;
        bigger.families.push_back({{testing::uniform_int(rng, 0, 4), testing::uniform_int(rng, 0, 4)},
                                   {testing::uniform_int(rng, 0, 3), testing::uniform_int(rng, 1, 3)}});
        rec.check(check_strict_criterion(bigger).holds, tag + ": adding a family broke the criterion");
      }
    });
  }
  return report;
}

[[nodiscard]] inline SuiteReport linalg_suite(Level level, std::uint64_t seed) {
  SuiteReport report{"linalg", 0, 0, {}};
  detail::Recorder rec(report);
  testing::Rng rng(seed);
  const double tol = 1e-10;

  // 2x2 closed form: [[a, b], [conj b, d]]
  for (int i = 0; i < detail::count(level, 200); ++i) {
    const double a = testing::uniform(rng, -2.0, 2.0);
    const double d = testing::uniform(rng, -2.0, 2.0);
    const complex b = testing::gaussian_complex(rng);
    CMatrix m(2, 2);
    m << a, b, std::conj(b), d;
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    const auto ev = hermitian_eigen(m, tol).eigenvalues;
    rec.check(std::abs(ev[0] - (mid - rad)) <= 1e-12 && std::abs(ev[1] - (mid + rad)) <= 1e-12,
              "2x2 spectrum off closed form");
  }

  // 3x3 with known spectrum: U diag(l) U^H
  for (int i = 0; i < detail::count(level, 200); ++i) {
    std::vector<double> l = {testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1),
                             testing::uniform(rng, -1, 1)};
    std::sort(l.begin(), l.end());
    const CMatrix u = unitary_complete(testing::random_unit_vector(rng, 3));
    CMatrix diag = CMatrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) diag(k, k) = l[static_cast<std::size_t>(k)];
    CMatrix m = u * diag * u.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    const auto ev = hermitian_eigen(m, tol).eigenvalues;
    bool ok = true;
    for (std::size_t k = 0; k < 3; ++k) ok = ok && std::abs(ev[k] - l[k]) <= 1e-12;
    rec.check(ok, "3x3 spectrum off construction");
  }

  for (int i = 0; i < detail::count(level, 500); ++i) {
    const auto n = testing::uniform_int(rng, 1, 16);
    const auto r = testing::uniform_int(rng, 1, n);
    const CMatrix a = testing::random_psd(rng, n, r);
    rec.guarded("rank_factor", [&] {
      const RankFactorization f = rank_factor(a, tol);
      const double scale = max_abs_row_sum(a);
      const auto ev = hermitian_eigen(a, tol).eigenvalues;
      const auto expect = std::count_if(ev.begin(), ev.end(), [&](double x) { return x > tol * scale; });
      const double err = max_abs_row_sum(a - f.factor.transpose() * f.factor.conjugate());
      rec.check(f.rank == expect && f.rank == r && err <= static_cast<double>(n) * tol * scale + 1e-13 * scale,
                "rank_factor n=" + std::to_string(n) + " rank " + std::to_string(f.rank) +
                    " err " + detail::str(err / scale));
    });
  }

  for (int i = 0; i < detail::count(level, 300); ++i) {
    const auto rows = testing::uniform_int(rng, 1, 8);
    const auto cols = testing::uniform_int(rng, 1, 10);
    const auto r = testing::uniform_int(rng, 1, std::min(rows, cols));
    CMatrix b(rows, r), c(r, cols);
    for (Eigen::Index x = 0; x < rows; ++x)
      for (Eigen::Index y = 0; y < r; ++y) b(x, y) = testing::gaussian_complex(rng);
    for (Eigen::Index x = 0; x < r; ++x)
      for (Eigen::Index y = 0; y < cols; ++y) c(x, y) = testing::gaussian_complex(rng);
    const CMatrix m = b * c;
    const auto v = nullspace_vector(m, tol);
    if (r < cols) {
      const bool found = v.has_value();
      rec.check(found, "nullspace_vector missed a rank-deficient matrix");
      if (!found) continue;
      CMatrix stacked(rows + 1, cols);
      stacked << m, v->adjoint();
      rec.check(numerical_rank(stacked, tol) == numerical_rank(m, tol) + 1 &&
                    (m * *v).norm() <= 1e-12 * max_abs_row_sum(m),
                "null vector not orthogonal to the row space");
    } else {
      rec.check(!v.has_value(), "nullspace_vector returned a vector for full column rank");
    }
  }

  for (int i = 0; i < detail::count(level, 500); ++i) {
    const auto m = testing::uniform_int(rng, 1, 16);
    const CVector v = testing::random_unit_vector(rng, m);
    const CMatrix u = unitary_complete(v);
    const double err = (u * u.adjoint() - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    rec.check(err <= 1e-12 && (u.row(0).transpose() - v).norm() == 0.0,
              "unitary_complete defect " + detail::str(err));
  }
  return report;
}

[[nodiscard]] inline SuiteReport kernel_suite(Level level, std::uint64_t seed) {
  SuiteReport report{"kernel", 0, 0, {}};
  detail::Recorder rec(report);
  testing::Rng rng(seed);

  for (int i = 0; i < detail::count(level, 1000); ++i) {
    const CoefficientModel model = testing::random_model(rng);
    const complex a = testing::random_in_disk(rng, 3.0);
    const double t = testing::uniform(rng, -3.0, 3.0);
    rec.guarded("symmetry", [&] {
      const complex fa = eval_kernel(model, a, 1e-14);
      const complex fc = eval_kernel(model, std::conj(a), 1e-14);
      const double scale = std::max(1.0, std::abs(fa));
      rec.check(std::abs(fc - std::conj(fa)) <= 1e-13 * scale, "f(conj a) != conj f(a)");
      const complex ft = eval_kernel(model, complex(t, 0.0), 1e-14);
      rec.check(std::abs(ft.imag()) <= 1e-13 * std::max(1.0, std::abs(ft)), "f not real on R");

      const double tol = 1e-6;
      const complex coarse = eval_kernel(model, a, tol);
      const complex fine = eval_kernel(model, a, tol / 2);
      rec.check(std::abs(coarse - fine) <= tol, "halving tol moved the value by more than tol");
    });
  }

  for (int i = 0; i < detail::count(level, 200); ++i) {
    const auto n = testing::uniform_int(rng, 1, 8);
    GramMatrix g1(testing::random_psd(rng, n, testing::uniform_int(rng, 1, n)));
    GramMatrix g2(testing::random_psd(rng, n, testing::uniform_int(rng, 1, n)));
    const double a = testing::uniform(rng, 0.0, 2.0);
    const double b = testing::uniform(rng, 0.0, 2.0);
    GramMatrix combo(a * g1.entries + b * g2.entries);
    GramMatrix prod = schur_product(g1, g2);
    rec.check(is_psd(psd_check(combo, 1e-12)), "nonnegative combination left the cone");
    rec.check(is_psd(psd_check(prod, 1e-12)), "Schur product left the cone");
  }

  for (int i = 0; i < detail::count(level, 200); ++i) {
    const CoefficientModel model = testing::random_model(rng);
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 6));
    const auto m = testing::uniform_int(rng, 1, 4);
    std::vector<CVector> pts;
    for (std::size_t r = 0; r < n; ++r) pts.push_back(0.5 * testing::random_unit_vector(rng, m) *
                                                       testing::uniform(rng, 0.2, 2.0));
    rec.guarded("kernel_gram", [&] {
      const GramMatrix g = inner_gram(ComplexPointSet(m, pts));
      GramMatrix k = kernel_gram(model, g, 1e-13);
      rec.check(is_psd(psd_check(k, 1e-10)), "kernel Gram indefinite: lambda_min " +
                                                   detail::str(*k.min_eigenvalue / k.scale()));
      const GramMatrix kc = kernel_gram(conjugate_model(model), g, 1e-13);
      rec.check((kc.entries - k.entries.conjugate()).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, k.scale()),
                "conjugate model Gram differs from conjugate Gram");
    });
  }
  return report;
}

[[nodiscard]] inline SuiteReport construction_suite(Level level, std::uint64_t seed) {
  SuiteReport report{"construction", 0, 0, {}};
  detail::Recorder rec(report);
  testing::Rng rng(seed);

  for (int i = 0; i < detail::count(level, 200); ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 8));
    const auto m = testing::uniform_int(rng, 1, 5);
    const ComplexPointSet pts = testing::random_point_set(rng, n, m);
    rec.guarded("split_gram", [&] {
      const DecompositionResult d = split_gram(pts, rng(), 1e-12);
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) gap = std::min(gap, std::abs(d.scalars[r] - d.scalars[s]));
      rec.check(d.reconstruction_error <= 1e-11 * d.scale && d.remainder_min_eigenvalue >= -1e-11 * d.scale &&
                    gap > 0.0,
                "split_gram error " + detail::str(d.reconstruction_error / d.scale));
    });
  }

  for (int i = 0; i < detail::count(level, 200); ++i) {
    const auto n = testing::uniform_int(rng, 1, 6);
    const auto rank = testing::uniform_int(rng, 1, std::max<std::int64_t>(1, n - 1));
    const CMatrix a = testing::random_psd(rng, n, rank);
    const CMatrix big = block_extend(a, testing::gaussian_complex(rng), testing::gaussian_complex(rng));
    const double scale = max_abs_row_sum(big);
    rec.check(min_eigenvalue(big, 1e-12) >= -1e-12 * scale, "block embedding indefinite");
    rec.check(numerical_rank(big, 1e-10) <= numerical_rank(a, 1e-10) + 1, "block embedding rank grew by more than 1");
  }

  // random failing specs: witness annihilates J up to the truncation and is
  // well separated
  int built = 0;
  for (int attempt = 0; built < detail::count(level, 100) && attempt < 100000; ++attempt) {
    ExponentSetSpec spec = testing::random_spec(rng, 3);
    const CriterionVerdict v = check_strict_criterion(spec);
    if (v.holds || !v.failing_class) continue;
    ++built;
    rec.guarded("counterexample", [&] {
      const AnnihilationWitness w = build_counterexample(spec, v, 24, 1e-9);
      const auto count = static_cast<double>(w.class_differences.size());
      const double pn = static_cast<double>(w.p);
      const double bound = 2.0 * std::sin(std::numbers::pi / (pn * (count + 2.0) * (count + 1.0)));
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < w.points.size(); ++r)
        for (std::size_t s = r + 1; s < w.points.size(); ++s)
          gap = std::min(gap, std::abs(w.points[r] - w.points[s]));
      double norm = 0.0;
      for (const auto& c : w.coeffs) norm += std::norm(c);
      rec.check(w.max_residual <= 1e-9 && gap >= bound * (1.0 - 1e-12) && std::sqrt(norm) > 0.5,
                "witness residual " + detail::str(w.max_residual) + " gap " + detail::str(gap));
    });
  }
  return report;
}

[[nodiscard]] inline SuiteReport oracle_suite(Level level, std::uint64_t seed) {
  SuiteReport report{"oracle", 0, 0, {}};
  detail::Recorder rec(report);
  testing::Rng rng(seed);
  const double tol = 1e-10;

  int accepted = 0;
  for (int attempt = 0; accepted < detail::count(level, 300) && attempt < 100000; ++attempt) {
    const CoefficientModel model = testing::random_model(rng);
    const std::vector<complex> pts = testing::random_oracle_points(rng);
    rec.guarded("equivalence", [&] {
      const StrictnessResult o = strictness_oracle(model, pts, 12, tol);
      if (!o.guard_passed) return;
      ++accepted;
      GramMatrix k = kernel_gram(model, inner_gram(ComplexPointSet::from_scalars(pts)), 1e-13);
      psd_check(k, tol);
      const bool eigen_strict = *k.min_eigenvalue > tol * k.scale();
      rec.check(eigen_strict == (o.verdict == Strictness::strict),
                "oracle " + std::string(to_string(o.verdict)) + " vs lambda_min/scale " +
                    detail::str(*k.min_eigenvalue / k.scale()));
      if (o.witness) {
        const double n = static_cast<double>(pts.size());
        rec.check(std::abs(o.witness_form) <= n * n * tol,
                  "witness form " + detail::str(o.witness_form));
      }

      const complex u = std::polar(1.0, testing::uniform(rng, 0.0, 2.0 * std::numbers::pi));
      std::vector<complex> rotated = pts;
      for (auto& z : rotated) z *= u;
      rec.check(collocation(rotated, model.spec(), 12, tol).rank == o.rank,
                "collocation rank changed under rotation");
    });
  }

  // Vanishing configurations over a finite exponent window: K moduli, p
  // rotated copies of m angles each, exponents (k, l) with k - l avoiding the
  // class q mod p and K consecutive values of l per difference.  Every null
  // vector of the window system must vanish class by class.
  for (int i = 0; i < detail::count(level, 100); ++i) {
    const auto classes = testing::uniform_int(rng, 1, 3);
    const auto p = testing::uniform_int(rng, 2, 3);
    const auto q = testing::uniform_int(rng, 0, p - 1);
    const auto rows = testing::uniform_int(rng, 1, 2);
    std::vector<complex> pts;
    std::vector<double> moduli;
    for (std::int64_t j = 0; j < classes; ++j) {
      const double lambda = 0.8 + 0.4 * (static_cast<double>(j) + testing::uniform(rng, 0.0, 0.5)) /
                                      static_cast<double>(classes);
      moduli.push_back(lambda);
      for (std::int64_t r = 0; r < rows; ++r) {
        const double theta = testing::uniform(rng, 0.0, 2.0 * std::numbers::pi / static_cast<double>(p));
        for (std::int64_t t = 0; t < p; ++t) {
          pts.push_back(std::polar(lambda, theta + 2.0 * std::numbers::pi * static_cast<double>(t) /
                                                   static_cast<double>(p)));
        }
      }
    }
    const auto n = static_cast<std::int64_t>(pts.size());
    std::vector<ExponentPair> window;
    for (std::int64_t a = -n; a <= n; ++a) {
      if (floor_mod(a, p) == q) continue;
      const std::int64_t l0 = a < 0 ? -a : 0;
      for (std::int64_t l = l0; l < l0 + classes; ++l) window.push_back({a + l, l});
    }
    CMatrix system(static_cast<Eigen::Index>(window.size()), n);
    for (std::size_t e = 0; e < window.size(); ++e)
      for (std::int64_t r = 0; r < n; ++r)
        system(static_cast<Eigen::Index>(e), r) = monomial(pts[static_cast<std::size_t>(r)], window[e].k, window[e].l);
    const auto c = nullspace_vector(system, tol);
    rec.check(c.has_value(), "constructed window system has no null vector");
    if (!c) continue;
    double worst = 0.0;
    for (const auto& cls : modulus_class_sums(pts, *c, window))
      for (const auto& s : cls.sums) worst = std::max(worst, std::abs(s));
    rec.check(worst <= 10.0 * tol, "per-class sum " + detail::str(worst));
  }
  return report;
}

[[nodiscard]] inline SuiteReport character_suite(Level, std::uint64_t) {
  SuiteReport report{"characters", 0, 0, {}};
  detail::Recorder rec(report);
  for (std::int64_t p = 1; p <= 32; ++p) {
    for (std::int64_t q = 0; q < p; ++q) {
      const auto d = character_coefficients(p, q);
      for (std::int64_t s = 0; s < p; ++s) {
        complex acc(0.0, 0.0);
        for (std::int64_t t = 0; t < p; ++t) {
          acc += d[static_cast<std::size_t>(t)] *
                 std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((t * s) % p) /
                                     static_cast<double>(p));
        }
        const complex expect = s == q ? complex(static_cast<double>(p), 0.0) : complex(0.0, 0.0);
        rec.check(std::abs(acc - expect) <= 1e-12, "character sum p=" + std::to_string(p) +
                                                       " q=" + std::to_string(q) + " s=" + std::to_string(s));
      }
    }
  }
  return report;
}

[[nodiscard]] inline std::vector<SuiteReport> run_all(Level level, std::uint64_t seed) {
  return {exponents_suite(level, seed),    linalg_suite(level, seed),  kernel_suite(level, seed),
          construction_suite(level, seed), oracle_suite(level, seed), character_suite(level, seed)};
}

}  // namespace hpdk::selftest
