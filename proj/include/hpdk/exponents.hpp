#pragma once

// Exponent sets J of the double power series f(z) = sum b_{k,l} z^k conj(z)^l,
// described by finitely many points plus arithmetic families, and the
// residue-coverage test that decides strict positive definiteness.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hpdk {

struct ExponentPair {
  std::int64_t k = 0;
  std::int64_t l = 0;

  friend constexpr auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
};

/// The ray {start + s * step : s = 0, 1, 2, ...} inside Z_+^2.
struct ExponentFamily {
  ExponentPair start;
  ExponentPair step;

  [[nodiscard]] constexpr ExponentPair member(std::int64_t s) const {
    return {start.k + s * step.k, start.l + s * step.l};
  }

  friend constexpr auto operator<=>(const ExponentFamily&, const ExponentFamily&) = default;
};

struct ExponentSetSpec {
  std::vector<ExponentPair> points;
  std::vector<ExponentFamily> families;
  // false on the unit sphere, where (0,0) is not needed
  bool require_origin = true;

  friend bool operator==(const ExponentSetSpec&, const ExponentSetSpec&) = default;
};

/// Difference values {k - l : (k,l) in J}.  Progressions are stored as
/// (offset, stride) and stand for {offset + s * stride : s >= 0}.
struct DifferenceProfile {
  std::set<std::int64_t> isolated;
  std::vector<std::pair<std::int64_t, std::int64_t>> progressions;
};

struct ResidueClass {
  std::int64_t p = 1;
  std::int64_t q = 0;

  friend constexpr bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

struct CriterionVerdict {
  bool holds = false;
  std::int64_t effective_modulus = 1;
  std::optional<ResidueClass> failing_class;
  bool origin_missing = false;
};

// Coverage is computed on an explicit residue table of size p*.
inline constexpr std::int64_t kMaxEffectiveModulus = std::int64_t{1} << 24;

/// Nonnegative residue of v modulo m (m > 0).
[[nodiscard]] constexpr std::int64_t floor_mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

/// Throws std::invalid_argument unless every point and family lies in Z_+^2
/// and every family has a nonzero nonnegative step.
inline void validate_structure(const ExponentSetSpec& spec) {
  for (const auto& e : spec.points) {
    if (e.k < 0 || e.l < 0) {
      throw std::invalid_argument("exponent point has a negative entry");
    }
  }
  for (const auto& f : spec.families) {
    if (f.start.k < 0 || f.start.l < 0) {
      throw std::invalid_argument("family start has a negative entry");
    }
    if (f.step.k < 0 || f.step.l < 0) {
      throw std::invalid_argument("family step must be nonnegative");
    }
    if (f.step.k == 0 && f.step.l == 0) {
      throw std::invalid_argument("family step must not be (0,0)");
    }
  }
}

/// Structural checks plus the no-duplicates rule applied to ingested specs.
inline void validate_spec(const ExponentSetSpec& spec) {
  validate_structure(spec);
  std::set<ExponentPair> seen_points;
  for (const auto& e : spec.points) {
    if (!seen_points.insert(e).second) {
      throw std::invalid_argument("duplicate exponent point (" + std::to_string(e.k) + "," +
                                  std::to_string(e.l) + ")");
    }
  }
  std::set<ExponentFamily> seen_families;
  for (const auto& f : spec.families) {
    if (!seen_families.insert(f).second) {
      throw std::invalid_argument("duplicate exponent family");
    }
  }
}

/// Index s >= 0 with family.member(s) == e, if any.
[[nodiscard]] inline std::optional<std::int64_t> family_index(const ExponentFamily& family,
                                                              const ExponentPair& e) {
  const std::int64_t dk = e.k - family.start.k;
  const std::int64_t dl = e.l - family.start.l;
  if (dk < 0 || dl < 0) return std::nullopt;
  std::int64_t s = 0;
  if (family.step.k != 0) {
    if (dk % family.step.k != 0) return std::nullopt;
    s = dk / family.step.k;
  } else {
    if (dk != 0) return std::nullopt;
    if (dl % family.step.l != 0) return std::nullopt;
    s = dl / family.step.l;
  }
  if (s * family.step.l != dl) return std::nullopt;
  return s;
}

[[nodiscard]] inline bool membership(const ExponentSetSpec& spec, const ExponentPair& e) {
  if (std::find(spec.points.begin(), spec.points.end(), e) != spec.points.end()) return true;
  return std::any_of(spec.families.begin(), spec.families.end(),
                     [&](const ExponentFamily& f) { return family_index(f, e).has_value(); });
}

/// All members of J with k + l <= truncation, sorted lexicographically.
[[nodiscard]] inline std::vector<ExponentPair> enumerate_truncated(const ExponentSetSpec& spec,
                                                                   std::int64_t truncation) {
  std::set<ExponentPair> out;
  for (const auto& e : spec.points) {
    if (e.k + e.l <= truncation) out.insert(e);
  }
  for (const auto& f : spec.families) {
    const std::int64_t growth = f.step.k + f.step.l;
    for (std::int64_t s = 0;; ++s) {
      const ExponentPair e = f.member(s);
      if (e.k + e.l > truncation) break;
      out.insert(e);
      if (growth == 0) break;
    }
  }
  return {out.begin(), out.end()};
}

[[nodiscard]] inline DifferenceProfile difference_profile(const ExponentSetSpec& spec) {
  DifferenceProfile profile;
  for (const auto& e : spec.points) profile.isolated.insert(e.k - e.l);
  std::set<std::pair<std::int64_t, std::int64_t>> progressions;
  for (const auto& f : spec.families) {
    const std::int64_t offset = f.start.k - f.start.l;
    const std::int64_t stride = f.step.k - f.step.l;
    if (stride == 0) {
      profile.isolated.insert(offset);
    } else {
      progressions.emplace(offset, stride);
    }
  }
  profile.progressions.assign(progressions.begin(), progressions.end());
  return profile;
}

/// p* = lcm of |stride| over all progressions, 1 when there are none.
/// Every stride divides p*, so gcd(stride, p) = gcd(stride, gcd(p, p*)): the
/// residues covered modulo any p are determined by coverage modulo a divisor
/// of p*, and full coverage modulo p* carries over to each of its divisors.
[[nodiscard]] inline std::int64_t effective_modulus(const DifferenceProfile& profile) {
  std::int64_t acc = 1;
  for (const auto& [offset, stride] : profile.progressions) {
    const std::int64_t d = stride < 0 ? -stride : stride;
    const std::int64_t g = std::gcd(acc, d);
    if (acc / g > kMaxEffectiveModulus / d) {
      throw std::overflow_error("effective modulus exceeds " +
                                std::to_string(kMaxEffectiveModulus));
    }
    acc = acc / g * d;
  }
  return acc;
}

/// Residue table modulo p: entry q is true iff infinitely many distinct
/// difference values are congruent to q.  A progression (offset, stride)
/// covers the coset offset + gcd(|stride|, p) Z; isolated values never count.
[[nodiscard]] inline std::vector<bool> coverage_table(const DifferenceProfile& profile,
                                                      std::int64_t p) {
  if (p < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<bool> covered(static_cast<std::size_t>(p), false);
  std::set<std::pair<std::int64_t, std::int64_t>> cosets;
  for (const auto& [offset, stride] : profile.progressions) {
    const std::int64_t g = std::gcd(stride < 0 ? -stride : stride, p);
    cosets.emplace(g, floor_mod(offset, g));
  }
  for (const auto& [g, r] : cosets) {
    for (std::int64_t q = r; q < p; q += g) covered[static_cast<std::size_t>(q)] = true;
  }
  return covered;
}

[[nodiscard]] inline std::set<std::int64_t> residue_coverage(const DifferenceProfile& profile,
                                                             std::int64_t p) {
  const auto table = coverage_table(profile, p);
  std::set<std::int64_t> out;
  for (std::int64_t q = 0; q < p; ++q) {
    if (table[static_cast<std::size_t>(q)]) out.insert(q);
  }
  return out;
}

namespace detail {

[[nodiscard]] inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small;
  std::vector<std::int64_t> large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Decides: (0,0) in J (unless sphere mode) and every residue class modulo
/// every p holds infinitely many distinct values of k - l.
///
/// A modulus p behaves like gcd(p, p*), so the smallest failing p is a
/// divisor of p*; divisors are scanned in ascending order, then q ascending.
[[nodiscard]] inline CriterionVerdict check_strict_criterion(const ExponentSetSpec& spec) {
  validate_structure(spec);
  CriterionVerdict verdict;
  verdict.origin_missing = spec.require_origin && !membership(spec, ExponentPair{0, 0});

  const DifferenceProfile profile = difference_profile(spec);
  verdict.effective_modulus = effective_modulus(profile);

  for (const std::int64_t p : detail::divisors(verdict.effective_modulus)) {
    const auto table = coverage_table(profile, p);
    const auto gap = std::find(table.begin(), table.end(), false);
    if (gap != table.end()) {
      verdict.failing_class = ResidueClass{p, static_cast<std::int64_t>(gap - table.begin())};
      break;
    }
  }
  verdict.holds = !verdict.origin_missing && !verdict.failing_class.has_value();
  return verdict;
}

/// Distinct difference values congruent to q modulo p.  Throws when a
/// progression reaches the class, since the set is then infinite.
[[nodiscard]] inline std::vector<std::int64_t> class_differences(const DifferenceProfile& profile,
                                                                 ResidueClass cls) {
  if (cls.p < 1 || cls.q < 0 || cls.q >= cls.p) {
    throw std::invalid_argument("residue class out of range");
  }
  if (coverage_table(profile, cls.p)[static_cast<std::size_t>(cls.q)]) {
    throw std::invalid_argument("residue class holds infinitely many differences");
  }
  std::vector<std::int64_t> out;
  for (const std::int64_t v : profile.isolated) {
    if (floor_mod(v, cls.p) == cls.q) out.push_back(v);
  }
  return out;
}

}  // namespace hpdk
