#include "hpdk/catalog.hpp"
#include "hpdk/exponents.hpp"
#include "hpdk/testing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace hpdk;

namespace {

ExponentSetSpec diagonal_with_origin() { return {{{0, 0}}, {{{1, 1}, {1, 1}}}, true}; }

}  // namespace

TEST(Membership, FamilyMember) { EXPECT_TRUE(membership(diagonal_with_origin(), {3, 3})); }

TEST(Membership, OffDiagonalNotGenerated) { EXPECT_FALSE(membership(diagonal_with_origin(), {2, 3})); }

TEST(Membership, StrideTwoAxis) {
  const ExponentSetSpec spec{{}, {{{0, 0}, {2, 0}}}, true};
  EXPECT_TRUE(membership(spec, {4, 0}));
  EXPECT_FALSE(membership(spec, {3, 0}));
  EXPECT_FALSE(membership(spec, {4, 1}));
}

TEST(Membership, PointsAndStartBelowMember) {
  EXPECT_TRUE(membership(diagonal_with_origin(), {0, 0}));
  EXPECT_FALSE(membership(diagonal_with_origin(), {-1, -1}));
  EXPECT_TRUE(membership(diagonal_with_origin(), {1, 1}));
}

TEST(Validation, RejectsNegativeAndZeroStep) {
  EXPECT_THROW(validate_spec({{{-1, 0}}, {}, true}), std::invalid_argument);
  EXPECT_THROW(validate_spec({{}, {{{0, 0}, {0, 0}}}, true}), std::invalid_argument);
  EXPECT_THROW(validate_spec({{}, {{{0, 0}, {-1, 1}}}, true}), std::invalid_argument);
}

TEST(Validation, RejectsDuplicates) {
  EXPECT_THROW(validate_spec({{{1, 1}, {1, 1}}, {}, true}), std::invalid_argument);
  EXPECT_THROW(validate_spec({{}, {{{0, 0}, {1, 0}}, {{0, 0}, {1, 0}}}, true}), std::invalid_argument);
  EXPECT_NO_THROW(validate_spec(catalog::mixed_stride_spec()));
}

TEST(Enumerate, LexicographicWithinTruncation) {
  const auto members = enumerate_truncated(catalog::full_grid_spec(), 2);
  const std::vector<ExponentPair> expect = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}};
  EXPECT_EQ(members, expect);
  EXPECT_TRUE(std::is_sorted(members.begin(), members.end()));
}

TEST(Enumerate, OverlappingGeneratorsListedOnce) {
  const auto members = enumerate_truncated(catalog::even_difference_spec(), 4);
  const std::vector<ExponentPair> expect = {{0, 0}, {0, 2}, {0, 4}, {2, 0}, {4, 0}};
  EXPECT_EQ(members, expect);
}

TEST(DifferenceProfile, FullGrid) {
  const auto p = difference_profile(catalog::full_grid_spec());
  EXPECT_EQ(p.isolated, (std::set<std::int64_t>{0}));  // the origin point
  const std::vector<std::pair<std::int64_t, std::int64_t>> expect = {{0, -1}, {0, 1}};
  EXPECT_EQ(p.progressions, expect);
}

TEST(DifferenceProfile, FullGridWithoutOriginPoint) {
  const ExponentSetSpec spec{{}, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}}, true};
  const auto p = difference_profile(spec);
  EXPECT_TRUE(p.isolated.empty());
  EXPECT_EQ(p.progressions.size(), 2U);
}

TEST(DifferenceProfile, Diagonal) {
  const auto p = difference_profile(catalog::diagonal_spec());
  EXPECT_EQ(p.isolated, (std::set<std::int64_t>{0}));
  EXPECT_TRUE(p.progressions.empty());
}

TEST(DifferenceProfile, OddAxis) {
  const auto p = difference_profile({{}, {{{1, 0}, {2, 0}}}, true});
  const std::vector<std::pair<std::int64_t, std::int64_t>> expect = {{1, 2}};
  EXPECT_EQ(p.progressions, expect);
}

TEST(EffectiveModulus, Lcm) {
  EXPECT_EQ(effective_modulus({{}, {{0, 2}, {1, 3}}}), 6);
  EXPECT_EQ(effective_modulus({{5}, {}}), 1);
  EXPECT_EQ(effective_modulus({{}, {{0, 4}, {0, -6}}}), 12);
}

TEST(EffectiveModulus, OverflowGuard) {
  DifferenceProfile p;
  for (const std::int64_t prime : {101, 103, 107, 109}) p.progressions.emplace_back(0, prime);
  EXPECT_THROW((void)effective_modulus(p), std::overflow_error);
}

TEST(ResidueCoverage, FullGridModFive) {
  EXPECT_EQ(residue_coverage(difference_profile(catalog::full_grid_spec()), 5),
            (std::set<std::int64_t>{0, 1, 2, 3, 4}));
}

TEST(ResidueCoverage, DiagonalModOneIsEmpty) {
  EXPECT_TRUE(residue_coverage(difference_profile(catalog::diagonal_spec()), 1).empty());
  // brute enumeration agrees: the diagonal's value set is {0}
  EXPECT_TRUE(hpdk::testing::brute_coverage(catalog::diagonal_spec(), 1).empty());
}

TEST(ResidueCoverage, OddProgressionModTwo) {
  EXPECT_EQ(residue_coverage({{}, {{1, 2}}}, 2), (std::set<std::int64_t>{1}));
}

TEST(ResidueCoverage, NegativeOffsetsUseFloorMod) {
  EXPECT_EQ(residue_coverage({{}, {{-1, -3}}}, 3), (std::set<std::int64_t>{2}));
  EXPECT_THROW((void)residue_coverage({}, 0), std::invalid_argument);
}

TEST(Criterion, FullGridHolds) {
  const auto v = check_strict_criterion(catalog::full_grid_spec());
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.effective_modulus, 1);
  EXPECT_FALSE(v.failing_class);
  EXPECT_FALSE(v.origin_missing);
}

TEST(Criterion, DiagonalFailsAtOneZero) {
  const auto v = check_strict_criterion(catalog::diagonal_spec());
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.failing_class);
  EXPECT_EQ(*v.failing_class, (ResidueClass{1, 0}));
  EXPECT_FALSE(v.origin_missing);
}

TEST(Criterion, EvenDifferencesFailAtTwoOne) {
  const auto v = check_strict_criterion(catalog::even_difference_spec());
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.failing_class);
  EXPECT_EQ(*v.failing_class, (ResidueClass{2, 1}));
  EXPECT_EQ(hpdk::testing::brute_coverage(catalog::even_difference_spec(), 2), (std::set<std::int64_t>{0}));
}

TEST(Criterion, MixedStridesHoldModSix) {
  const auto v = check_strict_criterion(catalog::mixed_stride_spec());
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.effective_modulus, 6);
  for (std::int64_t p = 1; p <= 60; ++p) {
    EXPECT_EQ(hpdk::testing::brute_coverage(catalog::mixed_stride_spec(), p).size(), static_cast<std::size_t>(p));
  }
}

TEST(Criterion, MissingOrigin) {
  ExponentSetSpec spec{{}, {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}}, true};
  auto v = check_strict_criterion(spec);
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.origin_missing);
  EXPECT_FALSE(v.failing_class);
  spec.require_origin = false;  // unit sphere
  v = check_strict_criterion(spec);
  EXPECT_TRUE(v.holds);
}

TEST(Criterion, SphereModeKeepsCoverageFailure) {
  ExponentSetSpec spec = catalog::diagonal_spec();
  spec.require_origin = false;
  const auto v = check_strict_criterion(spec);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(*v.failing_class, (ResidueClass{1, 0}));
}

TEST(Criterion, OnlyIsolatedValuesFailAtOneZero) {
  const auto v = check_strict_criterion({{{0, 0}, {3, 1}}, {{{2, 2}, {1, 1}}}, true});
  EXPECT_EQ(*v.failing_class, (ResidueClass{1, 0}));
  EXPECT_EQ(v.effective_modulus, 1);
}

TEST(Criterion, SmallestFailingModulusIsReported) {
  // strides 4 and 6 with offsets 0: residues mod 2 are {0} only
  const auto v = check_strict_criterion({{{0, 0}}, {{{0, 0}, {4, 0}}, {{0, 0}, {0, 6}}}, true});
  EXPECT_EQ(v.effective_modulus, 12);
  EXPECT_EQ(*v.failing_class, (ResidueClass{2, 1}));
}

TEST(Criterion, FailureOnlyAtTheFullModulus) {
  // stride 3 cosets 0 and 1 plus stride 6 coset 5: every residue mod 2 and
  // mod 3 is covered, but 2 mod 6 is not
  const auto v = check_strict_criterion(
      {{{0, 0}}, {{{0, 0}, {3, 0}}, {{1, 0}, {3, 0}}, {{5, 0}, {6, 0}}}, true});
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(*v.failing_class, (ResidueClass{6, 2}));
}

TEST(ClassDifferences, ListsFiniteClass) {
  const ExponentSetSpec spec{{{0, 0}, {5, 0}, {1, 0}, {3, 0}}, {{{0, 0}, {2, 0}}}, true};
  const auto profile = difference_profile(spec);
  EXPECT_EQ(class_differences(profile, {2, 1}), (std::vector<std::int64_t>{1, 3, 5}));
  EXPECT_THROW((void)class_differences(profile, {2, 0}), std::invalid_argument);
  EXPECT_THROW((void)class_differences(profile, {2, 2}), std::invalid_argument);
}

TEST(CriterionProperties, FormulaMatchesBruteCoverage) {
  hpdk::testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto spec = hpdk::testing::random_spec(rng);
    const auto profile = difference_profile(spec);
    for (std::int64_t p = 1; p <= 64; ++p) {
      ASSERT_EQ(residue_coverage(profile, p), hpdk::testing::brute_coverage(spec, p)) << "spec " << i << " p " << p;
    }
  }
}

TEST(CriterionProperties, ReductionMatchesScanToFourPStar) {
  hpdk::testing::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto spec = hpdk::testing::random_spec(rng);
    const auto v = check_strict_criterion(spec);
    const auto brute = hpdk::testing::brute_verdict(spec, 4 * v.effective_modulus);
    EXPECT_EQ(v.holds, brute.holds) << i;
    EXPECT_EQ(v.failing_class, brute.failing_class) << i;
    EXPECT_EQ(v.origin_missing, brute.origin_missing) << i;
  }
}

TEST(CriterionProperties, PermutationAndDuplicateFamilyInvariance) {
  hpdk::testing::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto spec = hpdk::testing::random_spec(rng);
    const bool holds = check_strict_criterion(spec).holds;
    auto other = spec;
    std::reverse(other.points.begin(), other.points.end());
    std::shuffle(other.families.begin(), other.families.end(), rng);
    EXPECT_EQ(check_strict_criterion(other).holds, holds);
    if (!other.families.empty()) {
      other.families.push_back(other.families.back());
      EXPECT_EQ(check_strict_criterion(other).holds, holds);
    }
  }
}

TEST(CriterionProperties, MonotoneUnderAddingFamilies) {
  hpdk::testing::Rng rng(14);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto spec = hpdk::testing::random_spec(rng);
    if (!check_strict_criterion(spec).holds) continue;
    ++checked;
    spec.families.push_back({{hpdk::testing::uniform_int(rng, 0, 5), hpdk::testing::uniform_int(rng, 0, 5)},
                             {hpdk::testing::uniform_int(rng, 0, 4), hpdk::testing::uniform_int(rng, 1, 4)}});
    EXPECT_TRUE(check_strict_criterion(spec).holds);
  }
  EXPECT_GT(checked, 10);
}
