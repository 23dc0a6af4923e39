#include "hpdk/linalg.hpp"
#include "hpdk/testing.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hpdk;

namespace {

const complex I(0.0, 1.0);

}  // namespace

TEST(HermitianEigen, Diagonal) {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  const auto s = hermitian_eigen(a, 1e-12);
  ASSERT_EQ(s.eigenvalues.size(), 3U);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[2], 3.0, 1e-14);
  EXPECT_DOUBLE_EQ(s.scale, 3.0);
}

TEST(HermitianEigen, AllOnes) {
  for (int n = 1; n <= 6; ++n) {
    const auto s = hermitian_eigen(CMatrix::Ones(n, n), 1e-12);
    for (int i = 0; i + 1 < n; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], 0.0, 1e-13);
    EXPECT_NEAR(s.eigenvalues.back(), n, 1e-13);
  }
}

TEST(HermitianEigen, TwoByTwoComplex) {
  // characteristic polynomial x^2 - 4x + 3
  CMatrix a(2, 2);
  a << 2.0, I, -I, 2.0;
  const auto s = hermitian_eigen(a, 1e-12);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 3.0, 1e-12);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  CMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW((void)hermitian_eigen(a, 1e-10), contract_violation);
}

TEST(HermitianEigen, ResidualOnRandomMatrices) {
  hpdk::testing::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = hpdk::testing::uniform_int(rng, 1, 64);
    CMatrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) b(i, j) = hpdk::testing::gaussian_complex(rng);
    const CMatrix a = b + b.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    const double scale = max_abs_row_sum(a);
    const double residual = (a * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal()).cwiseAbs().maxCoeff();
    EXPECT_LE(residual, 1e-12 * scale * static_cast<double>(n));
    const auto s = hermitian_eigen(a, 1e-12);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], es.eigenvalues()[i], 1e-12 * scale);
  }
}

TEST(RankFactor, Identity) {
  const auto f = rank_factor(CMatrix::Identity(2, 2), 1e-12);
  EXPECT_EQ(f.rank, 2);
  EXPECT_LE((f.factor.transpose() * f.factor.conjugate() - CMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(RankFactor, AllOnesIsRowOfOnes) {
  const auto f = rank_factor(CMatrix::Ones(3, 3), 1e-12);
  ASSERT_EQ(f.rank, 1);
  // phase-normalized: the row is exactly (1, 1, 1) up to rounding
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(f.factor(0, j) - complex(1.0, 0.0)), 0.0, 1e-14);
}

TEST(RankFactor, OuterProductIsRankOne) {
  hpdk::testing::Rng rng(2);
  const CVector z = hpdk::testing::random_unit_vector(rng, 5) * 3.0;
  const auto f = rank_factor(z * z.adjoint(), 1e-12);
  EXPECT_EQ(f.rank, 1);
}

TEST(RankFactor, ClampsSmallNegativeRejectsLarge) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1e-14;
  EXPECT_EQ(rank_factor(a, 1e-12).rank, 1);
  a(1, 1) = -1e-3;
  EXPECT_THROW((void)rank_factor(a, 1e-12), contract_violation);
}

TEST(RankFactor, RandomPsdReconstruction) {
  hpdk::testing::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = hpdk::testing::uniform_int(rng, 1, 16);
    const auto r = hpdk::testing::uniform_int(rng, 1, n);
    const CMatrix a = hpdk::testing::random_psd(rng, n, r);
    const auto f = rank_factor(a, 1e-10);
    const double scale = max_abs_row_sum(a);
    EXPECT_EQ(f.rank, r);
    EXPECT_LE(max_abs_row_sum(a - f.factor.transpose() * f.factor.conjugate()), 1e-12 * scale);
  }
}

TEST(NullspaceVector, OneByTwo) {
  CMatrix m(1, 2);
  m << 1.0, 1.0;
  const auto c = nullspace_vector(m, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_NEAR(std::abs((*c)[0] - complex(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs((*c)[1] + complex(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-15);
}

TEST(NullspaceVector, IdentityHasNone) { EXPECT_FALSE(nullspace_vector(CMatrix::Identity(4, 4), 1e-12)); }

TEST(NullspaceVector, UnderdeterminedVandermonde) {
  const std::vector<double> nodes = {0.3, 1.7, 4.0};
  CMatrix m(2, 3);
  for (Eigen::Index row = 0; row < 2; ++row)
    for (Eigen::Index j = 0; j < 3; ++j) m(row, j) = std::polar(1.0, static_cast<double>(row) * nodes[static_cast<std::size_t>(j)]);
  const auto c = nullspace_vector(m, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->norm(), 1.0, 1e-14);
  EXPECT_LE((m * *c).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT((*c)[0].real(), 0.0);
}

TEST(NullspaceVector, NoRowsGivesFirstUnitVector) {
  const auto c = nullspace_vector(CMatrix(0, 3), 1e-12);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, CVector::Unit(3, 0));
}

TEST(NullspaceVector, AppendingWitnessRaisesRankByOne) {
  hpdk::testing::Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = hpdk::testing::uniform_int(rng, 1, 6);
    const auto cols = rows + hpdk::testing::uniform_int(rng, 1, 4);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = hpdk::testing::gaussian_complex(rng);
    const auto c = nullspace_vector(m, 1e-12);
    ASSERT_TRUE(c);
    CMatrix stacked(rows + 1, cols);
    stacked << m, c->adjoint();
    EXPECT_EQ(numerical_rank(stacked, 1e-12), numerical_rank(m, 1e-12) + 1);
  }
}

TEST(UnitaryComplete, FirstBasisVectorGivesIdentity) {
  const CMatrix u = unitary_complete(CVector::Unit(4, 0));
  EXPECT_LE((u - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(UnitaryComplete, TwoDimensional) {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const CMatrix u = unitary_complete(v);
  EXPECT_LE((u.row(0).transpose() - v).norm(), 1e-15);
  // second row is (1, -1)/sqrt 2 up to phase; phase normalization fixes it
  EXPECT_NEAR(std::abs(u(1, 0) - complex(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) + complex(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-15);
}

TEST(UnitaryComplete, RandomVectors) {
  hpdk::testing::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = hpdk::testing::uniform_int(rng, 1, 16);
    const CVector v = hpdk::testing::random_unit_vector(rng, m);
    const CMatrix u = unitary_complete(v);
    EXPECT_LE((u * u.adjoint() - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(CVector(u.row(0).transpose()), v);
  }
}

TEST(UnitaryComplete, RejectsNonUnit) {
  EXPECT_THROW((void)unitary_complete(CVector::Ones(3)), std::invalid_argument);
  EXPECT_THROW((void)unitary_complete(CVector(0)), std::invalid_argument);
}

TEST(NumericalRank, UsesRowSumScale) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-11;
  EXPECT_EQ(numerical_rank(m, 1e-10), 1);
  EXPECT_EQ(numerical_rank(m, 1e-12), 2);
}
