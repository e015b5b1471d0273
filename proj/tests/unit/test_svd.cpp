#include <algorithm>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "guamp/errors.hpp"
#include "guamp/model.hpp"
#include "guamp/svd.hpp"

using namespace guamp;

namespace {

void expect_invariants(const Matrix& A, const SvdFactors& f) {
  const Matrix I = Matrix::Identity(f.rank, f.rank);
  EXPECT_LE((f.U.transpose() * f.U - I).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((f.V.transpose() * f.V - I).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((f.U * f.sigma.asDiagonal() * f.V.transpose() - A).norm(), 1e-10 * A.norm());
  EXPECT_LE((f.Q - f.sigma.asDiagonal() * f.V.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  for (Index k = 1; k < f.rank; ++k) EXPECT_GE(f.sigma(k - 1), f.sigma(k));
  EXPECT_GT(f.sigma(f.rank - 1), 0.0);
}

}  // namespace

TEST(EconomySvd, Identity) {
  const Matrix A = Matrix::Identity(3, 3);
  const SvdFactors f = economy_svd(A);
  EXPECT_EQ(f.rank, 3);
  EXPECT_LE((f.sigma - Vector::Ones(3)).cwiseAbs().maxCoeff(), 1e-15);
  expect_invariants(A, f);
}

TEST(EconomySvd, RankDeficient) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 3.0;
  const SvdFactors f = economy_svd(A);
  EXPECT_EQ(f.rank, 1);
  EXPECT_NEAR(f.sigma(0), 3.0, 1e-15);
  EXPECT_EQ(f.U.cols(), 1);
  EXPECT_EQ(f.Q.rows(), 1);
}

TEST(EconomySvd, SingularValuesMatchGramEigenvalues) {
  Rng rng(2);
  Matrix A(8, 5);
  for (Index j = 0; j < 5; ++j) {
    for (Index i = 0; i < 8; ++i) A(i, j) = rng.normal();
  }
  const SvdFactors f = economy_svd(A);
  expect_invariants(A, f);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(A.transpose() * A);
  Vector expected = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(expected.data(), expected.data() + expected.size(), std::greater<>());
  ASSERT_EQ(f.rank, 5);
  EXPECT_LE((f.sigma - expected).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(EconomySvd, GeneratedProblemsReconstruct) {
  for (double rho : {0.0, 0.35, 0.9}) {
    Rng rng(13);
    const Matrix A = generate_correlated_matrix(120, 30, rho, rng);
    expect_invariants(A, economy_svd(A));
  }
}

TEST(EconomySvd, RejectsZeroAndNonFinite) {
  EXPECT_THROW(economy_svd(Matrix::Zero(3, 2)), InvalidParameter);
  Matrix A = Matrix::Identity(2, 2);
  A(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(economy_svd(A), NumericError);
}
