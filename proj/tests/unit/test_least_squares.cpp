#include <gtest/gtest.h>

#include <random>

#include "potentialforge/error.hpp"
#include "potentialforge/least_squares.hpp"
#include "support.hpp"

using namespace potentialforge;

namespace {

LinearOperator dense_operator(const DenseMatrix& m) {
  return {m.rows(), m.cols(),
          [&m](std::span<const double> v) { return multiply(m, v); },
          [&m](std::span<const double> w) {
            return multiply(m.transpose(), w);
          }};
}

}  // namespace

TEST(LeastSquares, ConsistentRankDeficientSystem) {
  // Columns 1 and 2 are equal, so the min-norm solution splits evenly.
  const DenseMatrix a(3, 3, {1, 1, 0,  //
                             1, 1, 1,  //
                             0, 0, 1});
  const std::vector<double> b{2, 5, 3};
  const LeastSquaresResult svd = svd_min_norm(a, b);
  ASSERT_EQ(svd.x.size(), 3u);
  EXPECT_NEAR(svd.x[0], 1.0, 1e-12);
  EXPECT_NEAR(svd.x[1], 1.0, 1e-12);
  EXPECT_NEAR(svd.x[2], 3.0, 1e-12);
  EXPECT_LE(svd.residual_norm, 1e-12);

  const LeastSquaresResult cg = cgls_min_norm(dense_operator(a), b);
  EXPECT_LE(pf_test::max_abs_diff(cg.x, svd.x), 1e-10);
}

TEST(LeastSquares, InconsistentSystemResidual) {
  // x = b projected: min ||[1;1] x - [0;2]|| at x = 1, residual sqrt(2).
  const DenseMatrix a(2, 1, {1, 1});
  const std::vector<double> b{0, 2};
  const LeastSquaresResult r = svd_min_norm(a, b);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.residual_norm, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.normal_residual_norm, 0.0, 1e-12);
}

TEST(LeastSquares, CglsMatchesSvdOnRandomWideSystems) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t rows = 12, cols = 20;
    // Rank 6 via a product of thin factors.
    const DenseMatrix l(rows, 6, pf_test::random_vector(gen, rows * 6));
    const DenseMatrix r(6, cols, pf_test::random_vector(gen, 6 * cols));
    const DenseMatrix a = multiply(l, r);
    const std::vector<double> b = pf_test::random_vector(gen, rows);
    const LeastSquaresResult s = svd_min_norm(a, b);
    CglsOptions opt;
    opt.max_iterations = 500;
    const LeastSquaresResult c = cgls_min_norm(dense_operator(a), b, opt);
    EXPECT_LE(pf_test::max_abs_diff(c.x, s.x), 1e-8);
    EXPECT_NEAR(c.residual_norm, s.residual_norm, 1e-8);
    EXPECT_EQ(numeric_rank(a), 6u);
  }
}

TEST(LeastSquares, CglsFailureCarriesResidual) {
  std::mt19937_64 gen(1);
  const DenseMatrix a(30, 30, pf_test::random_vector(gen, 900));
  const std::vector<double> b = pf_test::random_vector(gen, 30);
  CglsOptions opt;
  opt.max_iterations = 1;
  try {
    cgls_min_norm(dense_operator(a), b, opt);
    FAIL() << "expected SolverFailure";
  } catch (const SolverFailure& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(LeastSquares, ZeroRightHandSide) {
  const DenseMatrix a = DenseMatrix::identity(3);
  const LeastSquaresResult r = cgls_min_norm(dense_operator(a), std::vector<double>(3));
  EXPECT_EQ(r.x, std::vector<double>(3, 0.0));
  EXPECT_EQ(r.iterations, 0u);
}

TEST(LeastSquares, LengthMismatch) {
  const DenseMatrix a = DenseMatrix::identity(3);
  EXPECT_THROW(svd_min_norm(a, std::vector<double>(2)), LengthMismatch);
  EXPECT_THROW(cgls_min_norm(dense_operator(a), std::vector<double>(2)),
               LengthMismatch);
}

TEST(LeastSquares, SingularValuesDecreasing) {
  const DenseMatrix a(2, 2, {3, 0, 0, 4});
  const std::vector<double> s = singular_values(a);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 4.0, 1e-12);
  EXPECT_NEAR(s[1], 3.0, 1e-12);
}
