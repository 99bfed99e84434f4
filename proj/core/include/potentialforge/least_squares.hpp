#pragma once

// Minimum-norm least-squares solvers: a matrix-free conjugate-gradient
// iteration on the normal equations, and a dense SVD route used both for
// small systems and as the reference for the iterative one.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "potentialforge/stp.hpp"

namespace potentialforge {

struct LinearOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<std::vector<double>(std::span<const double>)> apply;
  std::function<std::vector<double>(std::span<const double>)> apply_transpose;
};

struct LeastSquaresResult {
  std::vector<double> x;
  double residual_norm = 0.0;         // ||A x - b||
  double normal_residual_norm = 0.0;  // ||A^T (A x - b)||
  std::size_t iterations = 0;
};

struct CglsOptions {
  std::size_t max_iterations = 1000;
  // Stop once ||A^T r|| <= tolerance * ||A^T b||.
  double tolerance = 1e-12;
};

// CGLS started from x = 0. Iterates stay in the row space of A, so the limit
// is the minimum-norm least-squares solution. Throws SolverFailure if the
// tolerance is not met within max_iterations.
LeastSquaresResult cgls_min_norm(const LinearOperator& a,
                                 std::span<const double> b,
                                 const CglsOptions& options = {});

// Pseudoinverse solution via a thin SVD; singular values at or below
// max(rows, cols) * eps * sigma_max are treated as zero.
LeastSquaresResult svd_min_norm(const DenseMatrix& a, std::span<const double> b);

// Singular values in decreasing order.
std::vector<double> singular_values(const DenseMatrix& a);

// Number of singular values above max(rows, cols) * eps * sigma_max.
std::size_t numeric_rank(const DenseMatrix& a);

double norm2(std::span<const double> v);

}  // namespace potentialforge
