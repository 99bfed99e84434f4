#include "potentialforge/least_squares.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> as_eigen(const DenseMatrix& a) {
  return {a.entries().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double rank_threshold(const DenseMatrix& a, double sigma_max) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

}  // namespace

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

LeastSquaresResult cgls_min_norm(const LinearOperator& a,
                                 std::span<const double> b,
                                 const CglsOptions& options) {
  if (b.size() != a.rows) {
    throw LengthMismatch("right-hand side length " + std::to_string(b.size()) +
                         " != operator rows " + std::to_string(a.rows));
  }
  LeastSquaresResult out;
  out.x.assign(a.cols, 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> s = a.apply_transpose(r);
  const double target = options.tolerance * norm2(s);
  double gamma = dot(s, s);
  out.residual_norm = norm2(r);
  out.normal_residual_norm = std::sqrt(gamma);
  if (gamma == 0.0) return out;

  std::vector<double> p = s;
  while (out.iterations < options.max_iterations) {
    const std::vector<double> q = a.apply(p);
    const double qq = dot(q, q);
    if (qq == 0.0) break;
    const double alpha = gamma / qq;
    for (std::size_t j = 0; j < out.x.size(); ++j) out.x[j] += alpha * p[j];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    s = a.apply_transpose(r);
    const double gamma_next = dot(s, s);
    ++out.iterations;
    out.residual_norm = norm2(r);
    out.normal_residual_norm = std::sqrt(gamma_next);
    if (out.normal_residual_norm <= target) return out;
    const double beta = gamma_next / gamma;
    gamma = gamma_next;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = s[j] + beta * p[j];
  }
  if (out.normal_residual_norm <= target) return out;
  throw SolverFailure("CGLS did not reach normal residual " +
                          std::to_string(target) + " in " +
                          std::to_string(out.iterations) + " iterations",
                      out.residual_norm);
}

LeastSquaresResult svd_min_norm(const DenseMatrix& a,
                                std::span<const double> b) {
  if (b.size() != a.rows()) {
    throw LengthMismatch("right-hand side length " + std::to_string(b.size()) +
                         " != matrix rows " + std::to_string(a.rows()));
  }
  const Eigen::MatrixXd m = as_eigen(a);
  // BDCSVD in Eigen 3.4.0 returns wrong factors on some of the 0/1 design
  // matrices (repeated singular values); Jacobi is slower but reliable.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff =
      rank_threshold(a, sigma.size() > 0 ? sigma(0) : 0.0);
  const Eigen::Map<const Eigen::VectorXd> rhs(
      b.data(), static_cast<Eigen::Index>(b.size()));

  Eigen::VectorXd coeff = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    coeff(i) = sigma(i) > cutoff ? coeff(i) / sigma(i) : 0.0;
  }
  const Eigen::VectorXd x = svd.matrixV() * coeff;
  const Eigen::VectorXd r = m * x - rhs;

  LeastSquaresResult out;
  out.x.assign(x.data(), x.data() + x.size());
  out.residual_norm = r.norm();
  out.normal_residual_norm = (m.transpose() * r).norm();
  return out;
}

std::vector<double> singular_values(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  const Eigen::MatrixXd m = as_eigen(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sigma = svd.singularValues();
  return {sigma.data(), sigma.data() + sigma.size()};
}

std::size_t numeric_rank(const DenseMatrix& a) {
  const std::vector<double> sigma = singular_values(a);
  if (sigma.empty()) return 0;
  const double cutoff = rank_threshold(a, sigma.front());
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(),
                    [cutoff](double s) { return s > cutoff; }));
}

}  // namespace potentialforge
