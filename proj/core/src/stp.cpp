#include "potentialforge/stp.hpp"

#include <numeric>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

Dims::Dims(std::vector<std::size_t> cardinalities, const Limits& limits)
    : cardinalities_(std::move(cardinalities)) {
  total_ = 1;
  for (std::size_t j = 0; j < cardinalities_.size(); ++j) {
    if (cardinalities_[j] < 2) {
      throw InvalidGame("player " + std::to_string(j + 1) +
                        " needs at least 2 strategies");
    }
    total_ = checked_mul(total_, cardinalities_[j], limits.max_vector);
  }
}

std::size_t Dims::product(std::span<const PlayerId> players) const {
  std::size_t p = 1;
  for (PlayerId j : players) p *= cardinalities_.at(j);
  return p;
}

void validate_profile(const Profile& p, const Dims& d) {
  if (p.size() != d.players()) {
    throw InvalidProfile("profile has " + std::to_string(p.size()) +
                         " strategies, game has " +
                         std::to_string(d.players()) + " players");
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] >= d.cardinality(j)) {
      throw InvalidProfile("strategy " + std::to_string(p[j] + 1) +
                           " of player " + std::to_string(j + 1) +
                           " out of range 1.." +
                           std::to_string(d.cardinality(j)));
    }
  }
}

std::size_t profile_encode(const Profile& p, const Dims& d) {
  validate_profile(p, d);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    idx = idx * d.cardinality(j) + p[j];
  }
  return idx;
}

Profile profile_decode(std::size_t index, const Dims& d) {
  if (index >= d.total()) {
    throw InvalidProfile("profile index " + std::to_string(index + 1) +
                         " out of range 1.." + std::to_string(d.total()));
  }
  Profile p;
  p.strategies.resize(d.players());
  for (std::size_t j = d.players(); j-- > 0;) {
    const std::size_t k = d.cardinality(j);
    p[j] = static_cast<Strategy>(index % k);
    index /= k;
  }
  return p;
}

ScopeIndexer::ScopeIndexer(const Dims& d, std::span<const PlayerId> scope)
    : strides_(d.players(), 0) {
  for (std::size_t pos = scope.size(); pos-- > 0;) {
    const PlayerId j = scope[pos];
    if (j >= d.players()) {
      throw InvalidGame("scope player " + std::to_string(j + 1) +
                        " out of range");
    }
    strides_[j] = size_;
    size_ *= d.cardinality(j);
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         const Limits& limits)
    : rows_(rows),
      cols_(cols),
      entries_(checked_mul(rows, cols, limits.max_materialize), 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw LengthMismatch("matrix entries length " +
                         std::to_string(entries_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::basis_column(std::size_t k, std::size_t i) {
  if (i >= k) throw InvalidProfile("basis index out of range");
  DenseMatrix m(k, 1);
  m(i, 0) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw LengthMismatch("cannot multiply " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double x = a(i, l);
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(l, j);
    }
  }
  return c;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) {
    throw LengthMismatch("matrix has " + std::to_string(a.cols()) +
                         " columns, vector has length " +
                         std::to_string(v.size()));
  }
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b,
                 const Limits& limits) {
  const std::size_t rows = checked_mul(a.rows(), b.rows(), limits.max_vector);
  const std::size_t cols = checked_mul(a.cols(), b.cols(), limits.max_vector);
  DenseMatrix k(rows, cols, limits);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double x = a(i, j);
      if (x == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
        }
      }
    }
  }
  return k;
}

DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b,
                const Limits& limits) {
  if (a.cols() == 0 || b.rows() == 0) {
    throw LengthMismatch("semi-tensor product of an empty matrix");
  }
  if (a.cols() == b.rows()) return multiply(a, b);
  const std::size_t l = std::lcm(a.cols(), b.rows());
  const DenseMatrix left = kron(a, DenseMatrix::identity(l / a.cols()), limits);
  const DenseMatrix right =
      kron(b, DenseMatrix::identity(l / b.rows()), limits);
  return multiply(left, right);
}

}  // namespace potentialforge
