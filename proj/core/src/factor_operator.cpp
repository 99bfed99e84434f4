#include "potentialforge/factor_operator.hpp"

#include <algorithm>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

std::size_t product(std::span<const std::size_t> xs, std::size_t begin,
                    std::size_t end) {
  std::size_t p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= xs[i];
  return p;
}

// Sums mode `mode` of a row-major tensor with the given shape.
std::vector<double> reduce_mode(const std::vector<double>& cur,
                                std::span<const std::size_t> shape,
                                std::size_t mode) {
  const std::size_t outer = product(shape, 0, mode);
  const std::size_t k = shape[mode];
  const std::size_t inner = product(shape, mode + 1, shape.size());
  std::vector<double> out(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    double* dst = out.data() + o * inner;
    const double* src = cur.data() + o * k * inner;
    for (std::size_t a = 0; a < k; ++a) {
      const double* row = src + a * inner;
      for (std::size_t in = 0; in < inner; ++in) dst[in] += row[in];
    }
  }
  return out;
}

// Replicates a singleton mode `mode` k times.
std::vector<double> replicate_mode(const std::vector<double>& cur,
                                   std::span<const std::size_t> shape,
                                   std::size_t mode, std::size_t k) {
  const std::size_t outer = product(shape, 0, mode);
  const std::size_t inner = product(shape, mode + 1, shape.size());
  std::vector<double> out(outer * k * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* src = cur.data() + o * inner;
    double* dst = out.data() + o * k * inner;
    for (std::size_t a = 0; a < k; ++a) {
      std::copy(src, src + inner, dst + a * inner);
    }
  }
  return out;
}

}  // namespace

FactorOperator::FactorOperator(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  const std::size_t cap = Limits::defaults().max_vector;
  for (const Factor& f : factors_) {
    if (f.size == 0) throw LengthMismatch("factor of size 0");
    rows_ = checked_mul(rows_, f.rows(), cap);
    cols_ = checked_mul(cols_, f.cols(), cap);
  }
}

FactorOperator FactorOperator::drawing(const Dims& d,
                                       std::span<const PlayerId> players_in_u) {
  std::vector<Factor> factors;
  factors.reserve(d.players());
  for (PlayerId j = 0; j < d.players(); ++j) {
    const bool in_u = std::binary_search(players_in_u.begin(),
                                         players_in_u.end(), j);
    factors.push_back(
        {in_u ? FactorKind::kIdentity : FactorKind::kOnesRow,
         d.cardinality(j)});
  }
  return FactorOperator(std::move(factors));
}

FactorOperator FactorOperator::transpose() const {
  std::vector<Factor> t = factors_;
  for (Factor& f : t) {
    if (f.kind == FactorKind::kOnesRow) {
      f.kind = FactorKind::kOnesColumn;
    } else if (f.kind == FactorKind::kOnesColumn) {
      f.kind = FactorKind::kOnesRow;
    }
  }
  return FactorOperator(std::move(t));
}

std::vector<double> FactorOperator::apply(std::span<const double> v,
                                          ApplyStats* stats) const {
  if (v.size() != cols_) {
    throw LengthMismatch("operator has " + std::to_string(cols_) +
                         " columns, vector has length " +
                         std::to_string(v.size()));
  }
  std::vector<std::size_t> shape;
  shape.reserve(factors_.size());
  for (const Factor& f : factors_) shape.push_back(f.cols());

  std::vector<double> cur(v.begin(), v.end());
  std::size_t ops = 0;
  for (std::size_t m = 0; m < factors_.size(); ++m) {
    if (factors_[m].kind != FactorKind::kOnesRow) continue;
    ops += cur.size();
    cur = reduce_mode(cur, shape, m);
    shape[m] = 1;
  }
  for (std::size_t m = 0; m < factors_.size(); ++m) {
    if (factors_[m].kind != FactorKind::kOnesColumn) continue;
    cur = replicate_mode(cur, shape, m, factors_[m].size);
    shape[m] = factors_[m].size;
    ops += cur.size();
  }
  if (stats != nullptr) stats->operations += ops;
  return cur;
}

std::vector<double> FactorOperator::apply_transpose(std::span<const double> w,
                                                    ApplyStats* stats) const {
  if (w.size() != rows_) {
    throw LengthMismatch("operator has " + std::to_string(rows_) +
                         " rows, vector has length " +
                         std::to_string(w.size()));
  }
  return transpose().apply(w, stats);
}

DenseMatrix FactorOperator::materialize(const Limits& limits) const {
  DenseMatrix m(1, 1, std::vector<double>{1.0});
  for (const Factor& f : factors_) {
    DenseMatrix factor(f.rows(), f.cols(), limits);
    for (std::size_t r = 0; r < f.rows(); ++r) {
      for (std::size_t c = 0; c < f.cols(); ++c) {
        factor(r, c) = (f.kind == FactorKind::kIdentity && r != c) ? 0.0 : 1.0;
      }
    }
    m = kron(m, factor, limits);
  }
  return m;
}

}  // namespace potentialforge
