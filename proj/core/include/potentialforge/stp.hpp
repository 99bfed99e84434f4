#pragma once

// Strategy-profile spaces, their lexicographic indexing, and the
// semi-tensor product of dense matrices.
//
// All indices in the C++ API are zero-based: player j is 0..n-1, strategy
// x_j is 0..k_j-1, and a profile maps to 0..k-1. The basis vector delta_k^i
// of the usual 1-based notation is column i-1 here. File formats convert to
// 1-based at the boundary.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "potentialforge/limits.hpp"

namespace potentialforge {

using PlayerId = std::size_t;
using Strategy = std::uint32_t;

// Strategy counts k_1..k_n with k = prod k_j. Every k_j >= 2.
class Dims {
 public:
  Dims() = default;
  explicit Dims(std::vector<std::size_t> cardinalities,
                const Limits& limits = Limits::defaults());
  Dims(std::initializer_list<std::size_t> cardinalities)
      : Dims(std::vector<std::size_t>(cardinalities)) {}

  std::size_t players() const noexcept { return cardinalities_.size(); }
  std::size_t cardinality(PlayerId j) const { return cardinalities_.at(j); }
  std::span<const std::size_t> cardinalities() const noexcept {
    return cardinalities_;
  }
  // k = prod_j k_j.
  std::size_t total() const noexcept { return total_; }
  // prod_{j in players} k_j; 1 for the empty set.
  std::size_t product(std::span<const PlayerId> players) const;

  bool operator==(const Dims&) const = default;

 private:
  std::vector<std::size_t> cardinalities_;
  std::size_t total_ = 1;
};

struct Profile {
  std::vector<Strategy> strategies;

  Profile() = default;
  explicit Profile(std::vector<Strategy> s) : strategies(std::move(s)) {}
  Profile(std::initializer_list<Strategy> s) : strategies(s) {}

  std::size_t size() const noexcept { return strategies.size(); }
  Strategy operator[](PlayerId j) const { return strategies[j]; }
  Strategy& operator[](PlayerId j) { return strategies[j]; }

  bool operator==(const Profile&) const = default;
};

// Throws InvalidProfile unless p has one in-range strategy per player.
void validate_profile(const Profile& p, const Dims& d);

// Lexicographic index with player 0 most significant, i.e. the unique i with
// delta_{k_1}^{x_1} |x ... |x delta_{k_n}^{x_n} = delta_k^i.
std::size_t profile_encode(const Profile& p, const Dims& d);

// Inverse of profile_encode. Throws InvalidProfile if index >= k.
Profile profile_decode(std::size_t index, const Dims& d);

// Maps full profiles to indices of the sub-profile space over a sorted
// player subset, using the same lexicographic rule restricted to the scope.
class ScopeIndexer {
 public:
  ScopeIndexer(const Dims& d, std::span<const PlayerId> scope);

  // prod_{j in scope} k_j.
  std::size_t size() const noexcept { return size_; }
  // Weight of player j's strategy in the scoped index; 0 outside the scope.
  std::size_t stride(PlayerId j) const { return strides_[j]; }
  // No validation; the caller guarantees p is valid for the dims.
  std::size_t index(const Profile& p) const noexcept {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < strides_.size(); ++j) {
      idx += strides_[j] * p.strategies[j];
    }
    return idx;
  }

 private:
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

class DenseMatrix {
 public:
  DenseMatrix() = default;
  // Zero matrix. Throws DimensionOverflow if rows*cols exceeds the cap.
  DenseMatrix(std::size_t rows, std::size_t cols,
              const Limits& limits = Limits::defaults());
  // Row-major entries; entries.size() must equal rows*cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::size_t rows, std::size_t cols,
              std::initializer_list<double> entries)
      : DenseMatrix(rows, cols, std::vector<double>(entries)) {}

  static DenseMatrix identity(std::size_t n);
  // Column basis vector delta_k^{i+1} (zero-based i).
  static DenseMatrix basis_column(std::size_t k, std::size_t i);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  std::span<const double> entries() const noexcept { return entries_; }

  DenseMatrix transpose() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Ordinary product; throws LengthMismatch if a.cols() != b.rows().
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> v);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b,
                 const Limits& limits = Limits::defaults());

// Semi-tensor product: (A (x) I_{l/n}) (B (x) I_{l/p}) with
// l = lcm(cols(A), rows(B)). Reduces to the ordinary product when the inner
// dimensions agree.
DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b,
                const Limits& limits = Limits::defaults());

}  // namespace potentialforge
