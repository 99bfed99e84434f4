#pragma once

// Matrix-free Kronecker products of identity, ones-column and ones-row
// factors. Every drawing matrix of the design equations has this shape, so
// none of them is ever stored as 0/1 entries.

#include <cstddef>
#include <span>
#include <vector>

#include "potentialforge/limits.hpp"
#include "potentialforge/stp.hpp"

namespace potentialforge {

enum class FactorKind {
  kIdentity,    // I_k       (k x k)
  kOnesColumn,  // 1_k       (k x 1): replicate
  kOnesRow,     // 1_k^T     (1 x k): sum
};

struct Factor {
  FactorKind kind;
  std::size_t size;

  std::size_t rows() const noexcept {
    return kind == FactorKind::kOnesRow ? 1 : size;
  }
  std::size_t cols() const noexcept {
    return kind == FactorKind::kOnesColumn ? 1 : size;
  }
  bool operator==(const Factor&) const = default;
};

// Counts scalar reads+writes performed by apply(); used to check the linear
// cost of the kernel.
struct ApplyStats {
  std::size_t operations = 0;
};

class FactorOperator {
 public:
  FactorOperator() = default;
  explicit FactorOperator(std::vector<Factor> factors);

  // Drawing matrix Gamma_U over all players of `d`: I_{k_j} for j in U,
  // 1_{k_j}^T otherwise. `players_in_u` must be sorted.
  static FactorOperator drawing(const Dims& d,
                                std::span<const PlayerId> players_in_u);

  std::span<const Factor> factors() const noexcept { return factors_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  // Factor-wise transpose: ones-rows and ones-columns swap.
  FactorOperator transpose() const;

  // op * v by index arithmetic. All ones-row reductions run before any
  // ones-column replication, so the cost stays within 2*cols + 2*rows.
  std::vector<double> apply(std::span<const double> v,
                            ApplyStats* stats = nullptr) const;
  // op^T * w; equivalent to transpose().apply(w).
  std::vector<double> apply_transpose(std::span<const double> w,
                                      ApplyStats* stats = nullptr) const;

  // Explicit Kronecker product. Throws DimensionOverflow above the cap.
  DenseMatrix materialize(const Limits& limits = Limits::defaults()) const;

  bool operator==(const FactorOperator&) const = default;

 private:
  std::vector<Factor> factors_;
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
};

}  // namespace potentialforge
