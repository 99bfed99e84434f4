#pragma once

#include <cstddef>

namespace potentialforge {

// Size caps. Anything that would exceed them throws DimensionOverflow
// instead of trying to allocate.
struct Limits {
  // Maximum number of entries in a materialized dense matrix.
  std::size_t max_materialize = std::size_t{1} << 24;
  // Maximum length of any dense vector (e.g. a lifted structure vector).
  std::size_t max_vector = std::size_t{1} << 31;

  static Limits defaults() { return {}; }

  // Defaults, with max_materialize overridden by the environment variable
  // POTENTIALFORGE_MAX_MATERIALIZE when it holds a positive integer.
  static Limits from_environment();
};

// Product a*b, throwing DimensionOverflow on std::size_t overflow or when the
// result exceeds `cap`.
std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap);

}  // namespace potentialforge
