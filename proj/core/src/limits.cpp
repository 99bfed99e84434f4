#include "potentialforge/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

Limits Limits::from_environment() {
  Limits limits;
  const char* raw = std::getenv("POTENTIALFORGE_MAX_MATERIALIZE");
  if (raw == nullptr) return limits;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec == std::errc() && ptr == end && value > 0) {
    limits.max_materialize = value;
  }
  return limits;
}

std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw DimensionOverflow("size product overflows std::size_t");
  }
  const std::size_t product = a * b;
  if (product > cap) {
    throw DimensionOverflow("size " + std::to_string(product) +
                            " exceeds cap " + std::to_string(cap));
  }
  return product;
}

}  // namespace potentialforge
