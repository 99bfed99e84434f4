#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace potentialforge {

// Reproducible random source for the learning dynamics.
//
// Stream layout: stream s of seed m is a std::mt19937_64 seeded with
// splitmix64(m ^ splitmix64(s)). Replica r of a simulation uses stream r.
// Uniform variates take the top 53 bits of one engine output, so results
// are bit-identical on every conforming platform (no std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform in [0, 1); consumes one engine output.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform in {0, ..., n-1}; consumes one engine output.
  std::size_t below(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace potentialforge
