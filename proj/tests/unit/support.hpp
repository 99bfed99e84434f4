#pragma once

// Helpers shared by the unit tests. The oracles here deliberately avoid the
// library's own indexing and lifting code.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "potentialforge/game.hpp"
#include "potentialforge/stp.hpp"

namespace pf_test {

using namespace potentialforge;

// All profiles of `d` in lexicographic order, player 0 most significant,
// built with a plain odometer.
inline std::vector<std::vector<Strategy>> all_profiles(
    const std::vector<std::size_t>& k) {
  std::vector<std::vector<Strategy>> out;
  std::vector<Strategy> x(k.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t j = k.size();
    while (j > 0) {
      --j;
      if (++x[j] < k[j]) break;
      x[j] = 0;
      if (j == 0) return out;
    }
    if (k.empty()) return out;
  }
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n,
                                         double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

// Random networked game: n players, 2..kmax strategies, each undirected
// edge present with probability p.
inline NetworkedGame random_game(std::mt19937_64& gen, std::size_t n,
                                 std::size_t kmax, double p = 0.5) {
  std::uniform_int_distribution<std::size_t> kd(2, kmax);
  std::bernoulli_distribution edge(p);
  std::vector<std::size_t> k(n);
  for (auto& c : k) c = kd(gen);
  std::vector<std::vector<PlayerId>> nb(n);
  for (PlayerId i = 0; i < n; ++i) {
    for (PlayerId j = i + 1; j < n; ++j) {
      if (edge(gen)) {
        nb[i].push_back(j);
        nb[j].push_back(i);
      }
    }
  }
  return NetworkedGame(Dims(k), nb);
}

inline NetworkedGame line_game(std::vector<std::size_t> k) {
  const std::size_t n = k.size();
  std::vector<std::vector<PlayerId>> nb(n);
  for (PlayerId i = 0; i + 1 < n; ++i) {
    nb[i].push_back(i + 1);
    nb[i + 1].push_back(i);
  }
  return NetworkedGame(Dims(std::move(k)), nb);
}

inline NetworkedGame ring_game(std::size_t n, std::size_t k) {
  std::vector<std::vector<PlayerId>> nb(n);
  for (PlayerId i = 0; i < n; ++i) {
    nb[i] = {(i + 1) % n, (i + n - 1) % n};
  }
  return NetworkedGame(Dims(std::vector<std::size_t>(n, k)), nb);
}

// Lexicographic index computed by hand, player 0 most significant.
inline std::size_t index_of(const std::vector<Strategy>& x,
                            const std::vector<std::size_t>& k) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < k.size(); ++j) idx = idx * k[j] + x[j];
  return idx;
}

// Sub-profile index over a sorted scope.
inline std::size_t scoped_index(const std::vector<Strategy>& x,
                                const std::vector<std::size_t>& k,
                                const std::vector<PlayerId>& scope) {
  std::size_t idx = 0;
  for (PlayerId j : scope) idx = idx * k[j] + x[j];
  return idx;
}

// Random potential game: random P plus per-player noise d_i(x^{-i}), so
// c_i = P + d_i has P as exact potential. Every player gets full
// information so arbitrary utilities are representable.
struct PotentialGame {
  NetworkedGame game;
  std::vector<double> potential;
};

inline PotentialGame random_potential_game(std::mt19937_64& gen,
                                           std::vector<std::size_t> k) {
  const std::size_t n = k.size();
  std::vector<std::vector<PlayerId>> nb(n);
  for (PlayerId i = 0; i < n; ++i) {
    for (PlayerId j = 0; j < n; ++j) {
      if (j != i) nb[i].push_back(j);
    }
  }
  const Dims d(k);
  NetworkedGame g(d, nb);
  const auto profiles = all_profiles(k);
  PotentialGame out;
  out.potential = random_vector(gen, profiles.size(), -2.0, 2.0);
  std::vector<GameFunction> us;
  for (PlayerId i = 0; i < n; ++i) {
    std::vector<PlayerId> rest;
    for (PlayerId j = 0; j < n; ++j) {
      if (j != i) rest.push_back(j);
    }
    std::size_t rest_size = 1;
    for (PlayerId j : rest) rest_size *= k[j];
    const std::vector<double> noise = random_vector(gen, rest_size);
    std::vector<double> c(profiles.size());
    for (std::size_t x = 0; x < profiles.size(); ++x) {
      c[x] = out.potential[x] + noise[scoped_index(profiles[x], k, rest)];
    }
    us.push_back(GameFunction::full(d, std::move(c)));
  }
  out.game = g.with_utilities(std::move(us));
  return out;
}

}  // namespace pf_test
