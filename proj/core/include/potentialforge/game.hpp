#pragma once

// Networked finite games and real functions on their profile spaces, held as
// structure vectors over an explicit player scope.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "potentialforge/limits.hpp"
#include "potentialforge/stp.hpp"

namespace potentialforge {

// A real function of the strategies of the players in `scope` (sorted,
// zero-based). values[i] is the value at the i-th sub-profile of the scope in
// lexicographic order.
class GameFunction {
 public:
  GameFunction() = default;
  GameFunction(const Dims& d, std::vector<PlayerId> scope,
               std::vector<double> values);

  // Full-scope function from a length-k structure vector.
  static GameFunction full(const Dims& d, std::vector<double> values);
  // Empty-scope constant.
  static GameFunction constant(double c);

  std::span<const PlayerId> scope() const noexcept { return scope_; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const GameFunction&) const = default;

 private:
  std::vector<PlayerId> scope_;
  std::vector<double> values_;
};

// f(p). Throws InvalidProfile if p is not a valid profile of `d`.
double eval(const GameFunction& f, const Profile& p, const Dims& d);

// The same function expressed as a length-k structure vector over the whole
// profile space (Gamma_scope^T applied to the values, matrix-free).
std::vector<double> lift(const GameFunction& f, const Dims& d,
                         const Limits& limits = Limits::defaults());

// Re-expresses f over a larger sorted scope. Throws InvalidGame unless
// f.scope() is a subset of `scope`.
GameFunction widen(const GameFunction& f, const Dims& d,
                   std::vector<PlayerId> scope);

struct ScopeCheck {
  bool ok = true;
  // Largest max-min spread of f over profiles that agree on the scope.
  double deviation = 0.0;
};

// Does the length-k vector `f_full` depend only on the strategies of the
// players in `scope` (up to `tol`)?
ScopeCheck scope_check(std::span<const double> f_full, const Dims& d,
                       std::span<const PlayerId> scope, double tol);

class NetworkedGame {
 public:
  NetworkedGame() = default;
  // neighbors[i] is U(i): any order, no duplicates, must not contain i.
  NetworkedGame(Dims dims, std::vector<std::vector<PlayerId>> neighbors);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t players() const noexcept { return dims_.players(); }

  // U(i), sorted.
  std::span<const PlayerId> neighbors(PlayerId i) const {
    return neighbors_.at(i);
  }
  // N_i = U(i) + {i}, sorted.
  std::span<const PlayerId> closed_neighborhood(PlayerId i) const {
    return closed_.at(i);
  }
  // N \ {i}, sorted.
  std::vector<PlayerId> others(PlayerId i) const;

  bool has_utilities() const noexcept { return !utilities_.empty(); }
  const GameFunction& utility(PlayerId i) const { return utilities_.at(i); }
  std::span<const GameFunction> utilities() const noexcept {
    return utilities_;
  }

  // Copy carrying one utility per player. A utility whose scope is a strict
  // subset of N_i is widened to N_i; any other scope throws InvalidGame.
  NetworkedGame with_utilities(std::vector<GameFunction> utilities) const;

 private:
  Dims dims_;
  std::vector<std::vector<PlayerId>> neighbors_;
  std::vector<std::vector<PlayerId>> closed_;
  std::vector<GameFunction> utilities_;
};

struct PotentialCheck {
  bool potential = true;
  double max_deviation = 0.0;
  // Spread of c_i - P over x_i-slices, per player.
  std::vector<double> player_deviation;
};

inline constexpr double kDefaultPotentialTolerance = 1e-8;

// Checks that c_i - P depends only on x^{-i} for every player, which holds
// iff P is an exact potential of the game. Throws InvalidGame if the game
// has no utilities.
PotentialCheck is_potential_with(const NetworkedGame& g,
                                 const GameFunction& potential,
                                 double tol = kDefaultPotentialTolerance,
                                 const Limits& limits = Limits::defaults());

}  // namespace potentialforge
