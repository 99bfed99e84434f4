#include "potentialforge/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "potentialforge/error.hpp"
#include "potentialforge/factor_operator.hpp"

namespace potentialforge {

namespace {

void check_scope(const Dims& d, std::span<const PlayerId> scope) {
  for (std::size_t a = 0; a < scope.size(); ++a) {
    if (scope[a] >= d.players()) {
      throw InvalidGame("scope player " + std::to_string(scope[a] + 1) +
                        " out of range 1.." + std::to_string(d.players()));
    }
    if (a > 0 && scope[a - 1] >= scope[a]) {
      throw InvalidGame("scope must be sorted and duplicate-free");
    }
  }
}

Dims sub_dims(const Dims& d, std::span<const PlayerId> players) {
  std::vector<std::size_t> cards;
  cards.reserve(players.size());
  for (PlayerId j : players) cards.push_back(d.cardinality(j));
  return Dims(std::move(cards));
}

}  // namespace

GameFunction::GameFunction(const Dims& d, std::vector<PlayerId> scope,
                           std::vector<double> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
  check_scope(d, scope_);
  const std::size_t expected = d.product(scope_);
  if (values_.size() != expected) {
    throw LengthMismatch("function over " + std::to_string(scope_.size()) +
                         " players needs " + std::to_string(expected) +
                         " values, got " + std::to_string(values_.size()));
  }
}

GameFunction GameFunction::full(const Dims& d, std::vector<double> values) {
  std::vector<PlayerId> scope(d.players());
  for (PlayerId j = 0; j < scope.size(); ++j) scope[j] = j;
  return GameFunction(d, std::move(scope), std::move(values));
}

GameFunction GameFunction::constant(double c) {
  GameFunction f;
  f.values_ = {c};
  return f;
}

double eval(const GameFunction& f, const Profile& p, const Dims& d) {
  validate_profile(p, d);
  const ScopeIndexer indexer(d, f.scope());
  if (indexer.size() != f.values().size()) {
    throw LengthMismatch("function does not match the game dimensions");
  }
  return f.values()[indexer.index(p)];
}

std::vector<double> lift(const GameFunction& f, const Dims& d,
                         const Limits& limits) {
  if (d.total() > limits.max_vector) {
    throw DimensionOverflow("profile space of size " +
                            std::to_string(d.total()) + " exceeds cap");
  }
  return FactorOperator::drawing(d, f.scope()).apply_transpose(f.values());
}

GameFunction widen(const GameFunction& f, const Dims& d,
                   std::vector<PlayerId> scope) {
  check_scope(d, scope);
  if (!std::includes(scope.begin(), scope.end(), f.scope().begin(),
                     f.scope().end())) {
    throw InvalidGame("cannot widen a function to a scope that does not "
                      "contain its own");
  }
  const Dims target = sub_dims(d, scope);
  // Stride of each target-scope position inside f's own index.
  std::vector<std::size_t> strides(scope.size(), 0);
  std::size_t stride = 1;
  for (std::size_t a = f.scope().size(); a-- > 0;) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(scope.begin(), scope.end(), f.scope()[a]) -
        scope.begin());
    strides[pos] = stride;
    stride *= d.cardinality(f.scope()[a]);
  }
  std::vector<double> values(target.total());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const Profile sub = profile_decode(idx, target);
    std::size_t src = 0;
    for (std::size_t a = 0; a < scope.size(); ++a) src += strides[a] * sub[a];
    values[idx] = f.values()[src];
  }
  return GameFunction(d, std::move(scope), std::move(values));
}

ScopeCheck scope_check(std::span<const double> f_full, const Dims& d,
                       std::span<const PlayerId> scope, double tol) {
  if (f_full.size() != d.total()) {
    throw LengthMismatch("vector length " + std::to_string(f_full.size()) +
                         " != profile count " + std::to_string(d.total()));
  }
  const ScopeIndexer indexer(d, scope);
  std::vector<double> lo(indexer.size(),
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(indexer.size(),
                         -std::numeric_limits<double>::infinity());

  // Odometer over all profiles, tracking the scoped index incrementally.
  const std::size_t n = d.players();
  std::vector<Strategy> digits(n, 0);
  std::size_t cls = 0;
  for (std::size_t idx = 0; idx < f_full.size(); ++idx) {
    lo[cls] = std::min(lo[cls], f_full[idx]);
    hi[cls] = std::max(hi[cls], f_full[idx]);
    for (std::size_t j = n; j-- > 0;) {
      if (digits[j] + 1 < d.cardinality(j)) {
        ++digits[j];
        cls += indexer.stride(j);
        break;
      }
      cls -= (d.cardinality(j) - 1) * indexer.stride(j);
      digits[j] = 0;
    }
  }

  ScopeCheck result;
  for (std::size_t c = 0; c < lo.size(); ++c) {
    const double spread = hi[c] - lo[c];
    if (std::isnan(spread)) {
      result.deviation = std::numeric_limits<double>::infinity();
    } else {
      result.deviation = std::max(result.deviation, spread);
    }
  }
  result.ok = result.deviation <= tol;
  return result;
}

NetworkedGame::NetworkedGame(Dims dims,
                             std::vector<std::vector<PlayerId>> neighbors)
    : dims_(std::move(dims)), neighbors_(std::move(neighbors)) {
  const std::size_t n = dims_.players();
  if (n == 0) throw InvalidGame("a game needs at least one player");
  if (neighbors_.size() != n) {
    throw InvalidGame("neighbor list has " +
                      std::to_string(neighbors_.size()) + " entries for " +
                      std::to_string(n) + " players");
  }
  closed_.resize(n);
  for (PlayerId i = 0; i < n; ++i) {
    auto& u = neighbors_[i];
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end()) {
      throw InvalidGame("duplicate neighbor of player " +
                        std::to_string(i + 1));
    }
    for (PlayerId j : u) {
      if (j >= n) {
        throw InvalidGame("neighbor " + std::to_string(j + 1) +
                          " of player " + std::to_string(i + 1) +
                          " out of range");
      }
      if (j == i) {
        throw InvalidGame("player " + std::to_string(i + 1) +
                          " listed as its own neighbor");
      }
    }
    closed_[i] = u;
    closed_[i].insert(std::lower_bound(closed_[i].begin(), closed_[i].end(), i),
                      i);
  }
}

std::vector<PlayerId> NetworkedGame::others(PlayerId i) const {
  std::vector<PlayerId> out;
  out.reserve(players() - 1);
  for (PlayerId j = 0; j < players(); ++j) {
    if (j != i) out.push_back(j);
  }
  return out;
}

NetworkedGame NetworkedGame::with_utilities(
    std::vector<GameFunction> utilities) const {
  if (utilities.size() != players()) {
    throw InvalidGame("expected " + std::to_string(players()) +
                      " utilities, got " + std::to_string(utilities.size()));
  }
  NetworkedGame g = *this;
  g.utilities_.clear();
  g.utilities_.reserve(utilities.size());
  for (PlayerId i = 0; i < utilities.size(); ++i) {
    GameFunction& c = utilities[i];
    const auto scope = closed_neighborhood(i);
    if (std::equal(c.scope().begin(), c.scope().end(), scope.begin(),
                   scope.end())) {
      g.utilities_.push_back(std::move(c));
      continue;
    }
    if (!std::includes(scope.begin(), scope.end(), c.scope().begin(),
                       c.scope().end())) {
      throw InvalidGame("utility of player " + std::to_string(i + 1) +
                        " depends on players outside its neighborhood");
    }
    g.utilities_.push_back(
        widen(c, dims_, std::vector<PlayerId>(scope.begin(), scope.end())));
  }
  return g;
}

PotentialCheck is_potential_with(const NetworkedGame& g,
                                 const GameFunction& potential, double tol,
                                 const Limits& limits) {
  if (!g.has_utilities()) {
    throw InvalidGame("potential check needs utilities for every player");
  }
  const Dims& d = g.dims();
  const std::vector<double> p = lift(potential, d, limits);
  PotentialCheck result;
  result.player_deviation.reserve(g.players());
  for (PlayerId i = 0; i < g.players(); ++i) {
    std::vector<double> r = lift(g.utility(i), d, limits);
    for (std::size_t x = 0; x < r.size(); ++x) r[x] -= p[x];
    const ScopeCheck check = scope_check(r, d, g.others(i), tol);
    result.player_deviation.push_back(check.deviation);
    result.max_deviation = std::max(result.max_deviation, check.deviation);
    result.potential = result.potential && check.ok;
  }
  return result;
}

}  // namespace potentialforge
