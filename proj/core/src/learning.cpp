#include "potentialforge/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0) || std::isinf(beta)) {
    throw Error("beta must be finite and non-negative, got " +
                std::to_string(beta));
  }
}

// Probability of keeping `trial` against `incumbent` in the two-point logit
// choice: e^{b c_t} / (e^{b c_t} + e^{b c_x}).
double acceptance(double beta, double trial_value, double incumbent_value) {
  const double e = beta * (incumbent_value - trial_value);
  if (e > 0.0) {
    const double z = std::exp(-e);
    return z / (1.0 + z);
  }
  return 1.0 / (1.0 + std::exp(e));
}

// Softmax of beta * values with the maximum subtracted first.
std::vector<double> softmax(double beta, std::span<const double> values) {
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> w(values.size());
  double total = 0.0;
  for (std::size_t y = 0; y < values.size(); ++y) {
    w[y] = std::exp(beta * (values[y] - top));
    total += w[y];
  }
  for (double& x : w) x /= total;
  return w;
}

std::size_t sample(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  for (std::size_t y = 0; y + 1 < probabilities.size(); ++y) {
    cumulative += probabilities[y];
    if (u < cumulative) return y;
  }
  return probabilities.size() - 1;
}

std::vector<std::size_t> full_strides(const Dims& d) {
  std::vector<std::size_t> s(d.players());
  std::size_t stride = 1;
  for (std::size_t j = d.players(); j-- > 0;) {
    s[j] = stride;
    stride *= d.cardinality(j);
  }
  return s;
}

// Strategies reachable from `start` through allowed moves, restricted to
// `allowed` nodes.
std::vector<bool> reachable(const Restriction& r, PlayerId i, Strategy start,
                            const std::vector<bool>& allowed) {
  std::vector<bool> seen(r.strategies(i), false);
  std::vector<Strategy> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const Strategy x = stack.back();
    stack.pop_back();
    for (Strategy y : r.available(i, x)) {
      if (!seen[y] && allowed[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

std::optional<StrategyPair> first_disconnected(
    const Restriction& r, PlayerId i, const std::vector<bool>& allowed) {
  for (Strategy x = 0; x < r.strategies(i); ++x) {
    if (!allowed[x]) continue;
    const std::vector<bool> seen = reachable(r, i, x, allowed);
    for (Strategy y = 0; y < r.strategies(i); ++y) {
      if (allowed[y] && !seen[y]) return StrategyPair{i, x, y};
    }
  }
  return std::nullopt;
}

}  // namespace

BetaSchedule BetaSchedule::constant(double beta) {
  check_beta(beta);
  BetaSchedule s;
  s.kind_ = Kind::kConstant;
  s.value_ = beta;
  return s;
}

BetaSchedule BetaSchedule::linear(double coefficient) {
  check_beta(coefficient);
  BetaSchedule s;
  s.kind_ = Kind::kLinear;
  s.value_ = coefficient;
  return s;
}

BetaSchedule BetaSchedule::table(
    std::vector<std::pair<std::uint64_t, double>> steps) {
  if (steps.empty()) throw Error("beta table is empty");
  for (std::size_t a = 0; a < steps.size(); ++a) {
    check_beta(steps[a].second);
    if (a > 0 && steps[a - 1].first >= steps[a].first) {
      throw Error("beta table times must be strictly increasing");
    }
  }
  BetaSchedule s;
  s.kind_ = Kind::kTable;
  s.table_ = std::move(steps);
  return s;
}

double BetaSchedule::at(std::uint64_t t) const {
  switch (kind_) {
    case Kind::kConstant:
      return value_;
    case Kind::kLinear:
      return value_ * static_cast<double>(t);
    case Kind::kTable: {
      auto it = std::upper_bound(
          table_.begin(), table_.end(), t,
          [](std::uint64_t v, const auto& e) { return v < e.first; });
      return it == table_.begin() ? table_.front().second
                                  : std::prev(it)->second;
    }
  }
  return value_;
}

Restriction::Restriction(const Dims& d,
                         std::vector<std::vector<std::vector<Strategy>>> sets)
    : sets_(std::move(sets)) {
  if (sets_.size() != d.players()) {
    throw InvalidRestriction("restriction covers " +
                             std::to_string(sets_.size()) + " players, game has " +
                             std::to_string(d.players()));
  }
  width_.assign(sets_.size(), 0);
  for (PlayerId i = 0; i < sets_.size(); ++i) {
    const std::string who = "player " + std::to_string(i + 1);
    if (sets_[i].size() != d.cardinality(i)) {
      throw InvalidRestriction(who + ": restriction has " +
                               std::to_string(sets_[i].size()) +
                               " entries, expected one per strategy (" +
                               std::to_string(d.cardinality(i)) + ")");
    }
    for (Strategy x = 0; x < sets_[i].size(); ++x) {
      auto& set = sets_[i][x];
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      for (Strategy y : set) {
        if (y >= d.cardinality(i)) {
          throw InvalidRestriction(who + ": strategy " + std::to_string(y + 1) +
                                   " out of range");
        }
      }
      if (!std::binary_search(set.begin(), set.end(), x)) {
        throw InvalidRestriction(who + ": R(" + std::to_string(x + 1) +
                                 ") must contain " + std::to_string(x + 1));
      }
      width_[i] = std::max(width_[i], set.size());
    }
  }
}

Restriction Restriction::unrestricted(const Dims& d) {
  std::vector<std::vector<std::vector<Strategy>>> sets(d.players());
  for (PlayerId i = 0; i < d.players(); ++i) {
    std::vector<Strategy> all(d.cardinality(i));
    for (Strategy x = 0; x < all.size(); ++x) all[x] = x;
    sets[i].assign(d.cardinality(i), all);
  }
  return Restriction(d, std::move(sets));
}

void Restriction::check_dims(const Dims& d) const {
  bool ok = sets_.size() == d.players();
  for (PlayerId i = 0; ok && i < sets_.size(); ++i) {
    ok = sets_[i].size() == d.cardinality(i);
  }
  if (!ok) throw InvalidRestriction("restriction does not match the game");
}

RestrictionReport validate_restriction(const Restriction& r, const Dims& d) {
  r.check_dims(d);
  RestrictionReport report;
  for (PlayerId i = 0; i < r.players(); ++i) {
    const std::size_t k = r.strategies(i);
    for (Strategy x = 0; x < k && report.reversible; ++x) {
      for (Strategy y : r.available(i, x)) {
        const auto back = r.available(i, y);
        if (!std::binary_search(back.begin(), back.end(), x)) {
          report.reversible = false;
          report.reversibility_witness = StrategyPair{i, x, y};
          break;
        }
      }
    }

    std::vector<bool> entered(k, false);
    for (Strategy y = 0; y < k; ++y) {
      for (Strategy x : r.available(i, y)) {
        if (x != y) entered[x] = true;
      }
    }
    std::vector<bool> active(k, true);
    std::size_t active_count = 0;
    for (Strategy x = 0; x < k; ++x) {
      if (r.available(i, x).size() == 1 && !entered[x]) {
        active[x] = false;
        report.isolated.emplace_back(i, x);
      } else {
        ++active_count;
      }
    }

    const std::vector<bool> everything(k, true);
    if (report.feasible) {
      if (auto gap = first_disconnected(r, i, everything)) {
        report.feasible = false;
        if (!report.disconnected_pair) report.disconnected_pair = gap;
      }
    }
    if (report.feasible_on_reachable) {
      std::optional<StrategyPair> gap;
      if (active_count == 0) {
        gap = StrategyPair{i, 0, static_cast<Strategy>(k > 1 ? 1 : 0)};
      } else {
        gap = first_disconnected(r, i, active);
      }
      if (gap) {
        report.feasible_on_reachable = false;
        report.disconnected_pair = gap;
      }
    }
  }
  return report;
}

Dynamics::Dynamics(const NetworkedGame& g, Learner learner,
                   std::optional<Restriction> restriction)
    : learner_(learner), dims_(g.dims()), restriction_(std::move(restriction)) {
  if (!g.has_utilities()) {
    throw InvalidGame("learning dynamics need utilities for every player");
  }
  if (learner_ == Learner::kBinaryRestrictive) {
    if (!restriction_) {
      throw InvalidRestriction(
          "binary restrictive learning needs a restriction");
    }
    restriction_->check_dims(dims_);
  }
  utilities_.assign(g.utilities().begin(), g.utilities().end());
  strides_.reserve(utilities_.size());
  for (const GameFunction& c : utilities_) {
    const ScopeIndexer indexer(dims_, c.scope());
    std::vector<std::size_t> s(dims_.players());
    for (PlayerId j = 0; j < s.size(); ++j) s[j] = indexer.stride(j);
    strides_.push_back(std::move(s));
  }
}

std::vector<double> Dynamics::utility_slice(PlayerId i,
                                            const Profile& x) const {
  const auto& strides = strides_[i];
  std::size_t base = 0;
  for (PlayerId j = 0; j < strides.size(); ++j) {
    if (j != i) base += strides[j] * x[j];
  }
  const auto values = utilities_[i].values();
  std::vector<double> out(dims_.cardinality(i));
  for (Strategy y = 0; y < out.size(); ++y) {
    out[y] = values[base + strides[i] * y];
  }
  return out;
}

Step Dynamics::step(const Profile& current, double beta, Rng& rng) const {
  Step out{current, rng.below(dims_.players())};
  const PlayerId i = out.player;
  const std::vector<double> slice = utility_slice(i, current);
  if (learner_ == Learner::kLogit) {
    const std::vector<double> p = softmax(beta, slice);
    out.profile[i] = static_cast<Strategy>(sample(p, rng.uniform()));
    return out;
  }

  const Strategy incumbent = current[i];
  const auto options = restriction_->available(i, incumbent);
  const std::size_t pick = rng.below(restriction_->width(i));
  // pick < |R|-1 selects the pick-th alternative in increasing order
  // (skipping the incumbent); anything else keeps the incumbent as trial.
  Strategy trial = incumbent;
  if (pick + 1 < options.size()) {
    const auto own = static_cast<std::size_t>(
        std::lower_bound(options.begin(), options.end(), incumbent) -
        options.begin());
    trial = options[pick < own ? pick : pick + 1];
  }
  const double u = rng.uniform();
  if (u < acceptance(beta, slice[trial], slice[incumbent])) {
    out.profile[i] = trial;
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> Dynamics::transition_row(
    std::size_t from, double beta) const {
  const Profile x = profile_decode(from, dims_);
  const std::vector<std::size_t> strides = full_strides(dims_);
  const double pick = 1.0 / static_cast<double>(dims_.players());
  std::vector<std::pair<std::size_t, double>> row;
  double stay = 0.0;
  for (PlayerId i = 0; i < dims_.players(); ++i) {
    const std::vector<double> slice = utility_slice(i, x);
    const Strategy incumbent = x[i];
    auto to = [&](Strategy y) {
      return from + strides[i] * y - strides[i] * incumbent;
    };
    if (learner_ == Learner::kLogit) {
      const std::vector<double> p = softmax(beta, slice);
      for (Strategy y = 0; y < p.size(); ++y) {
        if (y == incumbent) {
          stay += pick * p[y];
        } else {
          row.emplace_back(to(y), pick * p[y]);
        }
      }
      continue;
    }
    const double w = static_cast<double>(restriction_->width(i));
    double moved = 0.0;
    for (Strategy y : restriction_->available(i, incumbent)) {
      if (y == incumbent) continue;
      const double p = acceptance(beta, slice[y], slice[incumbent]) / w;
      row.emplace_back(to(y), pick * p);
      moved += p;
    }
    stay += pick * (1.0 - moved);
  }
  row.emplace_back(from, stay);
  std::sort(row.begin(), row.end());
  return row;
}

Step step_logit(const NetworkedGame& g, const Profile& current,
                std::uint64_t t, const BetaSchedule& schedule, Rng& rng) {
  validate_profile(current, g.dims());
  return Dynamics(g, Learner::kLogit).step(current, schedule.at(t), rng);
}

Step step_brl(const NetworkedGame& g, const Profile& current, std::uint64_t t,
              const BetaSchedule& schedule, const Restriction& restriction,
              Rng& rng) {
  validate_profile(current, g.dims());
  return Dynamics(g, Learner::kBinaryRestrictive, restriction)
      .step(current, schedule.at(t), rng);
}

Trajectory run(const NetworkedGame& g, const GameFunction& objective,
               const RunConfig& config) {
  validate_profile(config.init, g.dims());
  const Dynamics dynamics(g, config.learner, config.restriction);
  const ScopeIndexer phi_index(g.dims(), objective.scope());
  if (phi_index.size() != objective.values().size()) {
    throw LengthMismatch("objective does not match the game dimensions");
  }
  auto phi = [&](const Profile& p) {
    return objective.values()[phi_index.index(p)];
  };

  Trajectory traj;
  traj.seed = config.seed;
  traj.stream = config.stream;
  traj.records.reserve(config.steps + 1);
  traj.records.push_back({0, config.schedule.at(0), std::nullopt, config.init,
                          phi(config.init)});
  Rng rng(config.seed, config.stream);
  Profile current = config.init;
  for (std::uint64_t t = 1; t <= config.steps; ++t) {
    const double beta = config.schedule.at(t);
    Step s = dynamics.step(current, beta, rng);
    current = std::move(s.profile);
    traj.records.push_back({t, beta, s.player, current, phi(current)});
  }
  return traj;
}

}  // namespace potentialforge
