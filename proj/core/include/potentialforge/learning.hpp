#pragma once

// Asynchronous logit learning and binary restrictive logit learning.
//
// Each step picks one player uniformly. Under logit learning that player
// resamples its strategy from the softmax of beta * c_i over all of S_i.
// Under binary restrictive logit learning it first draws a trial strategy
// from R_i(x_i) (each alternative with probability 1/w_i, staying with the
// remainder) and then keeps the trial or the incumbent with two-point logit
// probabilities.
//
// Random draws per step: logit uses two (player, strategy); binary
// restrictive uses three (player, trial, acceptance), the acceptance draw
// being consumed even when the trial equals the incumbent.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "potentialforge/game.hpp"
#include "potentialforge/rng.hpp"
#include "potentialforge/stp.hpp"

namespace potentialforge {

class BetaSchedule {
 public:
  enum class Kind { kConstant, kLinear, kTable };

  static BetaSchedule constant(double beta);
  // beta(t) = coefficient * t.
  static BetaSchedule linear(double coefficient);
  // Step function: beta(t) is the value of the last entry with time <= t,
  // or of the first entry when t precedes all of them. Times must be
  // strictly increasing.
  static BetaSchedule table(std::vector<std::pair<std::uint64_t, double>> steps);

  Kind kind() const noexcept { return kind_; }
  double at(std::uint64_t t) const;

 private:
  Kind kind_ = Kind::kConstant;
  double value_ = 0.0;
  std::vector<std::pair<std::uint64_t, double>> table_;
};

// Available strategies R_i(x) for every player and strategy. Each set is
// stored sorted and always contains x itself.
class Restriction {
 public:
  Restriction() = default;
  // sets[i][x] = R_i(x). Throws InvalidRestriction if an entry is missing,
  // out of range, or does not contain x.
  Restriction(const Dims& d,
              std::vector<std::vector<std::vector<Strategy>>> sets);

  // R_i(x) = S_i for every x.
  static Restriction unrestricted(const Dims& d);

  std::size_t players() const noexcept { return sets_.size(); }
  std::size_t strategies(PlayerId i) const { return sets_.at(i).size(); }
  std::span<const Strategy> available(PlayerId i, Strategy x) const {
    return sets_.at(i).at(x);
  }
  // w_i = max_x |R_i(x)|.
  std::size_t width(PlayerId i) const { return width_.at(i); }

  // Throws InvalidRestriction unless the restriction covers exactly `d`.
  void check_dims(const Dims& d) const;

 private:
  std::vector<std::vector<std::vector<Strategy>>> sets_;
  std::vector<std::size_t> width_;
};

struct StrategyPair {
  PlayerId player = 0;
  Strategy from = 0;
  Strategy to = 0;
};

struct RestrictionReport {
  bool reversible = true;
  // `to` in R(from) but `from` not in R(to).
  std::optional<StrategyPair> reversibility_witness;
  // Every strategy reaches every other one through allowed moves.
  bool feasible = true;
  // Same, ignoring isolated strategies.
  bool feasible_on_reachable = true;
  // `to` not reachable from `from` (among non-isolated strategies when
  // feasible_on_reachable fails, otherwise among all).
  std::optional<StrategyPair> disconnected_pair;
  // Strategies x with R(x) = {x} that appear in no other R(y).
  std::vector<std::pair<PlayerId, Strategy>> isolated;

  bool usable() const noexcept { return reversible && feasible_on_reachable; }
};

RestrictionReport validate_restriction(const Restriction& r, const Dims& d);

enum class Learner { kLogit, kBinaryRestrictive };

struct Step {
  Profile profile;
  PlayerId player = 0;  // the player selected to revise
};

// Precomputed view of a game with utilities, for fast per-step evaluation.
class Dynamics {
 public:
  // Throws InvalidGame without utilities, InvalidRestriction when the
  // binary restrictive learner has no restriction or a mismatched one.
  Dynamics(const NetworkedGame& g, Learner learner,
           std::optional<Restriction> restriction = std::nullopt);

  Learner learner() const noexcept { return learner_; }
  const Dims& dims() const noexcept { return dims_; }

  // c_i(y, x^{-i}) for every y in S_i.
  std::vector<double> utility_slice(PlayerId i, const Profile& x) const;

  Step step(const Profile& current, double beta, Rng& rng) const;

  // Exact one-step distribution from profile index `from`, as
  // (destination index, probability) pairs sorted by destination.
  std::vector<std::pair<std::size_t, double>> transition_row(
      std::size_t from, double beta) const;

 private:
  Learner learner_;
  Dims dims_;
  std::vector<GameFunction> utilities_;
  // strides_[i][j]: weight of x_j in the index of utility i.
  std::vector<std::vector<std::size_t>> strides_;
  std::optional<Restriction> restriction_;
};

Step step_logit(const NetworkedGame& g, const Profile& current,
                std::uint64_t t, const BetaSchedule& schedule, Rng& rng);
Step step_brl(const NetworkedGame& g, const Profile& current, std::uint64_t t,
              const BetaSchedule& schedule, const Restriction& restriction,
              Rng& rng);

struct TrajectoryRecord {
  std::uint64_t t = 0;
  double beta = 0.0;
  std::optional<PlayerId> player;  // empty for the initial record
  Profile profile;
  double objective = 0.0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<TrajectoryRecord> records;

  const Profile& final_profile() const { return records.back().profile; }
};

struct RunConfig {
  Learner learner = Learner::kLogit;
  BetaSchedule schedule = BetaSchedule::constant(0.0);
  std::optional<Restriction> restriction;
  Profile init;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Runs t = 1..steps with beta = schedule.at(t), recording every step.
Trajectory run(const NetworkedGame& g, const GameFunction& objective,
               const RunConfig& config);

}  // namespace potentialforge
