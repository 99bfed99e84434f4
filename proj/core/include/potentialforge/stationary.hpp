#pragma once

// Exact stationary distributions of the learning chains on small games.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "potentialforge/game.hpp"
#include "potentialforge/learning.hpp"
#include "potentialforge/stp.hpp"

namespace potentialforge {

inline constexpr std::size_t kDefaultMaxStates = 4096;

// One closed communicating class and its stationary distribution.
struct StationaryComponent {
  std::vector<std::size_t> states;  // profile indices, increasing
  std::vector<double> probabilities;
};

struct StationaryResult {
  bool irreducible = true;
  // Length-k distribution when the chain has a single closed class (zero on
  // transient states); empty otherwise.
  std::vector<double> distribution;
  std::vector<StationaryComponent> components;
};

// Explicit k x k one-step transition matrix of the learner at fixed beta.
// Throws DimensionOverflow when k exceeds max_states.
DenseMatrix transition_matrix(const NetworkedGame& g, double beta,
                              Learner learner,
                              const std::optional<Restriction>& restriction,
                              std::size_t max_states = kDefaultMaxStates);

// Stationary distribution(s) of the learner's chain, one per closed
// communicating class, each solved by state reduction (GTH).
StationaryResult exact_stationary(
    const NetworkedGame& g, double beta, Learner learner,
    const std::optional<Restriction>& restriction = std::nullopt,
    std::size_t max_states = kDefaultMaxStates);

// Stationary distribution of an irreducible row-stochastic matrix by the
// Grassmann-Taksar-Heyman elimination (subtraction-free).
std::vector<double> stationary_gth(DenseMatrix p);

// exp(beta P(x)) / sum_y exp(beta P(y)) over the given entries.
std::vector<double> gibbs(std::span<const double> potential, double beta);

}  // namespace potentialforge
