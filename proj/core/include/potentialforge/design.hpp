#pragma once

// Local-information utility design.
//
// For player i with closed neighborhood N_i, utilities c_i scoped to N_i make
// the objective phi an exact potential iff the linear system
//
//     T_i xi = V^phi,   T_i = [Gamma_{N_i}^T, Gamma_{-i}^T]
//
// is solvable. xi splits into xi1 (the structure vector of c_i over N_i) and
// xi2 = -d_i (a function of x^{-i}), so that phi = c_i - d_i. The system is
// rank deficient; its kernel is spanned by the columns of
// H_i = [Lambda_{N_i}; -Upsilon_{N_i}], which is also why any
// c_i + Lambda_{N_i} zeta is an equally valid utility.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "potentialforge/factor_operator.hpp"
#include "potentialforge/game.hpp"
#include "potentialforge/limits.hpp"

namespace potentialforge {

class DesignOperator {
 public:
  DesignOperator(const NetworkedGame& g, PlayerId player);

  PlayerId player() const noexcept { return player_; }
  // Gamma_{N_i}^T: k x k_{N_i}.
  const FactorOperator& left() const noexcept { return left_; }
  // Gamma_{-i}^T: k x k_{-i}.
  const FactorOperator& right() const noexcept { return right_; }

  std::size_t rows() const noexcept { return left_.rows(); }
  std::size_t cols() const noexcept { return left_.cols() + right_.cols(); }

  // T_i xi = left * xi[:k_{N_i}] + right * xi[k_{N_i}:].
  std::vector<double> apply(std::span<const double> xi) const;
  // T_i^T w, stacked as [left^T w; right^T w].
  std::vector<double> apply_transpose(std::span<const double> w) const;

  DenseMatrix materialize(const Limits& limits = Limits::defaults()) const;

 private:
  PlayerId player_;
  FactorOperator left_;
  FactorOperator right_;
};

DesignOperator build_design_operator(const NetworkedGame& g, PlayerId player);

enum class SolveMethod {
  kAuto,        // dense SVD when the materialized T_i is small, else CGLS
  kDense,
  kMatrixFree,
};

struct DesignOptions {
  // Feasible iff ||T_i xi - V^phi|| <= tolerance * ||V^phi||.
  double tolerance = 1e-9;
  SolveMethod method = SolveMethod::kAuto;
  // kAuto picks the dense route up to this many entries of T_i.
  std::size_t dense_entries = std::size_t{1} << 20;
  // CGLS stopping rule on the normal residual.
  double solver_tolerance = 1e-12;
  // CGLS cap; 0 means 10 * (k_{N_i} + k_{-i}).
  std::size_t max_iterations = 0;
  // Solve players on separate threads.
  bool parallel = false;
  Limits limits = Limits::defaults();
};

struct PlayerDesign {
  PlayerId player = 0;
  std::vector<PlayerId> scope;  // N_i
  std::vector<double> xi1;      // utility structure vector over N_i
  std::vector<double> xi2;      // -d_i over N \ {i}
  double residual = 0.0;
  double relative_residual = 0.0;
  bool feasible = false;
  std::size_t family_dim = 1;  // k_{U(i)}
  SolveMethod method = SolveMethod::kAuto;
  std::size_t iterations = 0;
};

struct DesignSolution {
  double tolerance = 0.0;
  double objective_norm = 0.0;
  std::vector<PlayerDesign> players;

  bool all_feasible() const noexcept;
};

// Minimum-norm least-squares solution of every player's design system.
// Throws SolverFailure if the iterative route does not converge.
DesignSolution solve_min_norm(const NetworkedGame& g,
                              std::span<const double> objective,
                              const DesignOptions& options = {});

PlayerDesign solve_player(const NetworkedGame& g, PlayerId player,
                          std::span<const double> objective,
                          const DesignOptions& options = {});

struct Feasibility {
  PlayerId player = 0;
  bool feasible = false;
  double relative_residual = 0.0;
};

// Decides solvability of each design system by its least-squares residual.
std::vector<Feasibility> check_existence(const NetworkedGame& g,
                                         std::span<const double> objective,
                                         const DesignOptions& options = {});

// Lambda_{N_i}: ones-column over x_i, identity over U(i).
FactorOperator family_operator(const NetworkedGame& g, PlayerId player);

// xi1 + Lambda_{N_i} zeta, with zeta of length k_{U(i)}.
std::vector<double> family_member(const NetworkedGame& g,
                                  const DesignSolution& solution,
                                  PlayerId player,
                                  std::span<const double> zeta);

// Utilities c_i = xi1 + Lambda zeta_i attached to the game. An empty `zetas`
// means zeta = 0 for everyone.
NetworkedGame designed_game(const NetworkedGame& g,
                            const DesignSolution& solution,
                            std::span<const std::vector<double>> zetas = {});

// H_i = [Lambda_{N_i}; -Upsilon_{N_i}], kept as its two factor blocks.
struct NullSpaceBasis {
  FactorOperator lambda;   // k_{N_i} x k_{U(i)}
  FactorOperator upsilon;  // k_{-i} x k_{U(i)}

  std::size_t columns() const noexcept { return lambda.cols(); }
  DenseMatrix materialize(const Limits& limits = Limits::defaults()) const;
};

NullSpaceBasis null_space_basis(const NetworkedGame& g, PlayerId player);

struct RankDiagnostics {
  std::size_t measured_rank = 0;
  // k_{N_i} - k_{U(i)}
  std::size_t neighborhood_formula = 0;
  // k_{N_i} + k_{-i} - k_{U(i)}
  std::size_t counting_formula = 0;
  // rank [T_i, V^phi], when an objective is given.
  std::optional<std::size_t> augmented_rank;
};

// Numeric rank of the materialized T_i next to the two closed-form
// candidates. Throws DimensionOverflow above the materialization cap.
RankDiagnostics rank_diagnostics(
    const NetworkedGame& g, PlayerId player,
    std::optional<std::span<const double>> objective = std::nullopt,
    const Limits& limits = Limits::defaults());

}  // namespace potentialforge
