#include "potentialforge/design.hpp"

#include <algorithm>
#include <future>
#include <string>

#include "potentialforge/error.hpp"
#include "potentialforge/least_squares.hpp"

namespace potentialforge {

namespace {

void check_player(const NetworkedGame& g, PlayerId player) {
  if (player >= g.players()) {
    throw InvalidGame("player " + std::to_string(player + 1) +
                      " out of range 1.." + std::to_string(g.players()));
  }
}

void check_objective(const NetworkedGame& g, std::span<const double> objective) {
  if (objective.size() != g.dims().total()) {
    throw LengthMismatch("objective has " + std::to_string(objective.size()) +
                         " entries, profile space has " +
                         std::to_string(g.dims().total()));
  }
}

}  // namespace

DesignOperator::DesignOperator(const NetworkedGame& g, PlayerId player)
    : player_(player) {
  check_player(g, player);
  left_ = FactorOperator::drawing(g.dims(), g.closed_neighborhood(player))
              .transpose();
  right_ = FactorOperator::drawing(g.dims(), g.others(player)).transpose();
}

std::vector<double> DesignOperator::apply(std::span<const double> xi) const {
  if (xi.size() != cols()) {
    throw LengthMismatch("design operator has " + std::to_string(cols()) +
                         " columns, vector has length " +
                         std::to_string(xi.size()));
  }
  std::vector<double> out = left_.apply(xi.first(left_.cols()));
  const std::vector<double> tail = right_.apply(xi.subspan(left_.cols()));
  for (std::size_t x = 0; x < out.size(); ++x) out[x] += tail[x];
  return out;
}

std::vector<double> DesignOperator::apply_transpose(
    std::span<const double> w) const {
  std::vector<double> out = left_.apply_transpose(w);
  const std::vector<double> tail = right_.apply_transpose(w);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

DenseMatrix DesignOperator::materialize(const Limits& limits) const {
  const std::size_t k = rows();
  DenseMatrix t(k, cols(), limits);
  const DenseMatrix l = left_.materialize(limits);
  const DenseMatrix r = right_.materialize(limits);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t c = 0; c < l.cols(); ++c) t(x, c) = l(x, c);
    for (std::size_t c = 0; c < r.cols(); ++c) t(x, l.cols() + c) = r(x, c);
  }
  return t;
}

DesignOperator build_design_operator(const NetworkedGame& g, PlayerId player) {
  return DesignOperator(g, player);
}

bool DesignSolution::all_feasible() const noexcept {
  return std::all_of(players.begin(), players.end(),
                     [](const PlayerDesign& p) { return p.feasible; });
}

PlayerDesign solve_player(const NetworkedGame& g, PlayerId player,
                          std::span<const double> objective,
                          const DesignOptions& options) {
  check_objective(g, objective);
  const DesignOperator t(g, player);
  const double b_norm = norm2(objective);

  SolveMethod method = options.method;
  if (method == SolveMethod::kAuto) {
    const bool small = t.cols() == 0 ||
                       t.rows() <= options.dense_entries / t.cols();
    method = small ? SolveMethod::kDense : SolveMethod::kMatrixFree;
  }

  LeastSquaresResult ls;
  if (method == SolveMethod::kDense) {
    ls = svd_min_norm(t.materialize(options.limits), objective);
  } else {
    LinearOperator op;
    op.rows = t.rows();
    op.cols = t.cols();
    op.apply = [&t](std::span<const double> v) { return t.apply(v); };
    op.apply_transpose = [&t](std::span<const double> w) {
      return t.apply_transpose(w);
    };
    CglsOptions cg;
    cg.tolerance = options.solver_tolerance;
    cg.max_iterations = options.max_iterations != 0 ? options.max_iterations
                                                    : 10 * t.cols();
    ls = cgls_min_norm(op, objective, cg);
  }

  // Residual of the returned iterate, not the solver's running estimate.
  std::vector<double> r = t.apply(ls.x);
  for (std::size_t x = 0; x < r.size(); ++x) r[x] -= objective[x];

  PlayerDesign out;
  out.player = player;
  const auto scope = g.closed_neighborhood(player);
  out.scope.assign(scope.begin(), scope.end());
  const auto split = static_cast<std::ptrdiff_t>(t.left().cols());
  out.xi1.assign(ls.x.begin(), ls.x.begin() + split);
  out.xi2.assign(ls.x.begin() + split, ls.x.end());
  out.residual = norm2(r);
  out.relative_residual = b_norm > 0.0 ? out.residual / b_norm : out.residual;
  out.feasible = out.residual <= options.tolerance * b_norm;
  out.family_dim = g.dims().product(g.neighbors(player));
  out.method = method;
  out.iterations = ls.iterations;
  return out;
}

DesignSolution solve_min_norm(const NetworkedGame& g,
                              std::span<const double> objective,
                              const DesignOptions& options) {
  check_objective(g, objective);
  DesignSolution solution;
  solution.tolerance = options.tolerance;
  solution.objective_norm = norm2(objective);
  solution.players.resize(g.players());
  if (options.parallel) {
    std::vector<std::future<PlayerDesign>> jobs;
    jobs.reserve(g.players());
    for (PlayerId i = 0; i < g.players(); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] {
        return solve_player(g, i, objective, options);
      }));
    }
    for (PlayerId i = 0; i < g.players(); ++i) {
      solution.players[i] = jobs[i].get();
    }
  } else {
    for (PlayerId i = 0; i < g.players(); ++i) {
      solution.players[i] = solve_player(g, i, objective, options);
    }
  }
  return solution;
}

std::vector<Feasibility> check_existence(const NetworkedGame& g,
                                         std::span<const double> objective,
                                         const DesignOptions& options) {
  const DesignSolution solution = solve_min_norm(g, objective, options);
  std::vector<Feasibility> out;
  out.reserve(solution.players.size());
  for (const PlayerDesign& p : solution.players) {
    out.push_back({p.player, p.feasible, p.relative_residual});
  }
  return out;
}

FactorOperator family_operator(const NetworkedGame& g, PlayerId player) {
  check_player(g, player);
  std::vector<Factor> factors;
  for (PlayerId j : g.closed_neighborhood(player)) {
    factors.push_back({j == player ? FactorKind::kOnesColumn
                                   : FactorKind::kIdentity,
                       g.dims().cardinality(j)});
  }
  return FactorOperator(std::move(factors));
}

std::vector<double> family_member(const NetworkedGame& g,
                                  const DesignSolution& solution,
                                  PlayerId player,
                                  std::span<const double> zeta) {
  check_player(g, player);
  if (solution.players.size() != g.players()) {
    throw LengthMismatch("design solution does not match the game");
  }
  const FactorOperator lambda = family_operator(g, player);
  const std::vector<double>& xi1 = solution.players[player].xi1;
  if (xi1.size() != lambda.rows()) {
    throw LengthMismatch("design solution does not match the game");
  }
  std::vector<double> out = lambda.apply(zeta);
  for (std::size_t a = 0; a < out.size(); ++a) out[a] += xi1[a];
  return out;
}

NetworkedGame designed_game(const NetworkedGame& g,
                            const DesignSolution& solution,
                            std::span<const std::vector<double>> zetas) {
  if (!zetas.empty() && zetas.size() != g.players()) {
    throw LengthMismatch("need one zeta per player");
  }
  std::vector<GameFunction> utilities;
  utilities.reserve(g.players());
  for (PlayerId i = 0; i < g.players(); ++i) {
    const auto scope = g.closed_neighborhood(i);
    std::vector<double> values =
        zetas.empty()
            ? family_member(g, solution, i,
                            std::vector<double>(
                                g.dims().product(g.neighbors(i)), 0.0))
            : family_member(g, solution, i, zetas[i]);
    utilities.emplace_back(g.dims(),
                           std::vector<PlayerId>(scope.begin(), scope.end()),
                           std::move(values));
  }
  return g.with_utilities(std::move(utilities));
}

DenseMatrix NullSpaceBasis::materialize(const Limits& limits) const {
  const DenseMatrix l = lambda.materialize(limits);
  const DenseMatrix u = upsilon.materialize(limits);
  DenseMatrix h(l.rows() + u.rows(), columns(), limits);
  for (std::size_t r = 0; r < l.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = l(r, c);
  }
  for (std::size_t r = 0; r < u.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) h(l.rows() + r, c) = -u(r, c);
  }
  return h;
}

NullSpaceBasis null_space_basis(const NetworkedGame& g, PlayerId player) {
  check_player(g, player);
  const auto u = g.neighbors(player);
  std::vector<Factor> upsilon;
  for (PlayerId j : g.others(player)) {
    const bool neighbor = std::binary_search(u.begin(), u.end(), j);
    upsilon.push_back(
        {neighbor ? FactorKind::kIdentity : FactorKind::kOnesColumn,
         g.dims().cardinality(j)});
  }
  return {family_operator(g, player), FactorOperator(std::move(upsilon))};
}

RankDiagnostics rank_diagnostics(
    const NetworkedGame& g, PlayerId player,
    std::optional<std::span<const double>> objective, const Limits& limits) {
  const DesignOperator t(g, player);
  const Dims& d = g.dims();
  const std::size_t k_n = d.product(g.closed_neighborhood(player));
  const std::size_t k_u = d.product(g.neighbors(player));
  const std::size_t k_minus = d.product(g.others(player));

  RankDiagnostics out;
  const DenseMatrix m = t.materialize(limits);
  out.measured_rank = numeric_rank(m);
  out.neighborhood_formula = k_n - k_u;
  out.counting_formula = k_n + k_minus - k_u;
  if (objective) {
    check_objective(g, *objective);
    DenseMatrix aug(m.rows(), m.cols() + 1, limits);
    for (std::size_t x = 0; x < m.rows(); ++x) {
      for (std::size_t c = 0; c < m.cols(); ++c) aug(x, c) = m(x, c);
      aug(x, m.cols()) = (*objective)[x];
    }
    out.augmented_rank = numeric_rank(aug);
  }
  return out;
}

}  // namespace potentialforge
