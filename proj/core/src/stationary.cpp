#include "potentialforge/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

using SparseRows = std::vector<std::vector<std::pair<std::size_t, double>>>;

void check_states(const Dims& d, std::size_t max_states) {
  if (d.total() > max_states) {
    throw DimensionOverflow("chain has " + std::to_string(d.total()) +
                            " states, cap is " + std::to_string(max_states));
  }
}

SparseRows build_rows(const NetworkedGame& g, double beta, Learner learner,
                      const std::optional<Restriction>& restriction) {
  const Dynamics dynamics(g, learner, restriction);
  SparseRows rows(g.dims().total());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    rows[x] = dynamics.transition_row(x, beta);
  }
  return rows;
}

// Strongly connected components (iterative Tarjan). Returns the component
// id of every state.
std::vector<std::size_t> components(const SparseRows& rows,
                                    std::size_t& count) {
  const std::size_t n = rows.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> work;  // (node, next edge)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, edge] = work.back();
      if (edge == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (edge < rows[v].size()) {
        const auto [w, p] = rows[v][edge++];
        if (p <= 0.0) continue;
        if (index[w] == kUnvisited) {
          work.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const std::size_t done = v;
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != done);
        ++count;
      }
      work.pop_back();
      if (!work.empty()) {
        const std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace

DenseMatrix transition_matrix(const NetworkedGame& g, double beta,
                              Learner learner,
                              const std::optional<Restriction>& restriction,
                              std::size_t max_states) {
  check_states(g.dims(), max_states);
  const SparseRows rows = build_rows(g, beta, learner, restriction);
  const std::size_t k = rows.size();
  DenseMatrix m(k, k, Limits{.max_materialize = k * k});
  for (std::size_t x = 0; x < k; ++x) {
    for (const auto& [y, p] : rows[x]) m(x, y) += p;
  }
  return m;
}

std::vector<double> stationary_gth(DenseMatrix p) {
  const std::size_t n = p.rows();
  if (n == 0 || p.cols() != n) throw LengthMismatch("matrix must be square");
  for (std::size_t k = n - 1; k >= 1; --k) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += p(k, j);
    if (!(s > 0.0)) throw Error("chain is not irreducible");
    for (std::size_t i = 0; i < k; ++i) {
      const double f = p(i, k) / s;
      p(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) p(i, j) += f * p(k, j);
    }
  }
  std::vector<double> pi(n, 0.0);
  pi[0] = 1.0;
  double total = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < j; ++i) s += pi[i] * p(i, j);
    pi[j] = s;
    total += s;
  }
  for (double& x : pi) x /= total;
  return pi;
}

StationaryResult exact_stationary(const NetworkedGame& g, double beta,
                                  Learner learner,
                                  const std::optional<Restriction>& restriction,
                                  std::size_t max_states) {
  check_states(g.dims(), max_states);
  const SparseRows rows = build_rows(g, beta, learner, restriction);
  const std::size_t k = rows.size();
  std::size_t count = 0;
  const std::vector<std::size_t> comp = components(rows, count);

  std::vector<bool> closed(count, true);
  for (std::size_t x = 0; x < k; ++x) {
    for (const auto& [y, p] : rows[x]) {
      if (p > 0.0 && comp[y] != comp[x]) closed[comp[x]] = false;
    }
  }
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t x = 0; x < k; ++x) members[comp[x]].push_back(x);

  StationaryResult result;
  result.irreducible = count == 1;
  // Closed classes ordered by their smallest state.
  for (std::size_t c = 0; c < count; ++c) {
    if (!closed[c]) continue;
    const std::vector<std::size_t>& states = members[c];
    std::vector<std::size_t> local(k, 0);
    for (std::size_t a = 0; a < states.size(); ++a) local[states[a]] = a;
    DenseMatrix sub(states.size(), states.size(),
                    Limits{.max_materialize = states.size() * states.size()});
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (const auto& [y, p] : rows[states[a]]) sub(a, local[y]) += p;
    }
    result.components.push_back({states, stationary_gth(std::move(sub))});
  }
  std::sort(result.components.begin(), result.components.end(),
            [](const auto& a, const auto& b) {
              return a.states.front() < b.states.front();
            });
  if (result.components.size() == 1) {
    result.distribution.assign(k, 0.0);
    const auto& only = result.components.front();
    for (std::size_t a = 0; a < only.states.size(); ++a) {
      result.distribution[only.states[a]] = only.probabilities[a];
    }
  }
  return result;
}

std::vector<double> gibbs(std::span<const double> potential, double beta) {
  if (potential.empty()) return {};
  const double top = *std::max_element(potential.begin(), potential.end());
  std::vector<double> mu(potential.size());
  double total = 0.0;
  for (std::size_t x = 0; x < mu.size(); ++x) {
    mu[x] = std::exp(beta * (potential[x] - top));
    total += mu[x];
  }
  for (double& m : mu) m /= total;
  return mu;
}

}  // namespace potentialforge
