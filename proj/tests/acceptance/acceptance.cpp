// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "potentialforge/consensus.hpp"
#include "potentialforge/design.hpp"
#include "potentialforge/io.hpp"
#include "potentialforge/learning.hpp"
#include "potentialforge/stationary.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace potentialforge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Shared scratch directory holding the generated demo instance.
struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / "potentialforge_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

void write_demo_files(const Workspace& ws) {
  const DemoConfig demo = build_demo();
  write_text_file(ws.path("game.json"), game_file_to_json(demo.game, demo.objective));
}

Outcome demo_feasible(const Workspace& ws) {
  const CliResult r = cli({"check", ws.path("game.json")});
  if (r.code != 0) return {false, "exit " + std::to_string(r.code) + " " + r.err};
  const json doc = json::parse(r.out);
  double worst = 0.0;
  bool all = doc["players"].size() == 3;
  for (const json& p : doc["players"]) {
    all = all && p["feasible"].get<bool>();
    worst = std::max(worst, p["relative_residual"].get<double>());
  }
  return {all && worst <= 1e-9, "max relative residual " + fmt(worst)};
}

Outcome exact_potential(const Workspace& ws) {
  double worst = 0.0;
  for (const char* mode : {"zero", "ones"}) {
    const std::string sol = ws.path(std::string("solution_") + mode + ".json");
    const CliResult s = cli({"solve", ws.path("game.json"), "-o", sol, "--zeta", mode});
    if (s.code != 0) return {false, std::string("solve --zeta ") + mode + " exit " + std::to_string(s.code)};
    const CliResult v = cli({"verify", ws.path("game.json"), sol});
    const json doc = json::parse(v.out);
    worst = std::max(worst, doc["max_deviation"].get<double>());
    if (v.code != 0 || !doc["potential"].get<bool>()) {
      return {false, std::string("verify failed for zeta ") + mode};
    }
  }
  return {worst <= 1e-8, "max deviation " + fmt(worst) + " (zeta zero, ones)"};
}

// T_i H_i over int64 from the materialized 0/+-1 entries.
bool kernel_is_exact(const NetworkedGame& g, PlayerId i) {
  const DenseMatrix t = DesignOperator(g, i).materialize();
  const DenseMatrix h = null_space_basis(g, i).materialize();
  if (t.cols() != h.rows()) return false;
  std::vector<std::int64_t> ti(t.entries().begin(), t.entries().end());
  std::vector<std::int64_t> hi(h.entries().begin(), h.entries().end());
  for (std::size_t e = 0; e < ti.size(); ++e) {
    if (static_cast<double>(ti[e]) != t.entries()[e]) return false;
  }
  for (std::size_t e = 0; e < hi.size(); ++e) {
    if (static_cast<double>(hi[e]) != h.entries()[e]) return false;
  }
  std::vector<std::int64_t> row(h.cols());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t m = 0; m < t.cols(); ++m) {
      const std::int64_t a = ti[r * t.cols() + m];
      if (a == 0) continue;
      for (std::size_t c = 0; c < h.cols(); ++c) row[c] += a * hi[m * h.cols() + c];
    }
    for (std::int64_t v : row) {
      if (v != 0) return false;
    }
  }
  return true;
}

Outcome kernel_identity() {
  std::mt19937_64 gen(2024);
  std::size_t systems = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkedGame g = pf_test::random_game(gen, 1 + trial % 4, 3);
    for (PlayerId i = 0; i < g.players(); ++i) {
      if (!kernel_is_exact(g, i)) {
        return {false, "nonzero T_i H_i on random game " + std::to_string(trial)};
      }
      ++systems;
    }
  }
  const DemoConfig demo = build_demo();
  for (PlayerId i = 0; i < 3; ++i) {
    if (!kernel_is_exact(demo.game, i)) return {false, "nonzero T_i H_i on demo"};
    ++systems;
  }
  return {true, std::to_string(systems) + " systems"};
}

Outcome gibbs_oracle() {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<std::size_t> players(2, 4);
  std::uniform_int_distribution<std::size_t> strategies(2, 4);
  double worst = 0.0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> k(players(gen));
    std::size_t total = 1;
    for (auto& c : k) {
      c = std::min(strategies(gen), 256 / total);
      c = std::max<std::size_t>(c, 1);
      total *= c;
    }
    largest = std::max(largest, total);
    const auto pg = pf_test::random_potential_game(gen, k);
    for (double beta : {0.0, 0.5, 2.0}) {
      const StationaryResult r = exact_stationary(pg.game, beta, Learner::kLogit);
      if (!r.irreducible) return {false, "reducible logit chain"};
      worst = std::max(worst, pf_test::max_abs_diff(r.distribution, gibbs(pg.potential, beta)));
    }
  }
  return {worst <= 1e-10, "max gap " + fmt(worst) + ", largest k " + std::to_string(largest)};
}

Outcome concentration(const Workspace& ws) {
  const CliResult r = cli({"stationary", ws.path("game.json"),
                           ws.path("solution_ones.json"), "--beta", "10"});
  if (r.code != 0) return {false, "exit " + std::to_string(r.code) + " " + r.err};
  const double mass = json::parse(r.out)["argmax_mass"].get<double>();
  return {mass > 0.99, "argmax mass " + fmt(mass)};
}

Outcome restricted_convergence() {
  const DemoConfig demo = build_demo();
  const std::vector<double> phi = lift(demo.objective, demo.game.dims());
  const DesignSolution sol = solve_min_norm(demo.game, phi);
  if (!sol.all_feasible()) return {false, "demo design infeasible"};
  std::vector<std::vector<double>> ones;
  for (const PlayerDesign& p : sol.players) ones.emplace_back(p.family_dim, 1.0);
  const NetworkedGame designed = designed_game(demo.game, sol, ones);
  const Strategy target = demo.spec.strategy_of(demo.spec.target);

  RunConfig config;
  config.learner = Learner::kBinaryRestrictive;
  config.schedule = demo.schedule;
  config.restriction = demo.restriction;
  config.init = initial_profile(demo.spec);
  config.steps = demo.steps;
  std::size_t held = 0;
  for (std::uint64_t seed : demo.seeds) {
    config.seed = seed;
    const Trajectory traj = run(designed, demo.objective, config);
    bool ok = true;
    for (std::size_t r = traj.records.size() - 500; r < traj.records.size(); ++r) {
      for (Strategy x : traj.records[r].profile.strategies) ok = ok && x == target;
    }
    held += ok ? 1 : 0;
  }
  const double frac = static_cast<double>(held) / static_cast<double>(demo.seeds.size());
  return {frac >= 0.9, std::to_string(held) + "/" + std::to_string(demo.seeds.size()) +
                           " seeds held (3,3) for the final 500 steps"};
}

// phi(x1, x2, x3) = f(x1, x2) + g(x2, x3) iff for each x2 the 2x2 slice
// has zero interaction term.
bool separable_oracle(const std::vector<double>& phi) {
  for (std::size_t b = 0; b < 2; ++b) {
    auto at = [&](std::size_t a, std::size_t c) { return phi[a * 4 + b * 2 + c]; };
    if (at(1, 1) - at(1, 0) - at(0, 1) + at(0, 0) != 0.0) return false;
  }
  return true;
}

Outcome infeasibility() {
  const NetworkedGame g = pf_test::line_game({2, 2, 2});
  std::vector<double> phi(8, 0.0);
  phi[0b101] = phi[0b111] = 1.0;
  const bool oracle_feasible = separable_oracle(phi);
  const std::vector<Feasibility> f = check_existence(g, phi);
  bool augmented_jumps = true;
  for (PlayerId i : {PlayerId{0}, PlayerId{2}}) {
    const RankDiagnostics r = rank_diagnostics(g, i, std::span<const double>(phi));
    augmented_jumps = augmented_jumps && r.augmented_rank &&
                      *r.augmented_rank == r.measured_rank + 1;
  }
  const bool pass = !oracle_feasible && augmented_jumps && !f[0].feasible &&
                    !f[2].feasible && f[1].feasible &&
                    f[0].relative_residual > 0.1 && f[2].relative_residual > 0.1;
  return {pass, "relative residuals " + fmt(f[0].relative_residual) + ", " +
                    fmt(f[1].relative_residual) + ", " + fmt(f[2].relative_residual)};
}

Outcome rank_report(const Workspace& ws) {
  const NetworkedGame g = pf_test::line_game({2, 2, 2});
  const RankDiagnostics r = rank_diagnostics(g, 0);
  std::vector<double> phi(8, 0.0);
  phi[0b101] = phi[0b111] = 1.0;
  write_text_file(ws.path("line.json"),
                  game_file_to_json(g, GameFunction::full(g.dims(), phi)));
  const CliResult c = cli({"check", ws.path("line.json"), "--rank"});
  const json rank = json::parse(c.out)["players"][0]["rank"];
  const bool reported = rank["measured"] == 6 && rank["neighborhood_formula"] == 2 &&
                        rank["counting_formula"] == 6;
  return {r.measured_rank == 6 && r.neighborhood_formula == 2 &&
              r.counting_formula == 6 && reported,
          "measured " + std::to_string(r.measured_rank) + ", formulas " +
              std::to_string(r.neighborhood_formula) + " / " +
              std::to_string(r.counting_formula)};
}

Outcome ring_performance() {
  const NetworkedGame g = pf_test::ring_game(6, 4);
  const Dims& d = g.dims();
  // Sum of random edge functions, so every player's system is consistent.
  std::mt19937_64 gen(11);
  std::vector<double> phi(d.total(), 0.0);
  for (PlayerId i = 0; i < 6; ++i) {
    const std::vector<double> w = pf_test::random_vector(gen, 16);
    const PlayerId j = (i + 1) % 6;
    for (std::size_t x = 0; x < phi.size(); ++x) {
      const Profile p = profile_decode(x, d);
      phi[x] += w[p[i] * 4 + p[j]];
    }
  }
  DesignOptions free_opts;
  free_opts.method = SolveMethod::kMatrixFree;
  const auto t0 = std::chrono::steady_clock::now();
  const DesignSolution mf = solve_min_norm(g, phi, free_opts);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  DesignOptions dense_opts;
  dense_opts.method = SolveMethod::kDense;
  dense_opts.dense_entries = std::size_t{1} << 24;
  const DesignSolution dense = solve_min_norm(g, phi, dense_opts);
  double gap = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    gap = std::max(gap, pf_test::max_abs_diff(mf.players[i].xi1, dense.players[i].xi1));
    gap = std::max(gap, pf_test::max_abs_diff(mf.players[i].xi2, dense.players[i].xi2));
  }
  return {mf.all_feasible() && secs < 10.0 && gap <= 1e-9,
          "matrix-free " + fmt(secs) + " s, max |xi gap| vs dense SVD " + fmt(gap)};
}

}  // namespace

int main() {
  Workspace ws;
  write_demo_files(ws);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "demo feasibility", 5, [&] { return demo_feasible(ws); }},
      {2, "exact potential reproduction", 5, [&] { return exact_potential(ws); }},
      {3, "kernel identity", 10, kernel_identity},
      {4, "Gibbs oracle", 30, gibbs_oracle},
      {5, "stochastic-stability concentration", 30, [&] { return concentration(ws); }},
      {6, "restricted learning reaches (3,3)", 60, restricted_convergence},
      {7, "infeasibility detection", 1, infeasibility},
      {8, "rank diagnostics", 1, [&] { return rank_report(ws); }},
      {9, "ring k=4096 matrix-free solve", 1e9, ring_performance},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": "
              << c.name << " (" << fmt(secs) << " s"
              << (in_time ? "" : ", over budget") << ") " << o.detail << '\n';
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
