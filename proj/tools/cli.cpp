#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "potentialforge/consensus.hpp"
#include "potentialforge/design.hpp"
#include "potentialforge/error.hpp"
#include "potentialforge/game.hpp"
#include "potentialforge/io.hpp"
#include "potentialforge/learning.hpp"
#include "potentialforge/stationary.hpp"

namespace potentialforge::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Carries an exit code out of a command.
class Exit : public std::runtime_error {
 public:
  Exit(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

std::string read_input(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw Exit(kInputError, e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  try {
    write_text_file(path, text);
  } catch (const Error& e) {
    throw Exit(kInputError, e.what());
  }
}

GameFile load_game(const std::string& path, const Limits& limits) {
  return parse_game_file(read_input(path), limits);
}

const GameFunction& require_objective(const GameFile& file) {
  if (!file.objective) throw ParseError("objective", "missing field");
  return *file.objective;
}

NetworkedGame attach_utilities(const NetworkedGame& g,
                               const std::string& path) {
  std::vector<GameFunction> us = parse_utilities(read_input(path), g.dims());
  try {
    return g.with_utilities(std::move(us));
  } catch (const InvalidGame& e) {
    throw Exit(kInputError, std::string("utilities: ") + e.what());
  }
}

json ones_based(std::span<const PlayerId> players) {
  json out = json::array();
  for (PlayerId j : players) out.push_back(j + 1);
  return out;
}

json profile_json(const Profile& p) {
  json out = json::array();
  for (Strategy x : p.strategies) out.push_back(x + 1);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Exit(kInputError, what + ": not a number: '" + text + "'");
}

// Table file: one "t beta" pair per line (comma or whitespace separated),
// '#' starts a comment.
BetaSchedule parse_table(const std::string& path) {
  std::istringstream in(read_input(path));
  std::vector<std::pair<std::uint64_t, double>> steps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::string t_text, b_text, extra;
    if (!(row >> t_text)) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (!(row >> b_text) || (row >> extra)) {
      throw Exit(kInputError, where + ": expected 't beta'");
    }
    std::uint64_t t = 0;
    try {
      std::size_t used = 0;
      t = std::stoull(t_text, &used);
      if (used != t_text.size() || t_text[0] == '-') throw std::exception();
    } catch (const std::exception&) {
      throw Exit(kInputError, where + ": bad time '" + t_text + "'");
    }
    steps.emplace_back(t, parse_real(b_text, where));
  }
  try {
    return BetaSchedule::table(std::move(steps));
  } catch (const Error& e) {
    throw Exit(kInputError, path + ": " + e.what());
  }
}

BetaSchedule parse_beta(const std::string& expr) {
  const auto colon = expr.find(':');
  const std::string kind = expr.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : expr.substr(colon + 1);
  if (colon == std::string::npos) {
    throw Exit(kInputError,
               "--beta: expected const:<v>, linear:<c> or table:<path>");
  }
  if (kind == "table") return parse_table(arg);
  const double v = parse_real(arg, "--beta");
  if (v < 0.0) throw Exit(kInputError, "--beta: must be >= 0");
  if (kind == "const") return BetaSchedule::constant(v);
  if (kind == "linear") return BetaSchedule::linear(v);
  throw Exit(kInputError, "--beta: unknown schedule '" + kind + "'");
}

// "3,1,7": 1-based strategies, one per player.
Profile parse_init(const std::string& text, const Dims& d) {
  Profile p;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const double v = parse_real(item, "--init");
    if (v < 1 || v != std::floor(v)) {
      throw Exit(kInputError, "--init: strategies are 1-based integers");
    }
    p.strategies.push_back(static_cast<Strategy>(v) - 1);
  }
  try {
    validate_profile(p, d);
  } catch (const InvalidProfile& e) {
    throw Exit(kInputError, std::string("--init: ") + e.what());
  }
  return p;
}

Learner parse_learner(const std::string& name) {
  return name == "brl" ? Learner::kBinaryRestrictive : Learner::kLogit;
}

SolveMethod parse_method(const std::string& name) {
  if (name == "dense") return SolveMethod::kDense;
  if (name == "matrix-free") return SolveMethod::kMatrixFree;
  return SolveMethod::kAuto;
}

json restriction_report_json(const RestrictionReport& r) {
  json out;
  out["reversible"] = r.reversible;
  out["feasible"] = r.feasible;
  out["feasible_on_reachable"] = r.feasible_on_reachable;
  auto pair_json = [](const StrategyPair& p) {
    return json{{"player", p.player + 1},
                {"from", p.from + 1},
                {"to", p.to + 1}};
  };
  if (r.reversibility_witness) {
    out["reversibility_witness"] = pair_json(*r.reversibility_witness);
  }
  if (r.disconnected_pair) {
    out["disconnected_pair"] = pair_json(*r.disconnected_pair);
  }
  json isolated = json::array();
  for (const auto& [i, x] : r.isolated) isolated.push_back({i + 1, x + 1});
  out["isolated"] = isolated;
  return out;
}

// Parses and validates a restriction; unusable ones end the command.
Restriction load_restriction(const std::string& path, const Dims& d,
                             std::ostream& out) {
  Restriction r = [&] {
    try {
      return parse_restriction(read_input(path), d);
    } catch (const InvalidRestriction& e) {
      throw Exit(kSemanticFailure, std::string("restriction: ") + e.what());
    }
  }();
  const RestrictionReport report = validate_restriction(r, d);
  if (!report.usable()) {
    json doc;
    doc["restriction"] = restriction_report_json(report);
    out << doc.dump(1) << "\n";
    throw Exit(kSemanticFailure,
               "restriction is not reversible or not feasible");
  }
  return r;
}

double max_value(std::span<const double> v) {
  return *std::max_element(v.begin(), v.end());
}

bool at_max(double value, double top) {
  return std::fabs(value - top) <= 1e-9 * std::max(1.0, std::fabs(top));
}

// Share of the final tenth of the run (at least one record) spent at
// argmax phi.
double tail_argmax_fraction(const Trajectory& traj, double top) {
  const std::size_t n = traj.records.size();
  const std::size_t window = std::max<std::size_t>(1, (n - 1) / 10);
  std::size_t hits = 0;
  for (std::size_t r = n - window; r < n; ++r) {
    if (at_max(traj.records[r].objective, top)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(window);
}

json trajectory_summary(const Trajectory& traj, double top) {
  json s;
  s["seed"] = traj.seed;
  s["stream"] = traj.stream;
  s["steps"] = traj.records.back().t;
  s["final_profile"] = profile_json(traj.final_profile());
  s["final_phi"] = traj.records.back().objective;
  s["max_phi"] = top;
  s["tail_argmax_fraction"] = tail_argmax_fraction(traj, top);
  return s;
}

std::string trajectory_csv(const Trajectory& traj, const Dims& d) {
  std::ostringstream out;
  write_trajectory_csv(out, traj, d);
  return out.str();
}

std::string replica_path(const std::string& path, std::size_t replica) {
  const fs::path p(path);
  fs::path name = p.stem();
  name += ".r" + std::to_string(replica);
  name += p.extension();
  return (p.parent_path() / name).string();
}

std::vector<ChosenUtility> choose_utilities(
    const NetworkedGame& g, const DesignSolution& sol, const std::string& mode,
    const std::string& zeta_file) {
  std::vector<std::vector<double>> zetas;
  if (mode == "file") {
    if (zeta_file.empty()) {
      throw Exit(kInputError, "--zeta file needs --zeta-file");
    }
    json doc;
    try {
      doc = json::parse(read_input(zeta_file));
    } catch (const json::exception& e) {
      throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("zeta") || !doc["zeta"].is_array() ||
        doc["zeta"].size() != g.players()) {
      throw ParseError("zeta", "expected one array per player");
    }
    for (std::size_t i = 0; i < g.players(); ++i) {
      const json& z = doc["zeta"][i];
      const std::string field = "zeta[" + std::to_string(i) + "]";
      if (!z.is_array() || z.size() != sol.players[i].family_dim) {
        throw ParseError(field, "expected " +
                                    std::to_string(sol.players[i].family_dim) +
                                    " numbers");
      }
      std::vector<double> v;
      for (const json& e : z) {
        if (!e.is_number()) throw ParseError(field, "expected numbers");
        v.push_back(e.get<double>());
      }
      zetas.push_back(std::move(v));
    }
  } else {
    const double fill = mode == "ones" ? 1.0 : 0.0;
    for (const PlayerDesign& p : sol.players) {
      zetas.emplace_back(p.family_dim, fill);
    }
  }
  std::vector<ChosenUtility> chosen;
  for (std::size_t i = 0; i < g.players(); ++i) {
    chosen.push_back({zetas[i], family_member(g, sol, i, zetas[i])});
  }
  return chosen;
}

NetworkedGame game_with(const NetworkedGame& g,
                        const std::vector<ChosenUtility>& chosen) {
  std::vector<GameFunction> us;
  for (PlayerId i = 0; i < g.players(); ++i) {
    const auto scope = g.closed_neighborhood(i);
    us.emplace_back(g.dims(), std::vector<PlayerId>(scope.begin(), scope.end()),
                    chosen[i].values);
  }
  return g.with_utilities(std::move(us));
}

json design_report(const DesignSolution& sol) {
  json players = json::array();
  for (const PlayerDesign& p : sol.players) {
    players.push_back({{"player", p.player + 1},
                       {"scope", ones_based(p.scope)},
                       {"residual", p.residual},
                       {"relative_residual", p.relative_residual},
                       {"feasible", p.feasible},
                       {"iterations", p.iterations}});
  }
  json doc;
  doc["tolerance"] = sol.tolerance;
  doc["objective_norm"] = sol.objective_norm;
  doc["feasible"] = sol.all_feasible();
  doc["players"] = players;
  return doc;
}

json potential_report(const PotentialCheck& check, double tol) {
  json players = json::array();
  for (std::size_t i = 0; i < check.player_deviation.size(); ++i) {
    players.push_back(
        {{"player", i + 1}, {"deviation", check.player_deviation[i]}});
  }
  json doc;
  doc["tolerance"] = tol;
  doc["potential"] = check.potential;
  doc["max_deviation"] = check.max_deviation;
  doc["players"] = players;
  return doc;
}

// --- commands -------------------------------------------------------------

struct CheckArgs {
  std::string game;
  double tol = 1e-9;
  std::string method = "auto";
  bool rank = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const Limits limits = Limits::from_environment();
  const GameFile file = load_game(a.game, limits);
  const std::vector<double> phi =
      lift(require_objective(file), file.game.dims(), limits);
  DesignOptions opt;
  opt.tolerance = a.tol;
  opt.method = parse_method(a.method);
  opt.limits = limits;
  const DesignSolution sol = solve_min_norm(file.game, phi, opt);
  json doc = design_report(sol);
  if (a.rank) {
    for (std::size_t i = 0; i < sol.players.size(); ++i) {
      try {
        const RankDiagnostics r = rank_diagnostics(
            file.game, i, std::span<const double>(phi), limits);
        doc["players"][i]["rank"] = {
            {"measured", r.measured_rank},
            {"neighborhood_formula", r.neighborhood_formula},
            {"counting_formula", r.counting_formula},
            {"augmented", r.augmented_rank.value_or(0)}};
      } catch (const DimensionOverflow& e) {
        err << "note: rank of player " << i + 1 << " skipped: " << e.what()
            << "\n";
      }
    }
  }
  out << doc.dump(1) << "\n";
  if (!sol.all_feasible()) {
    err << "note: no local-information utilities make the objective a "
           "potential\n";
    return kSemanticFailure;
  }
  return kOk;
}

struct SolveArgs {
  std::string game;
  std::string output;
  double tol = 1e-9;
  std::string zeta = "zero";
  std::string zeta_file;
  std::string method = "auto";
  bool allow_infeasible = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Limits limits = Limits::from_environment();
  const GameFile file = load_game(a.game, limits);
  const std::vector<double> phi =
      lift(require_objective(file), file.game.dims(), limits);
  DesignOptions opt;
  opt.tolerance = a.tol;
  opt.method = parse_method(a.method);
  opt.limits = limits;
  const DesignSolution sol = solve_min_norm(file.game, phi, opt);
  if (!sol.all_feasible() && !a.allow_infeasible) {
    out << design_report(sol).dump(1) << "\n";
    err << "note: infeasible; pass --allow-infeasible for the least-squares "
           "fit\n";
    return kSemanticFailure;
  }
  const std::vector<ChosenUtility> chosen =
      choose_utilities(file.game, sol, a.zeta, a.zeta_file);
  const std::string text = design_solution_to_json(sol, chosen, a.zeta);
  if (a.output.empty()) {
    out << text;
  } else {
    write_output(a.output, text);
    json doc = design_report(sol);
    doc["output"] = a.output;
    out << doc.dump(1) << "\n";
  }
  return kOk;
}

struct VerifyArgs {
  std::string game;
  std::string utilities;
  double tol = kDefaultPotentialTolerance;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Limits limits = Limits::from_environment();
  const GameFile file = load_game(a.game, limits);
  const GameFunction& phi = require_objective(file);
  const NetworkedGame g = attach_utilities(file.game, a.utilities);
  const PotentialCheck check = is_potential_with(g, phi, a.tol, limits);
  out << potential_report(check, a.tol).dump(1) << "\n";
  if (!check.potential) {
    err << "note: the objective is not an exact potential of these "
           "utilities\n";
    return kSemanticFailure;
  }
  return kOk;
}

struct SimulateArgs {
  std::string game;
  std::string utilities;
  std::string learner = "logit";
  std::string beta = "const:1";
  std::uint64_t steps = 1000;
  std::uint64_t seed = 1;
  std::string init;
  std::string restriction;
  std::string traj_out;
  std::size_t replicas = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Limits limits = Limits::from_environment();
  const GameFile file = load_game(a.game, limits);
  const GameFunction& phi = require_objective(file);
  const NetworkedGame g = attach_utilities(file.game, a.utilities);
  const Dims& d = g.dims();

  RunConfig config;
  config.learner = parse_learner(a.learner);
  config.schedule = parse_beta(a.beta);
  config.steps = a.steps;
  config.seed = a.seed;
  config.init = a.init.empty() ? profile_decode(0, d) : parse_init(a.init, d);
  if (config.learner == Learner::kBinaryRestrictive) {
    if (a.restriction.empty()) {
      throw Exit(kInputError, "--restriction is required for learner brl");
    }
    config.restriction = load_restriction(a.restriction, d, out);
  } else if (!a.restriction.empty()) {
    err << "note: --restriction ignored by the logit learner\n";
  }

  std::vector<std::future<Trajectory>> jobs;
  for (std::size_t r = 0; r < a.replicas; ++r) {
    RunConfig c = config;
    c.stream = r;
    jobs.push_back(std::async(a.replicas > 1 ? std::launch::async
                                             : std::launch::deferred,
                              [&g, &phi, c] { return run(g, phi, c); }));
  }
  std::vector<Trajectory> trajectories;
  for (auto& job : jobs) trajectories.push_back(job.get());

  const double top = max_value(lift(phi, d, limits));
  json summaries = json::array();
  for (std::size_t r = 0; r < trajectories.size(); ++r) {
    json s = trajectory_summary(trajectories[r], top);
    if (!a.traj_out.empty()) {
      const std::string path =
          a.replicas > 1 ? replica_path(a.traj_out, r) : a.traj_out;
      write_output(path, trajectory_csv(trajectories[r], d));
      s["trajectory"] = path;
    }
    summaries.push_back(std::move(s));
  }
  json doc;
  doc["learner"] = a.learner;
  doc["beta"] = a.beta;
  if (a.replicas == 1) {
    doc.update(summaries[0]);
  } else {
    doc["replicas"] = summaries;
  }
  out << doc.dump(1) << "\n";
  return kOk;
}

struct StationaryArgs {
  std::string game;
  std::string utilities;
  std::string beta = "1";
  std::string learner = "logit";
  std::string restriction;
  std::size_t max_states = kDefaultMaxStates;
};

int cmd_stationary(const StationaryArgs& a, std::ostream& out,
                   std::ostream& err) {
  const Limits limits = Limits::from_environment();
  const GameFile file = load_game(a.game, limits);
  const NetworkedGame g = attach_utilities(file.game, a.utilities);
  const Dims& d = g.dims();
  const std::string beta_text =
      a.beta.rfind("const:", 0) == 0 ? a.beta.substr(6) : a.beta;
  const double beta = parse_real(beta_text, "--beta");
  if (beta < 0.0) throw Exit(kInputError, "--beta: must be >= 0");
  const Learner learner = parse_learner(a.learner);
  std::optional<Restriction> restriction;
  if (learner == Learner::kBinaryRestrictive) {
    if (a.restriction.empty()) {
      throw Exit(kInputError, "--restriction is required for learner brl");
    }
    restriction = load_restriction(a.restriction, d, out);
  }
  if (d.total() > a.max_states) {
    throw Exit(kSemanticFailure, "profile space has " +
                                     std::to_string(d.total()) +
                                     " states, above --max-states " +
                                     std::to_string(a.max_states));
  }
  const StationaryResult result =
      exact_stationary(g, beta, learner, restriction, a.max_states);

  std::optional<std::vector<double>> potential;
  if (file.objective) potential = lift(*file.objective, d, limits);

  json doc;
  doc["learner"] = a.learner;
  doc["beta"] = beta;
  doc["states"] = d.total();
  doc["irreducible"] = result.irreducible;
  double gap = 0.0;
  json components = json::array();
  std::vector<double> gibbs_full(d.total(), 0.0);
  for (const StationaryComponent& c : result.components) {
    json entry;
    json states = json::array();
    for (std::size_t s : c.states) states.push_back(s + 1);
    entry["states"] = states;
    entry["probabilities"] = c.probabilities;
    if (potential) {
      std::vector<double> local;
      for (std::size_t s : c.states) local.push_back((*potential)[s]);
      const std::vector<double> mu = gibbs(local, beta);
      double g_gap = 0.0;
      for (std::size_t s = 0; s < mu.size(); ++s) {
        g_gap = std::max(g_gap, std::fabs(mu[s] - c.probabilities[s]));
        gibbs_full[c.states[s]] = mu[s];
      }
      entry["gibbs_gap"] = g_gap;
      gap = std::max(gap, g_gap);
    }
    components.push_back(std::move(entry));
  }
  if (!result.distribution.empty()) {
    doc["distribution"] = result.distribution;
    if (potential) {
      doc["gibbs"] = gibbs_full;
      const double top = max_value(*potential);
      double mass = 0.0;
      for (std::size_t s = 0; s < d.total(); ++s) {
        if (at_max((*potential)[s], top)) mass += result.distribution[s];
      }
      doc["argmax_mass"] = mass;
    }
  } else {
    err << "note: chain has " << result.components.size()
        << " closed classes; see components\n";
  }
  if (potential) doc["gap"] = gap;
  doc["components"] = components;
  out << doc.dump(1) << "\n";
  return kOk;
}

struct DemoArgs {
  std::string out_dir;
  std::string grid;
  std::uint64_t seed = 1;
  std::uint64_t steps = 10000;
  std::size_t seeds = 1;
  std::string moves;
  std::string zeta = "ones";
};

// Every record of the final `window` steps has all agents at the target.
bool held_target(const Trajectory& traj, const Profile& goal,
                 std::size_t window) {
  const std::size_t n = traj.records.size();
  const std::size_t from = n > window ? n - window : 0;
  for (std::size_t r = from; r < n; ++r) {
    if (traj.records[r].profile != goal) return false;
  }
  return true;
}

int cmd_demo(const DemoArgs& a, std::ostream& out, std::ostream& err) {
  GridSpec spec;
  if (!a.grid.empty()) spec = grid_spec_from_json(read_input(a.grid));
  if (a.moves == "moore") spec.moves = Neighborhood::kMoore;
  if (a.moves == "von-neumann") spec.moves = Neighborhood::kVonNeumann;
  DemoConfig demo = [&] {
    try {
      return build_demo(spec);
    } catch (const InvalidGame& e) {
      throw Exit(kInputError, std::string("grid: ") + e.what());
    }
  }();
  demo.steps = a.steps;

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw Exit(kInputError, "cannot create " + a.out_dir);
  const fs::path dir(a.out_dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };

  const Limits limits = Limits::from_environment();
  const Dims& d = demo.game.dims();
  write_output(path("grid.json"), grid_spec_to_json(demo.spec));
  write_output(path("game.json"),
               game_file_to_json(demo.game, demo.objective));
  write_output(path("restriction.json"), restriction_to_json(demo.restriction));

  const std::vector<double> phi = lift(demo.objective, d, limits);
  DesignOptions opt;
  opt.limits = limits;
  const DesignSolution sol = solve_min_norm(demo.game, phi, opt);
  const std::vector<ChosenUtility> chosen =
      choose_utilities(demo.game, sol, a.zeta, "");
  write_output(path("solution.json"),
               design_solution_to_json(sol, chosen, a.zeta));

  json summary;
  summary["grid"] = json::parse(grid_spec_to_json(demo.spec));
  summary["design"] = design_report(sol);
  summary["restriction"] = restriction_report_json(
      validate_restriction(demo.restriction, d));
  if (!sol.all_feasible()) {
    out << summary.dump(1) << "\n";
    err << "note: the grid objective is not designable on this graph\n";
    return kSemanticFailure;
  }
  const NetworkedGame designed = game_with(demo.game, chosen);
  const PotentialCheck check = is_potential_with(
      designed, demo.objective, kDefaultPotentialTolerance, limits);
  summary["verify"] = potential_report(check, kDefaultPotentialTolerance);

  RunConfig config;
  config.learner = Learner::kBinaryRestrictive;
  config.schedule = demo.schedule;
  config.restriction = demo.restriction;
  config.init = initial_profile(demo.spec);
  config.steps = demo.steps;

  const Profile goal(std::vector<Strategy>(
      demo.spec.agents, demo.spec.strategy_of(demo.spec.target)));
  const double top = max_value(phi);
  constexpr std::size_t kHoldWindow = 500;
  std::size_t held = 0;
  json runs = json::array();
  for (std::size_t s = 0; s < std::max<std::size_t>(1, a.seeds); ++s) {
    config.seed = a.seed + s;
    const Trajectory traj = run(designed, demo.objective, config);
    const bool ok = held_target(traj, goal, kHoldWindow);
    held += ok ? 1 : 0;
    json r = trajectory_summary(traj, top);
    r["held_target"] = ok;
    runs.push_back(std::move(r));
    if (s != 0) continue;

    write_output(path("trajectory.csv"), trajectory_csv(traj, d));
    for (std::size_t i = 0; i < demo.spec.agents; ++i) {
      std::ostringstream csv;
      csv << "t,a,b\n";
      for (const TrajectoryRecord& rec : traj.records) {
        const Cell c = demo.spec.cell_of(rec.profile[i]);
        csv << rec.t << ',' << c.a << ',' << c.b << '\n';
      }
      write_output(path("agent_" + std::to_string(i + 1) + ".csv"), csv.str());
    }
  }
  summary["schedule"] = "linear:0.02";
  summary["steps"] = demo.steps;
  summary["hold_window"] = kHoldWindow;
  summary["runs"] = runs;
  summary["held_fraction"] =
      static_cast<double>(held) / static_cast<double>(runs.size());
  const std::string text = summary.dump(1) + "\n";
  write_output(path("summary.json"), text);
  out << text;
  return check.potential ? kOk : kSemanticFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Local-information utility design and learning dynamics for "
               "networked potential games",
               "potentialforge"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide whether utilities exist");
  c->add_option("game", check.game, "Game file with objective")->required();
  c->add_option("--tol", check.tol, "Relative residual tolerance")
      ->check(CLI::PositiveNumber);
  c->add_option("--method", check.method, "auto | dense | matrix-free")
      ->check(CLI::IsMember({"auto", "dense", "matrix-free"}));
  c->add_flag("--rank", check.rank, "Add rank diagnostics per player");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Write a design-solution file");
  s->add_option("game", solve.game, "Game file with objective")->required();
  s->add_option("-o,--out", solve.output, "Output file (default stdout)");
  s->add_option("--tol", solve.tol, "Relative residual tolerance")
      ->check(CLI::PositiveNumber);
  s->add_option("--zeta", solve.zeta, "zero | ones | file")
      ->check(CLI::IsMember({"zero", "ones", "file"}));
  s->add_option("--zeta-file", solve.zeta_file,
                "JSON {\"zeta\": [[...], ...]} for --zeta file");
  s->add_option("--method", solve.method, "auto | dense | matrix-free")
      ->check(CLI::IsMember({"auto", "dense", "matrix-free"}));
  s->add_flag("--allow-infeasible", solve.allow_infeasible,
              "Write the least-squares fit even when infeasible");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check the objective is a potential");
  v->add_option("game", verify.game, "Game file with objective")->required();
  v->add_option("utilities", verify.utilities, "Utilities or solution file")
      ->required();
  v->add_option("--tol", verify.tol, "Deviation tolerance")
      ->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* m = app.add_subcommand("simulate", "Run learning dynamics");
  m->add_option("game", sim.game, "Game file with objective")->required();
  m->add_option("utilities", sim.utilities, "Utilities or solution file")
      ->required();
  m->add_option("--learner", sim.learner, "logit | brl")
      ->check(CLI::IsMember({"logit", "brl"}));
  m->add_option("--beta", sim.beta, "const:<v> | linear:<c> | table:<path>");
  m->add_option("--steps", sim.steps, "Number of steps");
  m->add_option("--seed", sim.seed, "RNG seed");
  m->add_option("--init", sim.init, "Initial strategies, 1-based, e.g. 1,3,7");
  m->add_option("--restriction", sim.restriction, "Restriction file (brl)");
  m->add_option("--traj-out", sim.traj_out, "Trajectory CSV path");
  m->add_option("--replicas", sim.replicas, "Independent chains")
      ->check(CLI::PositiveNumber);

  StationaryArgs st;
  auto* t = app.add_subcommand("stationary", "Exact stationary distribution");
  t->add_option("game", st.game, "Game file (objective used as reference)")
      ->required();
  t->add_option("utilities", st.utilities, "Utilities or solution file")
      ->required();
  t->add_option("--beta", st.beta, "Fixed beta (or const:<v>)");
  t->add_option("--learner", st.learner, "logit | brl")
      ->check(CLI::IsMember({"logit", "brl"}));
  t->add_option("--restriction", st.restriction, "Restriction file (brl)");
  t->add_option("--max-states", st.max_states, "State cap")
      ->check(CLI::PositiveNumber);

  DemoArgs demo;
  auto* e = app.add_subcommand("demo", "Gridworld consensus end to end");
  e->add_option("--out-dir", demo.out_dir, "Output directory")->required();
  e->add_option("--grid", demo.grid, "Grid spec JSON (default 3x3 instance)");
  e->add_option("--seed", demo.seed, "First RNG seed");
  e->add_option("--steps", demo.steps, "Steps per run");
  e->add_option("--seeds", demo.seeds, "Number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  e->add_option("--moves", demo.moves, "von-neumann | moore")
      ->check(CLI::IsMember({"von-neumann", "moore"}));
  e->add_option("--zeta", demo.zeta, "zero | ones")
      ->check(CLI::IsMember({"zero", "ones"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*c) return cmd_check(check, out, err);
    if (*s) return cmd_solve(solve, out, err);
    if (*v) return cmd_verify(verify, out, err);
    if (*m) return cmd_simulate(sim, out, err);
    if (*t) return cmd_stationary(st, out, err);
    if (*e) return cmd_demo(demo, out, err);
  } catch (const Exit& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.code();
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kInputError;
  } catch (const SolverFailure& ex) {
    err << "error: " << ex.what() << " (best residual "
        << format_double(ex.best_residual()) << ")\n";
    return kSolverFailure;
  } catch (const DimensionOverflow& ex) {
    err << "error: " << ex.what() << "\n";
    return kSemanticFailure;
  } catch (const InvalidRestriction& ex) {
    err << "error: " << ex.what() << "\n";
    return kSemanticFailure;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace potentialforge::cli
