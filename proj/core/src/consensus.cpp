#include "potentialforge/consensus.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

using nlohmann::json;

std::string cell_text(Cell c) {
  return "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

bool inside(const GridSpec& s, Cell c) {
  return c.a >= 1 && c.a <= s.width && c.b >= 1 && c.b <= s.height;
}

json cell_json(Cell c) { return json::array({c.a, c.b}); }

Cell cell_from(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer() || v[0].get<long long>() < 1 ||
      v[1].get<long long>() < 1) {
    throw ParseError(field, "expected a cell [a, b] with positive integers");
  }
  return {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
}

std::vector<Cell> cells_from(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of cells");
  std::vector<Cell> out;
  for (std::size_t a = 0; a < v.size(); ++a) {
    out.push_back(cell_from(v[a], field + "[" + std::to_string(a) + "]"));
  }
  return out;
}

std::size_t count_from(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError(key, "missing field");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(key, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

void GridSpec::validate() const {
  if (width < 1 || height < 1 || cells() < 2) {
    throw InvalidGame("grid needs at least two cells");
  }
  if (agents < 1) throw InvalidGame("need at least one agent");
  for (Cell o : obstacles) {
    if (!inside(*this, o)) {
      throw InvalidGame("obstacle " + cell_text(o) + " outside the grid");
    }
  }
  if (!inside(*this, target)) {
    throw InvalidGame("target " + cell_text(target) + " outside the grid");
  }
  if (is_obstacle(target)) throw InvalidGame("target is an obstacle");
  if (initial.size() != agents) {
    throw InvalidGame("need one initial cell per agent");
  }
  for (Cell c : initial) {
    if (!inside(*this, c)) {
      throw InvalidGame("initial cell " + cell_text(c) + " outside the grid");
    }
    if (is_obstacle(c)) {
      throw InvalidGame("initial cell " + cell_text(c) + " is an obstacle");
    }
  }
  for (const auto& [u, v] : comm_edges) {
    if (u < 1 || u > agents || v < 1 || v > agents) {
      throw InvalidGame("communication edge references an unknown agent");
    }
    if (u == v) throw InvalidGame("communication graph has a self-loop");
  }
}

Strategy GridSpec::strategy_of(Cell c) const {
  if (!inside(*this, c)) {
    throw InvalidProfile("cell " + cell_text(c) + " outside the grid");
  }
  return static_cast<Strategy>((c.a - 1) * height + (c.b - 1));
}

Cell GridSpec::cell_of(Strategy s) const {
  if (s >= cells()) throw InvalidProfile("strategy outside the grid");
  return {s / height + 1, s % height + 1};
}

bool GridSpec::is_obstacle(Cell c) const {
  return std::find(obstacles.begin(), obstacles.end(), c) != obstacles.end();
}

NetworkedGame build_game(const GridSpec& spec) {
  spec.validate();
  std::vector<std::vector<PlayerId>> neighbors(spec.agents);
  for (const auto& [u, v] : spec.comm_edges) {
    neighbors[u - 1].push_back(v - 1);
    neighbors[v - 1].push_back(u - 1);
  }
  for (auto& n : neighbors) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return NetworkedGame(
      Dims(std::vector<std::size_t>(spec.agents, spec.cells())),
      std::move(neighbors));
}

GameFunction build_objective(const GridSpec& spec) {
  spec.validate();
  const Dims d(std::vector<std::size_t>(spec.agents, spec.cells()));
  const Strategy goal = spec.strategy_of(spec.target);
  std::vector<double> phi(d.total(), 0.0);
  for (PlayerId i = 0; i < spec.agents; ++i) {
    std::vector<double> indicator(spec.cells(), 0.0);
    indicator[goal] = 1.0;
    const std::vector<double> lifted =
        lift(GameFunction(d, {i}, std::move(indicator)), d);
    for (std::size_t x = 0; x < phi.size(); ++x) phi[x] += lifted[x];
  }
  return GameFunction::full(d, std::move(phi));
}

Restriction build_restriction(const GridSpec& spec) {
  spec.validate();
  const Dims d(std::vector<std::size_t>(spec.agents, spec.cells()));
  std::vector<std::vector<Strategy>> per_cell(spec.cells());
  for (Strategy s = 0; s < spec.cells(); ++s) {
    const Cell c = spec.cell_of(s);
    per_cell[s].push_back(s);
    if (spec.is_obstacle(c)) continue;
    for (long da = -1; da <= 1; ++da) {
      for (long db = -1; db <= 1; ++db) {
        if (da == 0 && db == 0) continue;
        if (spec.moves == Neighborhood::kVonNeumann && da != 0 && db != 0) {
          continue;
        }
        const long a = static_cast<long>(c.a) + da;
        const long b = static_cast<long>(c.b) + db;
        if (a < 1 || b < 1) continue;
        const Cell n{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
        if (!inside(spec, n) || spec.is_obstacle(n)) continue;
        per_cell[s].push_back(spec.strategy_of(n));
      }
    }
  }
  return Restriction(d, std::vector<std::vector<std::vector<Strategy>>>(
                            spec.agents, per_cell));
}

Profile initial_profile(const GridSpec& spec) {
  spec.validate();
  Profile p;
  for (Cell c : spec.initial) p.strategies.push_back(spec.strategy_of(c));
  return p;
}

DemoConfig build_demo() { return build_demo(GridSpec{}); }

DemoConfig build_demo(GridSpec spec) {
  spec.validate();
  DemoConfig demo;
  demo.game = build_game(spec);
  demo.objective = build_objective(spec);
  demo.restriction = build_restriction(spec);
  demo.seeds.resize(50);
  for (std::size_t s = 0; s < demo.seeds.size(); ++s) demo.seeds[s] = s + 1;
  demo.spec = std::move(spec);
  return demo;
}

std::string grid_spec_to_json(const GridSpec& spec) {
  json doc;
  doc["width"] = spec.width;
  doc["height"] = spec.height;
  json obstacles = json::array();
  for (Cell o : spec.obstacles) obstacles.push_back(cell_json(o));
  doc["obstacles"] = obstacles;
  doc["target"] = cell_json(spec.target);
  doc["agents"] = spec.agents;
  json edges = json::array();
  for (const auto& [u, v] : spec.comm_edges) edges.push_back({u, v});
  doc["comm_edges"] = edges;
  json initial = json::array();
  for (Cell c : spec.initial) initial.push_back(cell_json(c));
  doc["initial"] = initial;
  if (spec.moves == Neighborhood::kMoore) doc["moves"] = "moore";
  return doc.dump() + "\n";
}

GridSpec grid_spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "expected a JSON object");
  GridSpec spec;
  spec.width = count_from(doc, "width");
  spec.height = count_from(doc, "height");
  spec.agents = count_from(doc, "agents");
  if (doc.contains("obstacles")) {
    spec.obstacles = cells_from(doc.at("obstacles"), "obstacles");
  }
  if (!doc.contains("target")) throw ParseError("target", "missing field");
  spec.target = cell_from(doc.at("target"), "target");
  if (!doc.contains("comm_edges")) {
    throw ParseError("comm_edges", "missing field");
  }
  spec.comm_edges.clear();
  const json& edges = doc.at("comm_edges");
  if (!edges.is_array()) throw ParseError("comm_edges", "expected an array");
  for (std::size_t a = 0; a < edges.size(); ++a) {
    const Cell e = cell_from(edges[a], "comm_edges[" + std::to_string(a) + "]");
    spec.comm_edges.emplace_back(e.a, e.b);
  }
  if (!doc.contains("initial")) throw ParseError("initial", "missing field");
  spec.initial = cells_from(doc.at("initial"), "initial");
  if (doc.contains("moves")) {
    const json& m = doc.at("moves");
    if (m == "moore") {
      spec.moves = Neighborhood::kMoore;
    } else if (m == "von_neumann") {
      spec.moves = Neighborhood::kVonNeumann;
    } else {
      throw ParseError("moves", "expected \"von_neumann\" or \"moore\"");
    }
  }
  try {
    spec.validate();
  } catch (const InvalidGame& e) {
    throw ParseError("", e.what());
  }
  return spec;
}

}  // namespace potentialforge
