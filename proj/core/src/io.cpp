#include "potentialforge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "potentialforge/error.hpp"

namespace potentialforge {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(path + key, "missing field");
  }
  return obj.at(key);
}

const json& require_array(const json& obj, const std::string& key,
                          const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) throw ParseError(path + key, "expected an array");
  return v;
}

std::size_t as_count(const json& v, const std::string& field,
                     std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<std::size_t>() < min_value) {
    throw ParseError(field, "expected an integer >= " +
                                std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  return v.get<double>();
}

std::vector<double> as_reals(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    out.push_back(as_real(v[a], field + "[" + std::to_string(a) + "]"));
  }
  return out;
}

// 1-based player ids -> sorted zero-based ids.
std::vector<PlayerId> as_players(const json& v, const std::string& field,
                                 std::size_t n) {
  if (!v.is_array()) throw ParseError(field, "expected an array of players");
  std::vector<PlayerId> out;
  for (std::size_t a = 0; a < v.size(); ++a) {
    const std::string f = field + "[" + std::to_string(a) + "]";
    const std::size_t id = as_count(v[a], f, 1);
    if (id > n) {
      throw ParseError(f, "player " + std::to_string(id) + " out of range 1.." +
                              std::to_string(n));
    }
    out.push_back(id - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

json players_to_json(std::span<const PlayerId> players) {
  json out = json::array();
  for (PlayerId j : players) out.push_back(j + 1);
  return out;
}

json reals_to_json(std::span<const double> xs) {
  return json(std::vector<double>(xs.begin(), xs.end()));
}

GameFunction function_from_json(const json& entry, const std::string& path,
                                 const Dims& d) {
  std::vector<PlayerId> scope =
      as_players(require(entry, "scope", path), path + "scope", d.players());
  std::vector<double> values =
      as_reals(require(entry, "values", path), path + "values");
  try {
    return GameFunction(d, std::move(scope), std::move(values));
  } catch (const Error& e) {
    throw ParseError(path + "values", e.what());
  }
}

template <typename Fn>
auto wrap_json_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError("", e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GameFile parse_game_file(const std::string& text, const Limits& limits) {
  return wrap_json_errors([&] {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("", "expected a JSON object");
    const std::size_t n = as_count(require(doc, "players", ""), "players", 1);

    const json& cards = require_array(doc, "cardinalities", "");
    if (cards.size() != n) {
      throw ParseError("cardinalities",
                       "expected " + std::to_string(n) + " entries");
    }
    std::vector<std::size_t> k;
    for (std::size_t j = 0; j < n; ++j) {
      k.push_back(as_count(cards[j],
                           "cardinalities[" + std::to_string(j) + "]", 2));
    }
    Dims dims = [&] {
      try {
        return Dims(std::move(k), limits);
      } catch (const Error& e) {
        throw ParseError("cardinalities", e.what());
      }
    }();

    const json& nb = require_array(doc, "neighbors", "");
    if (nb.size() != n) {
      throw ParseError("neighbors", "expected " + std::to_string(n) + " lists");
    }
    std::vector<std::vector<PlayerId>> neighbors;
    for (std::size_t i = 0; i < n; ++i) {
      neighbors.push_back(
          as_players(nb[i], "neighbors[" + std::to_string(i) + "]", n));
    }
    GameFile file;
    try {
      file.game = NetworkedGame(dims, std::move(neighbors));
    } catch (const InvalidGame& e) {
      throw ParseError("neighbors", e.what());
    }

    if (doc.contains("objective")) {
      const json& obj = doc.at("objective");
      std::vector<double> values;
      if (obj.is_object() && obj.contains("dense")) {
        values = as_reals(obj.at("dense"), "objective.dense");
        if (values.size() != dims.total()) {
          throw ParseError("objective.dense",
                           "expected " + std::to_string(dims.total()) +
                               " values, got " + std::to_string(values.size()));
        }
      } else if (obj.is_object() && obj.contains("sparse")) {
        const json& sp = obj.at("sparse");
        if (!sp.is_object()) {
          throw ParseError("objective.sparse", "expected an object");
        }
        values.assign(dims.total(), 0.0);
        for (const auto& [key, value] : sp.items()) {
          const std::string f = "objective.sparse." + key;
          std::size_t idx = 0;
          try {
            std::size_t used = 0;
            idx = std::stoull(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
          } catch (const std::exception&) {
            throw ParseError(f, "key is not a profile index");
          }
          if (idx < 1 || idx > dims.total()) {
            throw ParseError(f, "profile index out of range 1.." +
                                    std::to_string(dims.total()));
          }
          values[idx - 1] = as_real(value, f);
        }
      } else {
        throw ParseError("objective", "expected {\"dense\":...} or "
                                      "{\"sparse\":...}");
      }
      file.objective = GameFunction::full(dims, std::move(values));
    }

    if (doc.contains("utilities")) {
      const json& us = doc.at("utilities");
      if (!us.is_array() || us.size() != n) {
        throw ParseError("utilities",
                         "expected an array of " + std::to_string(n));
      }
      std::vector<GameFunction> utilities;
      for (std::size_t i = 0; i < n; ++i) {
        utilities.push_back(function_from_json(
            us[i], "utilities[" + std::to_string(i) + "].", dims));
      }
      try {
        file.game = file.game.with_utilities(std::move(utilities));
      } catch (const InvalidGame& e) {
        throw ParseError("utilities", e.what());
      }
    }
    return file;
  });
}

std::string game_file_to_json(const NetworkedGame& g,
                              const std::optional<GameFunction>& objective) {
  json doc;
  doc["players"] = g.players();
  doc["cardinalities"] = std::vector<std::size_t>(
      g.dims().cardinalities().begin(), g.dims().cardinalities().end());
  json nb = json::array();
  for (PlayerId i = 0; i < g.players(); ++i) {
    nb.push_back(players_to_json(g.neighbors(i)));
  }
  doc["neighbors"] = nb;
  if (objective) {
    doc["objective"]["dense"] = reals_to_json(lift(*objective, g.dims()));
  }
  if (g.has_utilities()) {
    json us = json::array();
    for (const GameFunction& c : g.utilities()) {
      us.push_back({{"scope", players_to_json(c.scope())},
                    {"values", reals_to_json(c.values())}});
    }
    doc["utilities"] = us;
  }
  return doc.dump(1) + "\n";
}

std::string design_solution_to_json(const DesignSolution& solution,
                                    const std::vector<ChosenUtility>& chosen,
                                    const std::string& zeta_mode) {
  json doc;
  doc["tolerance"] = solution.tolerance;
  doc["objective_norm"] = solution.objective_norm;
  if (!zeta_mode.empty()) doc["zeta_mode"] = zeta_mode;
  json players = json::array();
  for (std::size_t a = 0; a < solution.players.size(); ++a) {
    const PlayerDesign& p = solution.players[a];
    json entry;
    entry["player"] = p.player + 1;
    entry["scope"] = players_to_json(p.scope);
    entry["xi1"] = reals_to_json(p.xi1);
    entry["xi2"] = reals_to_json(p.xi2);
    entry["residual"] = p.residual;
    entry["relative_residual"] = p.relative_residual;
    entry["feasible"] = p.feasible;
    entry["family_dim"] = p.family_dim;
    if (a < chosen.size()) {
      entry["zeta"] = reals_to_json(chosen[a].zeta);
      entry["utility"] = reals_to_json(chosen[a].values);
    }
    players.push_back(std::move(entry));
  }
  doc["players"] = players;
  return doc.dump(1) + "\n";
}

DesignSolution parse_design_solution(const std::string& text) {
  return wrap_json_errors([&] {
    const json doc = parse_json(text);
    DesignSolution s;
    s.tolerance = as_real(require(doc, "tolerance", ""), "tolerance");
    s.objective_norm =
        as_real(require(doc, "objective_norm", ""), "objective_norm");
    const json& players = require_array(doc, "players", "");
    for (std::size_t a = 0; a < players.size(); ++a) {
      const std::string path = "players[" + std::to_string(a) + "].";
      const json& e = players[a];
      PlayerDesign p;
      p.player = as_count(require(e, "player", path), path + "player", 1) - 1;
      p.scope = as_players(require(e, "scope", path), path + "scope",
                           std::numeric_limits<std::size_t>::max());
      p.xi1 = as_reals(require(e, "xi1", path), path + "xi1");
      p.xi2 = as_reals(require(e, "xi2", path), path + "xi2");
      p.residual = as_real(require(e, "residual", path), path + "residual");
      p.relative_residual =
          e.contains("relative_residual")
              ? as_real(e.at("relative_residual"), path + "relative_residual")
              : 0.0;
      const json& f = require(e, "feasible", path);
      if (!f.is_boolean()) throw ParseError(path + "feasible", "expected bool");
      p.feasible = f.get<bool>();
      if (e.contains("family_dim")) {
        p.family_dim = as_count(e.at("family_dim"), path + "family_dim", 1);
      }
      s.players.push_back(std::move(p));
    }
    return s;
  });
}

std::vector<GameFunction> parse_utilities(const std::string& text,
                                          const Dims& d) {
  return wrap_json_errors([&] {
    const json doc = parse_json(text);
    std::vector<GameFunction> out;
    if (doc.is_object() && doc.contains("players")) {
      const json& players = require_array(doc, "players", "");
      if (players.size() != d.players()) {
        throw ParseError("players", "expected " +
                                        std::to_string(d.players()) +
                                        " entries");
      }
      out.resize(d.players());
      std::vector<bool> seen(d.players(), false);
      for (std::size_t a = 0; a < players.size(); ++a) {
        const std::string path = "players[" + std::to_string(a) + "].";
        const json& e = players[a];
        const std::size_t id =
            as_count(require(e, "player", path), path + "player", 1);
        if (id > d.players() || seen[id - 1]) {
          throw ParseError(path + "player", "invalid or repeated player id");
        }
        seen[id - 1] = true;
        std::vector<PlayerId> scope =
            as_players(require(e, "scope", path), path + "scope", d.players());
        const char* key = e.contains("utility") ? "utility" : "xi1";
        std::vector<double> values =
            as_reals(require(e, key, path), path + key);
        try {
          out[id - 1] = GameFunction(d, std::move(scope), std::move(values));
        } catch (const Error& err) {
          throw ParseError(path + key, err.what());
        }
      }
      return out;
    }
    const json& us = require_array(doc, "utilities", "");
    if (us.size() != d.players()) {
      throw ParseError("utilities",
                       "expected " + std::to_string(d.players()) + " entries");
    }
    for (std::size_t i = 0; i < us.size(); ++i) {
      out.push_back(function_from_json(
          us[i], "utilities[" + std::to_string(i) + "].", d));
    }
    return out;
  });
}

std::string restriction_to_json(const Restriction& r) {
  json sets = json::array();
  for (PlayerId i = 0; i < r.players(); ++i) {
    json player = json::array();
    for (Strategy x = 0; x < r.strategies(i); ++x) {
      json allowed = json::array();
      for (Strategy y : r.available(i, x)) allowed.push_back(y + 1);
      player.push_back(allowed);
    }
    sets.push_back(player);
  }
  json doc;
  doc["sets"] = sets;
  return doc.dump() + "\n";
}

Restriction parse_restriction(const std::string& text, const Dims& d) {
  return wrap_json_errors([&] {
    const json doc = parse_json(text);
    const json& sets = require_array(doc, "sets", "");
    std::vector<std::vector<std::vector<Strategy>>> out(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string pf = "sets[" + std::to_string(i) + "]";
      if (!sets[i].is_array()) throw ParseError(pf, "expected an array");
      for (std::size_t x = 0; x < sets[i].size(); ++x) {
        const std::string sf = pf + "[" + std::to_string(x) + "]";
        const json& allowed = sets[i][x];
        if (!allowed.is_array()) throw ParseError(sf, "expected an array");
        std::vector<Strategy> set;
        for (std::size_t a = 0; a < allowed.size(); ++a) {
          set.push_back(static_cast<Strategy>(
              as_count(allowed[a], sf + "[" + std::to_string(a) + "]", 1) -
              1));
        }
        out[i].push_back(std::move(set));
      }
    }
    return Restriction(d, std::move(out));
  });
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const Dims& d) {
  out << "t,beta,player,profile_index";
  for (std::size_t j = 1; j <= d.players(); ++j) out << ",x_" << j;
  out << ",phi\n";
  for (const TrajectoryRecord& r : trajectory.records) {
    out << r.t << ',' << format_double(r.beta) << ','
        << (r.player ? *r.player + 1 : 0) << ','
        << profile_encode(r.profile, d) + 1;
    for (Strategy x : r.profile.strategies) out << ',' << x + 1;
    out << ',' << format_double(r.objective) << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace potentialforge
