#pragma once

// Text file formats. Players, strategies and profile indices are 1-based in
// every file; the in-memory API is zero-based.
//
// Game file (JSON):
//   {"players": n, "cardinalities": [k_1, ...], "neighbors": [[...], ...],
//    "objective": {"dense": [k values]} | {"sparse": {"<index>": v, ...}},
//    "utilities": [{"scope": [...], "values": [...]}, ...]}   (optional)
// Profile indices are lexicographic with player 1 most significant.
//
// Design-solution file (JSON):
//   {"tolerance": t, "objective_norm": r,
//    "players": [{"player": i, "scope": [N_i], "xi1": [...], "xi2": [...],
//                 "residual": r, "feasible": b, ...}, ...]}
//
// Restriction file (JSON):
//   {"sets": [[[allowed strategies from strategy 1], ...], ...]}
//
// Trajectory file (CSV):
//   t,beta,player,profile_index,x_1,...,x_n,phi

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "potentialforge/design.hpp"
#include "potentialforge/game.hpp"
#include "potentialforge/learning.hpp"

namespace potentialforge {

struct GameFile {
  NetworkedGame game;
  std::optional<GameFunction> objective;
};

// Throws ParseError naming the offending field.
GameFile parse_game_file(const std::string& text,
                         const Limits& limits = Limits::defaults());
std::string game_file_to_json(const NetworkedGame& g,
                              const std::optional<GameFunction>& objective);

// Extra per-player data written next to the design solution: the utility
// actually used (a family member) and the zeta that produced it.
struct ChosenUtility {
  std::vector<double> zeta;
  std::vector<double> values;
};

std::string design_solution_to_json(
    const DesignSolution& solution,
    const std::vector<ChosenUtility>& chosen = {},
    const std::string& zeta_mode = "");
DesignSolution parse_design_solution(const std::string& text);

// Utilities from either a design-solution file (the "utility" field when
// present, else xi1) or a file with a game-style "utilities" array.
std::vector<GameFunction> parse_utilities(const std::string& text,
                                          const Dims& d);

std::string restriction_to_json(const Restriction& r);
Restriction parse_restriction(const std::string& text, const Dims& d);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const Dims& d);

// 17 significant digits; reads back as the same double.
std::string format_double(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace potentialforge
