#pragma once

// Gridworld consensus instances: agents on a grid with obstacles must gather
// at a target cell while each agent only observes its communication
// neighbors and can only move one cell at a time.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "potentialforge/game.hpp"
#include "potentialforge/learning.hpp"

namespace potentialforge {

// 1-based grid coordinates (a, b) with 1 <= a <= width, 1 <= b <= height.
struct Cell {
  std::size_t a = 1;
  std::size_t b = 1;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

enum class Neighborhood {
  kVonNeumann,  // stay + 4 moves at Euclidean distance 1
  kMoore,       // stay + 8 moves at Chebyshev distance 1
};

struct GridSpec {
  std::size_t width = 3;
  std::size_t height = 3;
  std::vector<Cell> obstacles{{2, 2}};
  Cell target{3, 3};
  std::size_t agents = 3;
  // Undirected communication edges between 1-based agent ids.
  std::vector<std::pair<std::size_t, std::size_t>> comm_edges{{1, 2}, {2, 3}};
  // Start cell per agent. These defaults are a convention of this tool.
  std::vector<Cell> initial{{1, 1}, {1, 3}, {3, 1}};
  Neighborhood moves = Neighborhood::kVonNeumann;

  // Throws InvalidGame when the spec breaks its invariants.
  void validate() const;

  std::size_t cells() const noexcept { return width * height; }
  // Cell (a, b) is strategy (a-1)*height + (b-1): lexicographic over the
  // (width, height) coordinate pair.
  Strategy strategy_of(Cell c) const;
  Cell cell_of(Strategy s) const;
  bool is_obstacle(Cell c) const;
};

// Strategy-space dims and line-graph-style neighbor sets from the edges.
NetworkedGame build_game(const GridSpec& spec);

// phi(x) = number of agents at the target, as a full-scope function built
// from per-agent indicator functions lifted to the whole profile space.
GameFunction build_objective(const GridSpec& spec);

// R(cell) = {cell} plus in-grid, obstacle-free neighbor cells. Obstacle
// cells map to themselves only.
Restriction build_restriction(const GridSpec& spec);

Profile initial_profile(const GridSpec& spec);

struct DemoConfig {
  GridSpec spec;
  NetworkedGame game;  // without utilities
  GameFunction objective;
  Restriction restriction;
  BetaSchedule schedule = BetaSchedule::linear(0.02);
  std::uint64_t steps = 10000;
  std::vector<std::uint64_t> seeds;
};

// The three-agent 3x3 instance with an obstacle at the centre, target (3,3),
// line communication graph 1-2-3, beta = 0.02 t, 10000 steps, seeds 1..50.
DemoConfig build_demo();
DemoConfig build_demo(GridSpec spec);

std::string grid_spec_to_json(const GridSpec& spec);
// Throws ParseError naming the offending field.
GridSpec grid_spec_from_json(const std::string& text);

}  // namespace potentialforge
