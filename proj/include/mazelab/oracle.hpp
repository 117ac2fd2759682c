#ifndef MAZELAB_ORACLE_HPP
#define MAZELAB_ORACLE_HPP

#include <optional>
#include <vector>

#include "mazelab/grid.hpp"

namespace mazelab::oracle {

struct PathResult {
  double cost = 0.0;        // sum of step costs, 0.1 per action +0.2 on water
  int actions = 0;          // number of actions on the best path
  std::vector<Position> path;  // cells visited, from -> target inclusive
};

// Exact least-cost route from `from` to the nearest of `targets` under the
// per-step action cost and water surcharge, on the world as it currently
// stands (doors keep their current open/closed state). Uniform-cost search.
std::optional<PathResult> min_cost_path(const GameState& state, Position from,
                                        const std::vector<Position>& targets);

struct OptimalEstimate {
  double reward = 0.0;  // best achievable total reward (<= 0)
  int actions = 0;      // actions used by the certified solution
  bool exact = true;    // false when the tour came from the 2-opt heuristic
};

// Estimated optimal reward for a generated instance. Exact state-space
// search for single-target and manipulation tasks; exact permutation tours
// up to 6 goals, nearest-neighbour + 2-opt beyond that. Used for relative
// reward reporting and solvability checks, never for training.
std::optional<OptimalEstimate> estimated_optimal(TaskKind kind, const GameState& state);

// Optimal reward divided by achieved reward; 1.0 is optimal, 0.5 means twice
// the optimal cost. Both arguments must be negative.
double relative_reward(double actual, double optimal);

}  // namespace mazelab::oracle

#endif  // MAZELAB_ORACLE_HPP
