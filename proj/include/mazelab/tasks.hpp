#ifndef MAZELAB_TASKS_HPP
#define MAZELAB_TASKS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mazelab/grid.hpp"

namespace mazelab {

// Sampled difficulty values for one instance, keyed by variable name
// ("height", "width", "block_pct", "water_pct", "n_goals", "n_active",
// "n_colors", "n_switches"). Percentages are integer percent.
using DifficultyVars = std::map<std::string, int>;

// One adjustable difficulty variable; the curriculum moves cur_max within
// [min_value, abs_max] and sampling draws uniform integers in
// [min_value, cur_max].
struct VarSpec {
  std::string name;
  int min_value = 0;
  int abs_max = 0;
  int step = 1;
};

// Difficulty variables for a task, in sampling order.
std::vector<VarSpec> task_var_specs(TaskKind kind);

// Default difficulty values: every variable at its abs_max upper bound gets
// sampled over the full range.
DifficultyVars sample_full_range(TaskKind kind, Rng& rng);

const std::string& task_name(TaskKind kind);
std::optional<TaskKind> task_from_name(const std::string& name);

struct TaskGenOptions {
  bool hard_multigoals = false;  // no auto visited flag; breadcrumb action enabled
  int max_steps = 50;
  int max_attempts = 20;  // solvability retries before giving up
};

// Builds a solvable instance of `kind` at the sampled difficulty: base world,
// task items, instruction InfoItems, task state, oracle solvability check
// (the optimal reward is stored on the returned state). Throws
// GenerationError when no solvable layout is found within max_attempts.
GameState generate_instance(TaskKind kind, const DifficultyVars& vars, Rng& rng,
                            const TaskGenOptions& opts = {});

struct TaskHookResult {
  double penalty = 0.0;  // extra negative reward magnitude for this step
  bool done = false;
  bool success = false;
};

// Per-step task rules, called by apply_action after the action resolved:
// goal-visit bookkeeping, wrong-goal penalties, termination predicates.
TaskHookResult task_step_hook(GameState& state, const Action& action);

// Termination predicate alone (no flag updates, no penalties); used for the
// spawn-time check and by search code.
bool task_is_done(const GameState& state);

// Goal vocabulary limits: names g1..g6, colors c1..c6.
inline constexpr int kMaxGoals = 6;
inline constexpr int kMaxColors = 6;

std::string goal_word(int name);    // 0 -> "g1"
std::string color_word(int color);  // 0 -> "c1"

}  // namespace mazelab

#endif  // MAZELAB_TASKS_HPP
