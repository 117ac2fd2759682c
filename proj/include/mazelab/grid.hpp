#ifndef MAZELAB_GRID_HPP
#define MAZELAB_GRID_HPP

#include <optional>
#include <string>
#include <vector>

#include "mazelab/rng.hpp"

namespace mazelab {

// Grid coordinates: x grows East, y grows North. MoveN is (0,+1).
struct Position {
  int x = 0;
  int y = 0;
  bool operator==(const Position&) const = default;
};

inline Position operator+(Position a, Position b) { return {a.x + b.x, a.y + b.y}; }
inline Position operator-(Position a, Position b) { return {a.x - b.x, a.y - b.y}; }

enum class ItemKind {
  Block,
  Water,
  Switch,
  Door,
  PushableBlock,
  Corner,
  Goal,
  Breadcrumb,
};

struct Item {
  ItemKind kind = ItemKind::Block;
  int color = -1;       // Switch: current state; Door: required switch state
  int num_states = 0;   // Switch only: m, cyclic toggle modulus
  int name = -1;        // Goal only: index into g1..g6
  bool visited = false; // Goal only: set when a visit counted for the task
  bool operator==(const Item&) const = default;
};

// Task instructions and facts; no grid location.
struct InfoItem {
  std::vector<std::string> tokens;
  bool operator==(const InfoItem&) const = default;
};

struct Action {
  enum class Kind {
    MoveN,
    MoveS,
    MoveE,
    MoveW,
    Toggle,
    PushN,
    PushS,
    PushE,
    PushW,
    Breadcrumb,
    Attack,
  };
  Kind kind = Kind::MoveN;
  int target = -1;  // Attack only: enemy index
  bool operator==(const Action&) const = default;
};

struct StepResult {
  double reward = 0.0;
  bool terminated = false;
  bool success = false;
};

enum class TaskKind {
  Multigoals,
  ConditionalGoals,
  Exclusion,
  Switches,
  LightKey,
  Goto,
  GotoHidden,
  PushBlock,
  PushBlockCardinal,
  BlockedDoor,
};

inline constexpr int kNumTaskKinds = 10;

// Edges for PushBlockCardinal. Top is the y = height-1 row.
enum class Edge { Left, Right, Top, Bottom };

// Flat record holding the per-task state; which fields are meaningful
// depends on the task kind. Kept as one value type so GameState stays
// copyable and comparable.
struct TaskStateRec {
  // Multigoals: active goal names in required visiting order.
  std::vector<int> goal_order;
  int next_goal = 0;
  // Exclusion.
  std::vector<int> forbidden_goals;
  std::vector<int> required_goals;
  std::vector<int> visited_goals;  // names whose visit counted (also hard-variant bookkeeping)
  // ConditionalGoals: "go to then_goal if the switch is cond_color, else else_goal".
  int cond_color = -1;
  int then_goal = -1;
  int else_goal = -1;
  // Goto / LightKey / BlockedDoor: target cell.
  Position target{-1, -1};
  // GotoHidden: name -> absolute position table, plus the requested name.
  std::vector<std::pair<int, Position>> hidden_goals;
  int target_goal_name = -1;
  // PushBlock: the switch cell the block must reach.
  Position target_switch{-1, -1};
  // PushBlockCardinal.
  Edge target_edge = Edge::Left;

  bool operator==(const TaskStateRec&) const = default;
};

struct GameState {
  int width = 0;
  int height = 0;
  std::vector<std::vector<Item>> cells;  // row-major, index y*width+x
  Position agent{0, 0};
  std::vector<InfoItem> infos;
  int step = 0;
  int max_steps = 50;
  double accumulated_reward = 0.0;
  bool terminated = false;
  bool success = false;
  TaskKind task = TaskKind::Goto;
  TaskStateRec task_state;
  Rng rng;
  // Easy multigoal variants expose the visited flag in observations; the
  // hard variant hides it and enables the Breadcrumb action instead.
  bool expose_visited = true;
  bool breadcrumbs_enabled = false;
  std::optional<double> optimal_reward;  // filled by the generator's oracle check

  bool in_bounds(Position p) const {
    return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
  }
  std::vector<Item>& at(Position p) { return cells[p.y * width + p.x]; }
  const std::vector<Item>& at(Position p) const { return cells[p.y * width + p.x]; }

  bool has_kind(Position p, ItemKind k) const;
  const Item* find_kind(Position p, ItemKind k) const;
  Item* find_kind(Position p, ItemKind k);
  std::vector<Position> find_all(ItemKind k) const;

  bool operator==(const GameState&) const = default;
};

// Sampling ranges for the base world. Degenerate ranges (lo == hi) pin the
// value; fractions are percentages in [0, 20].
struct WorldGenConfig {
  int height_min = 5, height_max = 10;
  int width_min = 5, width_max = 10;
  int block_pct_min = 0, block_pct_max = 20;
  int water_pct_min = 0, water_pct_max = 20;
};

// Builds an empty world: sampled dimensions, Corner items on all four
// corners, random blocks/water, agent on a random item-free passable cell.
// Task items are added afterwards by the task generators.
GameState generate_world(const WorldGenConfig& cfg, Rng& rng);

// False outside the grid and on Block/PushableBlock cells; Door cells are
// passable only while some switch shows the door's color.
bool is_passable(const GameState& state, Position pos);

// True when `pos` can accept a pushed block: in bounds and free of items,
// or equal to `exempt` (PushBlock's target switch cell).
bool push_destination_ok(const GameState& state, Position pos,
                         std::optional<Position> exempt = std::nullopt);

// Applies one action: movement/toggle/push/breadcrumb semantics, then the
// task hook, then reward accounting (-0.1 per action, -0.2 on entering
// water, task penalties) and the step cap. Throws UsageError on a
// terminated state or on an Attack action (combat has its own loop).
StepResult apply_action(GameState& state, const Action& action);

// Runs the task's termination predicate on a freshly generated state, so
// instances that are already solved (e.g. Goto target under the agent)
// terminate with zero reward before any action.
void check_initial_done(GameState& state);

Position move_delta(Action::Kind kind);
std::string action_name(const Action& a);
std::optional<Action> action_from_name(const std::string& name);

// Fixed action set for maze tasks, in model output order. The breadcrumb
// action is appended only when the hard multigoal variant is active.
std::vector<Action> maze_action_set(bool with_breadcrumb);

}  // namespace mazelab

#endif  // MAZELAB_GRID_HPP
