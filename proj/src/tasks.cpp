#include "mazelab/tasks.hpp"

#include <algorithm>
#include <array>

#include "mazelab/error.hpp"
#include "mazelab/oracle.hpp"

namespace mazelab {

namespace {

const std::array<std::string, kNumTaskKinds> kTaskNames = {
    "multigoals", "conditional_goals", "exclusion",  "switches",
    "light_key",  "goto",              "goto_hidden", "push_block",
    "push_block_cardinal", "blocked_door"};

int get_var(const DifficultyVars& vars, const std::string& name, int fallback) {
  auto it = vars.find(name);
  return it == vars.end() ? fallback : it->second;
}

std::string coord_word(char axis, int v) {
  return std::string(1, axis) + "=" + std::to_string(v);
}

// Cells with no items at all, excluding the agent's cell.
std::vector<Position> empty_cells(const GameState& s) {
  std::vector<Position> out;
  for (int y = 0; y < s.height; ++y)
    for (int x = 0; x < s.width; ++x) {
      Position p{x, y};
      if (s.at(p).empty() && !(p == s.agent)) out.push_back(p);
    }
  return out;
}

std::vector<Position> take_cells(std::vector<Position> pool, std::size_t n, Rng& rng) {
  if (pool.size() < n)
    throw GenerationError("not enough free cells for task items");
  rng.shuffle(pool);
  pool.resize(n);
  return pool;
}

std::vector<int> shuffled_names(int n, Rng& rng) {
  std::vector<int> names(n);
  for (int i = 0; i < n; ++i) names[i] = i;
  rng.shuffle(names);
  return names;
}

void place_goal(GameState& s, Position p, int name) {
  Item g;
  g.kind = ItemKind::Goal;
  g.name = name;
  s.at(p).push_back(g);
}

const char* ordinal_word(int i) {
  static const char* words[] = {"first", "second", "third"};
  return words[i];
}

WorldGenConfig pinned_world(const DifficultyVars& vars, TaskKind kind) {
  const bool push = kind == TaskKind::PushBlock || kind == TaskKind::PushBlockCardinal;
  WorldGenConfig cfg;
  const int h = get_var(vars, "height", push ? 5 : 7);
  const int w = get_var(vars, "width", push ? 5 : 7);
  const int bp = get_var(vars, "block_pct", 0);
  const int wp = get_var(vars, "water_pct", 0);
  cfg.height_min = cfg.height_max = h;
  cfg.width_min = cfg.width_max = w;
  cfg.block_pct_min = cfg.block_pct_max = bp;
  cfg.water_pct_min = cfg.water_pct_max = wp;
  return cfg;
}

void build_multigoals(GameState& s, const DifficultyVars& vars, Rng& rng,
                      bool hard) {
  const int n_goals = get_var(vars, "n_goals", 3);
  const int n_active = std::clamp(get_var(vars, "n_active", 1), 1, n_goals);
  auto cells = take_cells(empty_cells(s), n_goals, rng);
  auto names = shuffled_names(n_goals, rng);
  for (int i = 0; i < n_goals; ++i) place_goal(s, cells[i], names[i]);

  auto order = names;
  rng.shuffle(order);
  order.resize(n_active);
  s.task_state.goal_order = order;
  for (int i = 0; i < n_active; ++i)
    s.infos.push_back({{"visit", ordinal_word(i), goal_word(order[i])}});
  if (hard) {
    s.expose_visited = false;
    s.breadcrumbs_enabled = true;
  }
}

void build_exclusion(GameState& s, const DifficultyVars& vars, Rng& rng) {
  const int n_goals = get_var(vars, "n_goals", 3);
  const int n_forbidden = std::clamp(get_var(vars, "n_active", 1), 1, n_goals - 1);
  auto cells = take_cells(empty_cells(s), n_goals, rng);
  auto names = shuffled_names(n_goals, rng);
  for (int i = 0; i < n_goals; ++i) place_goal(s, cells[i], names[i]);

  auto picked = names;
  rng.shuffle(picked);
  s.task_state.forbidden_goals.assign(picked.begin(), picked.begin() + n_forbidden);
  s.task_state.required_goals.assign(picked.begin() + n_forbidden, picked.end());
  std::sort(s.task_state.forbidden_goals.begin(), s.task_state.forbidden_goals.end());
  std::sort(s.task_state.required_goals.begin(), s.task_state.required_goals.end());

  InfoItem info;
  info.tokens.push_back("avoid");
  for (int g : s.task_state.forbidden_goals) info.tokens.push_back(goal_word(g));
  s.infos.push_back(info);
}

void build_conditional_goals(GameState& s, const DifficultyVars& vars, Rng& rng) {
  const int n_colors = get_var(vars, "n_colors", 2);
  const int n_goals = get_var(vars, "n_goals", 2);
  auto cells = take_cells(empty_cells(s), static_cast<std::size_t>(n_goals) + 1, rng);
  auto names = shuffled_names(n_goals, rng);
  for (int i = 0; i < n_goals; ++i) place_goal(s, cells[i], names[i]);

  Item sw;
  sw.kind = ItemKind::Switch;
  sw.num_states = n_colors;
  sw.color = rng.uniform_int(0, n_colors - 1);
  s.at(cells[n_goals]).push_back(sw);

  s.task_state.cond_color = rng.uniform_int(0, n_colors - 1);
  s.task_state.then_goal = names[rng.uniform_int(0, n_goals - 1)];
  do {
    s.task_state.else_goal = names[rng.uniform_int(0, n_goals - 1)];
  } while (s.task_state.else_goal == s.task_state.then_goal);

  s.infos.push_back({{"if", "switch", color_word(s.task_state.cond_color), "goto",
                      goal_word(s.task_state.then_goal)}});
  s.infos.push_back({{"else", "goto", goal_word(s.task_state.else_goal)}});
}

void build_switches(GameState& s, const DifficultyVars& vars, Rng& rng) {
  const int n_switches = get_var(vars, "n_switches", 1);
  const int n_colors = get_var(vars, "n_colors", 2);
  auto cells = take_cells(empty_cells(s), n_switches, rng);
  for (Position p : cells) {
    Item sw;
    sw.kind = ItemKind::Switch;
    sw.num_states = n_colors;
    sw.color = rng.uniform_int(0, n_colors - 1);
    s.at(p).push_back(sw);
  }
  s.infos.push_back({{"toggle", "all", "switch", "same", "color"}});
}

// Shared by LightKey and BlockedDoor: a full wall with a single gap. The
// wall is rebuilt over whatever blocks/water generate_world placed there.
// Returns the gap cell; `vertical` walls split the grid into west/east.
Position build_wall(GameState& s, bool vertical, Rng& rng) {
  const int line = vertical ? rng.uniform_int(1, s.width - 2)
                            : rng.uniform_int(1, s.height - 2);
  const int span = vertical ? s.height : s.width;
  const int gap = rng.uniform_int(0, span - 1);
  for (int i = 0; i < span; ++i) {
    Position p = vertical ? Position{line, i} : Position{i, line};
    s.at(p).clear();
    if (i != gap) s.at(p).push_back({ItemKind::Block});
  }
  return vertical ? Position{line, gap} : Position{gap, line};
}

int wall_side(Position p, Position gap, bool vertical) {
  const int d = vertical ? p.x - gap.x : p.y - gap.y;
  return d < 0 ? -1 : (d > 0 ? 1 : 0);
}

// Goal side is a fair coin, then a uniform cell within that side; falls back
// to the other side when the chosen one has no free cell.
Position pick_on_side(const std::vector<Position>& cells, Position gap,
                      bool vertical, int agent_side, Rng& rng) {
  const int want = rng.chance(0.5) ? agent_side : -agent_side;
  for (int side : {want, -want}) {
    std::vector<Position> pool;
    for (Position p : cells)
      if (wall_side(p, gap, vertical) == side) pool.push_back(p);
    if (!pool.empty()) return rng.pick(pool);
  }
  throw GenerationError("wall task: no free cell for the goal");
}

void build_light_key(GameState& s, const DifficultyVars& vars, Rng& rng) {
  const int n_colors = std::max(2, get_var(vars, "n_colors", 2));
  const bool vertical = rng.chance(0.5);
  const Position gap = build_wall(s, vertical, rng);

  Item door;
  door.kind = ItemKind::Door;
  door.color = rng.uniform_int(0, n_colors - 1);
  s.at(gap).push_back(door);

  auto cells = empty_cells(s);
  // The world generator's agent pick may now sit under the wall.
  std::erase_if(cells, [&](Position p) { return wall_side(p, gap, vertical) == 0; });
  rng.shuffle(cells);
  if (cells.empty()) throw GenerationError("light_key: wall left too few cells");
  s.agent = cells.front();
  cells.erase(cells.begin());
  const int agent_side = wall_side(s.agent, gap, vertical);

  std::optional<Position> switch_pos;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (wall_side(cells[i], gap, vertical) == agent_side) {
      switch_pos = cells[i];
      cells.erase(cells.begin() + i);
      break;
    }
  if (!switch_pos) throw GenerationError("light_key: no cell for the switch");
  Item sw;
  sw.kind = ItemKind::Switch;
  sw.num_states = n_colors;
  sw.color = rng.uniform_int(0, n_colors - 1);
  s.at(*switch_pos).push_back(sw);

  const Position goal = pick_on_side(cells, gap, vertical, agent_side, rng);
  place_goal(s, goal, 0);
  s.task_state.target = goal;
  s.infos.push_back({{"goto", goal_word(0)}});
}

void build_blocked_door(GameState& s, const DifficultyVars&, Rng& rng) {
  const bool vertical = rng.chance(0.5);
  const Position gap = build_wall(s, vertical, rng);
  s.at(gap).push_back({ItemKind::PushableBlock});

  // Keep the cells the block can be pushed into clear of clutter.
  const Position axis = vertical ? Position{1, 0} : Position{0, 1};
  for (Position p : {gap + axis, gap - axis})
    if (s.in_bounds(p)) s.at(p).clear();

  auto cells = empty_cells(s);
  std::erase_if(cells, [&](Position p) { return wall_side(p, gap, vertical) == 0; });
  rng.shuffle(cells);
  if (cells.empty()) throw GenerationError("blocked_door: wall left too few cells");
  s.agent = cells.front();
  cells.erase(cells.begin());
  const int agent_side = wall_side(s.agent, gap, vertical);
  const Position goal = pick_on_side(cells, gap, vertical, agent_side, rng);
  place_goal(s, goal, 0);
  s.task_state.target = goal;
  s.infos.push_back({{"goto", goal_word(0)}});
}

void build_goto(GameState& s, const DifficultyVars&, Rng& rng) {
  auto cells = empty_cells(s);
  cells.push_back(s.agent);  // the degenerate instance is legal
  s.task_state.target = rng.pick(cells);
  s.infos.push_back({{"goto", coord_word('x', s.task_state.target.x),
                      coord_word('y', s.task_state.target.y)}});
}

void build_goto_hidden(GameState& s, const DifficultyVars& vars, Rng& rng) {
  const int n_goals = get_var(vars, "n_goals", 2);
  auto cells = take_cells(empty_cells(s), n_goals, rng);
  auto names = shuffled_names(n_goals, rng);
  for (int i = 0; i < n_goals; ++i) {
    s.task_state.hidden_goals.push_back({names[i], cells[i]});
    s.infos.push_back({{goal_word(names[i]), coord_word('x', cells[i].x),
                        coord_word('y', cells[i].y)}});
  }
  s.task_state.target_goal_name = names[rng.uniform_int(0, n_goals - 1)];
  s.infos.push_back({{"goto", goal_word(s.task_state.target_goal_name)}});
}

void build_push_block(GameState& s, const DifficultyVars&, Rng& rng) {
  auto cells = take_cells(empty_cells(s), 2, rng);
  s.at(cells[0]).push_back({ItemKind::PushableBlock});
  Item sw;
  sw.kind = ItemKind::Switch;
  sw.num_states = 2;
  sw.color = 0;
  s.at(cells[1]).push_back(sw);
  s.task_state.target_switch = cells[1];
  s.infos.push_back({{"push", "block", "onto", "switch"}});
}

const char* edge_word(Edge e) {
  switch (e) {
    case Edge::Left: return "left";
    case Edge::Right: return "right";
    case Edge::Top: return "top";
    case Edge::Bottom: return "bottom";
  }
  return "?";
}

bool on_edge(const GameState& s, Position p, Edge e) {
  switch (e) {
    case Edge::Left: return p.x == 0;
    case Edge::Right: return p.x == s.width - 1;
    case Edge::Top: return p.y == s.height - 1;
    case Edge::Bottom: return p.y == 0;
  }
  return false;
}

void build_push_block_cardinal(GameState& s, const DifficultyVars&, Rng& rng) {
  const Edge edge = static_cast<Edge>(rng.uniform_int(0, 3));
  s.task_state.target_edge = edge;
  auto cells = empty_cells(s);
  std::erase_if(cells, [&](Position p) { return on_edge(s, p, edge); });
  if (cells.empty()) throw GenerationError("push_block_cardinal: no cell for block");
  s.at(rng.pick(cells)).push_back({ItemKind::PushableBlock});
  s.infos.push_back({{"push", "block", edge_word(edge)}});
}

int current_switch_color(const GameState& s) {
  for (Position p : s.find_all(ItemKind::Switch))
    return s.find_kind(p, ItemKind::Switch)->color;
  return -1;
}

int conditional_target(const GameState& s) {
  return current_switch_color(s) == s.task_state.cond_color
             ? s.task_state.then_goal
             : s.task_state.else_goal;
}

void mark_visited(GameState& s, int name) {
  auto& visited = s.task_state.visited_goals;
  auto it = std::lower_bound(visited.begin(), visited.end(), name);
  if (it == visited.end() || *it != name) visited.insert(it, name);
  if (s.expose_visited) {
    for (Position p : s.find_all(ItemKind::Goal)) {
      Item* g = s.find_kind(p, ItemKind::Goal);
      if (g->name == name) g->visited = true;
    }
  }
}

}  // namespace

std::string goal_word(int name) { return "g" + std::to_string(name + 1); }
std::string color_word(int color) { return "c" + std::to_string(color + 1); }

const std::string& task_name(TaskKind kind) {
  return kTaskNames[static_cast<int>(kind)];
}

std::optional<TaskKind> task_from_name(const std::string& name) {
  for (int i = 0; i < kNumTaskKinds; ++i)
    if (kTaskNames[i] == name) return static_cast<TaskKind>(i);
  return std::nullopt;
}

std::vector<VarSpec> task_var_specs(TaskKind kind) {
  const bool push = kind == TaskKind::PushBlock || kind == TaskKind::PushBlockCardinal;
  std::vector<VarSpec> specs;
  specs.push_back({"height", push ? 3 : 5, push ? 7 : 10, 1});
  specs.push_back({"width", push ? 3 : 5, push ? 7 : 10, 1});
  specs.push_back({"block_pct", 0, push ? 10 : 20, 2});
  specs.push_back({"water_pct", 0, push ? 10 : 20, 2});
  switch (kind) {
    case TaskKind::Multigoals:
    case TaskKind::Exclusion:
      specs.push_back({"n_goals", 2, 6, 1});
      specs.push_back({"n_active", 1, 3, 1});
      break;
    case TaskKind::ConditionalGoals:
      specs.push_back({"n_colors", 2, 6, 1});
      specs.push_back({"n_goals", 2, 6, 1});
      break;
    case TaskKind::Switches:
      specs.push_back({"n_switches", 1, 5, 1});
      specs.push_back({"n_colors", 1, 6, 1});
      break;
    case TaskKind::LightKey:
      specs.push_back({"n_colors", 2, 6, 1});
      break;
    case TaskKind::GotoHidden:
      specs.push_back({"n_goals", 1, 6, 1});
      break;
    default:
      break;
  }
  return specs;
}

DifficultyVars sample_full_range(TaskKind kind, Rng& rng) {
  DifficultyVars vars;
  for (const VarSpec& spec : task_var_specs(kind))
    vars[spec.name] = rng.uniform_int(spec.min_value, spec.abs_max);
  return vars;
}

GameState generate_instance(TaskKind kind, const DifficultyVars& vars, Rng& rng,
                            const TaskGenOptions& opts) {
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    GameState s;
    try {
      s = generate_world(pinned_world(vars, kind), rng);
      s.task = kind;
      s.max_steps = opts.max_steps;
      switch (kind) {
        case TaskKind::Multigoals:
          build_multigoals(s, vars, rng, opts.hard_multigoals);
          break;
        case TaskKind::ConditionalGoals: build_conditional_goals(s, vars, rng); break;
        case TaskKind::Exclusion: build_exclusion(s, vars, rng); break;
        case TaskKind::Switches: build_switches(s, vars, rng); break;
        case TaskKind::LightKey: build_light_key(s, vars, rng); break;
        case TaskKind::Goto: build_goto(s, vars, rng); break;
        case TaskKind::GotoHidden: build_goto_hidden(s, vars, rng); break;
        case TaskKind::PushBlock: build_push_block(s, vars, rng); break;
        case TaskKind::PushBlockCardinal: build_push_block_cardinal(s, vars, rng); break;
        case TaskKind::BlockedDoor: build_blocked_door(s, vars, rng); break;
      }
    } catch (const GenerationError&) {
      continue;  // crowded draw; resample
    }
    auto est = oracle::estimated_optimal(kind, s);
    if (!est || est->actions > s.max_steps) continue;
    s.optimal_reward = est->reward;
    check_initial_done(s);
    return s;
  }
  throw GenerationError("generate_instance: no solvable " + task_name(kind) +
                        " instance after " + std::to_string(opts.max_attempts) +
                        " attempts");
}

bool task_is_done(const GameState& s) {
  switch (s.task) {
    case TaskKind::Multigoals:
      return s.task_state.next_goal >=
             static_cast<int>(s.task_state.goal_order.size());
    case TaskKind::Exclusion:
      return s.task_state.visited_goals.size() >= s.task_state.required_goals.size();
    case TaskKind::ConditionalGoals: {
      const Item* g = s.find_kind(s.agent, ItemKind::Goal);
      return g && g->name == conditional_target(s);
    }
    case TaskKind::Switches: {
      int color = -2;
      for (Position p : s.find_all(ItemKind::Switch)) {
        const int c = s.find_kind(p, ItemKind::Switch)->color;
        if (color == -2) color = c;
        if (c != color) return false;
      }
      return true;
    }
    case TaskKind::LightKey:
    case TaskKind::BlockedDoor:
    case TaskKind::Goto:
      return s.agent == s.task_state.target;
    case TaskKind::GotoHidden:
      for (const auto& [name, pos] : s.task_state.hidden_goals)
        if (name == s.task_state.target_goal_name) return s.agent == pos;
      return false;
    case TaskKind::PushBlock: {
      auto blocks = s.find_all(ItemKind::PushableBlock);
      return !blocks.empty() && blocks[0] == s.task_state.target_switch;
    }
    case TaskKind::PushBlockCardinal: {
      auto blocks = s.find_all(ItemKind::PushableBlock);
      return !blocks.empty() && on_edge(s, blocks[0], s.task_state.target_edge);
    }
  }
  return false;
}

TaskHookResult task_step_hook(GameState& s, const Action&) {
  TaskHookResult r;
  switch (s.task) {
    case TaskKind::Multigoals: {
      auto& ts = s.task_state;
      const Item* g = s.find_kind(s.agent, ItemKind::Goal);
      if (g && ts.next_goal < static_cast<int>(ts.goal_order.size()) &&
          g->name == ts.goal_order[ts.next_goal]) {
        mark_visited(s, g->name);
        ts.next_goal += 1;
      }
      break;
    }
    case TaskKind::Exclusion: {
      const Item* g = s.find_kind(s.agent, ItemKind::Goal);
      if (g) {
        const auto& forb = s.task_state.forbidden_goals;
        if (std::binary_search(forb.begin(), forb.end(), g->name))
          r.penalty += 0.5;
        else
          mark_visited(s, g->name);
      }
      break;
    }
    case TaskKind::ConditionalGoals: {
      const Item* g = s.find_kind(s.agent, ItemKind::Goal);
      if (g && g->name != conditional_target(s)) r.penalty += 0.2;
      break;
    }
    default:
      break;
  }
  r.done = task_is_done(s);
  r.success = r.done;
  return r;
}

}  // namespace mazelab
