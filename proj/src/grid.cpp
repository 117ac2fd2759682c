#include "mazelab/grid.hpp"

#include <algorithm>

#include "mazelab/error.hpp"
#include "mazelab/tasks.hpp"

namespace mazelab {

bool GameState::has_kind(Position p, ItemKind k) const {
  return find_kind(p, k) != nullptr;
}

const Item* GameState::find_kind(Position p, ItemKind k) const {
  if (!in_bounds(p)) return nullptr;
  for (const Item& it : at(p))
    if (it.kind == k) return &it;
  return nullptr;
}

Item* GameState::find_kind(Position p, ItemKind k) {
  return const_cast<Item*>(static_cast<const GameState*>(this)->find_kind(p, k));
}

std::vector<Position> GameState::find_all(ItemKind k) const {
  std::vector<Position> out;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (has_kind({x, y}, k)) out.push_back({x, y});
  return out;
}

Position move_delta(Action::Kind kind) {
  switch (kind) {
    case Action::Kind::MoveN:
    case Action::Kind::PushN:
      return {0, 1};
    case Action::Kind::MoveS:
    case Action::Kind::PushS:
      return {0, -1};
    case Action::Kind::MoveE:
    case Action::Kind::PushE:
      return {1, 0};
    case Action::Kind::MoveW:
    case Action::Kind::PushW:
      return {-1, 0};
    default:
      return {0, 0};
  }
}

std::string action_name(const Action& a) {
  switch (a.kind) {
    case Action::Kind::MoveN: return "move_n";
    case Action::Kind::MoveS: return "move_s";
    case Action::Kind::MoveE: return "move_e";
    case Action::Kind::MoveW: return "move_w";
    case Action::Kind::Toggle: return "toggle";
    case Action::Kind::PushN: return "push_n";
    case Action::Kind::PushS: return "push_s";
    case Action::Kind::PushE: return "push_e";
    case Action::Kind::PushW: return "push_w";
    case Action::Kind::Breadcrumb: return "breadcrumb";
    case Action::Kind::Attack: return "attack_" + std::to_string(a.target);
  }
  return "?";
}

std::optional<Action> action_from_name(const std::string& name) {
  static const std::pair<const char*, Action::Kind> table[] = {
      {"move_n", Action::Kind::MoveN},   {"move_s", Action::Kind::MoveS},
      {"move_e", Action::Kind::MoveE},   {"move_w", Action::Kind::MoveW},
      {"toggle", Action::Kind::Toggle},  {"push_n", Action::Kind::PushN},
      {"push_s", Action::Kind::PushS},   {"push_e", Action::Kind::PushE},
      {"push_w", Action::Kind::PushW},   {"breadcrumb", Action::Kind::Breadcrumb},
  };
  for (const auto& [n, k] : table)
    if (name == n) return Action{k};
  if (name.rfind("attack_", 0) == 0) {
    try {
      return Action{Action::Kind::Attack, std::stoi(name.substr(7))};
    } catch (...) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<Action> maze_action_set(bool with_breadcrumb) {
  std::vector<Action> out = {
      {Action::Kind::MoveN},  {Action::Kind::MoveS}, {Action::Kind::MoveE},
      {Action::Kind::MoveW},  {Action::Kind::Toggle}, {Action::Kind::PushN},
      {Action::Kind::PushS},  {Action::Kind::PushE}, {Action::Kind::PushW},
  };
  if (with_breadcrumb) out.push_back({Action::Kind::Breadcrumb});
  return out;
}

GameState generate_world(const WorldGenConfig& cfg, Rng& rng) {
  GameState s;
  s.height = rng.uniform_int(cfg.height_min, cfg.height_max);
  s.width = rng.uniform_int(cfg.width_min, cfg.width_max);
  s.cells.assign(static_cast<std::size_t>(s.width) * s.height, {});
  s.rng = rng;  // per-instance stream, forked from the caller's

  const Position corners[4] = {
      {0, 0}, {s.width - 1, 0}, {0, s.height - 1}, {s.width - 1, s.height - 1}};
  for (Position c : corners) s.at(c).push_back({ItemKind::Corner});

  // Cells eligible for blocks/water: everything except the corners.
  std::vector<Position> free;
  for (int y = 0; y < s.height; ++y)
    for (int x = 0; x < s.width; ++x)
      if (s.at({x, y}).empty()) free.push_back({x, y});
  rng.shuffle(free);

  const int n_cells = s.width * s.height;
  const int block_pct = rng.uniform_int(cfg.block_pct_min, cfg.block_pct_max);
  const int water_pct = rng.uniform_int(cfg.water_pct_min, cfg.water_pct_max);
  int n_blocks = n_cells * block_pct / 100;
  int n_water = n_cells * water_pct / 100;

  std::size_t i = 0;
  for (; n_blocks > 0 && i < free.size(); --n_blocks, ++i)
    s.at(free[i]).push_back({ItemKind::Block});
  for (; n_water > 0 && i < free.size(); --n_water, ++i)
    s.at(free[i]).push_back({ItemKind::Water});

  if (i >= free.size())
    throw GenerationError("generate_world: no free cell left for the agent");
  s.agent = free[i];
  return s;
}

bool is_passable(const GameState& state, Position pos) {
  if (!state.in_bounds(pos)) return false;
  for (const Item& it : state.at(pos)) {
    switch (it.kind) {
      case ItemKind::Block:
      case ItemKind::PushableBlock:
        return false;
      case ItemKind::Door: {
        // A door is open while some switch shows its color. Instances with
        // doors carry exactly one switch, which is the pairing.
        bool open = false;
        for (Position sp : state.find_all(ItemKind::Switch)) {
          const Item* sw = state.find_kind(sp, ItemKind::Switch);
          if (sw && sw->color == it.color) open = true;
        }
        if (!open) return false;
        break;
      }
      default:
        break;
    }
  }
  return true;
}

bool push_destination_ok(const GameState& state, Position pos,
                         std::optional<Position> exempt) {
  if (!state.in_bounds(pos)) return false;
  if (exempt && pos == *exempt) {
    // PushBlock's target switch cell accepts the block.
    for (const Item& it : state.at(pos))
      if (it.kind != ItemKind::Switch) return false;
    return true;
  }
  return state.at(pos).empty();
}

namespace {

void do_push(GameState& state, Action::Kind kind) {
  const Position d = move_delta(kind);
  const Position block_pos = state.agent + d;
  const Position dest = block_pos + d;
  if (!state.in_bounds(block_pos)) return;
  Item* block = state.find_kind(block_pos, ItemKind::PushableBlock);
  if (!block) return;
  std::optional<Position> exempt;
  if (state.task == TaskKind::PushBlock) exempt = state.task_state.target_switch;
  if (!push_destination_ok(state, dest, exempt)) return;
  auto& from = state.at(block_pos);
  from.erase(std::find_if(from.begin(), from.end(), [](const Item& it) {
    return it.kind == ItemKind::PushableBlock;
  }));
  state.at(dest).push_back({ItemKind::PushableBlock});
}

}  // namespace

StepResult apply_action(GameState& state, const Action& action) {
  if (state.terminated)
    throw UsageError("apply_action: episode already terminated");
  if (action.kind == Action::Kind::Attack)
    throw UsageError("apply_action: Attack is a combat action");

  bool entered_water = false;
  switch (action.kind) {
    case Action::Kind::MoveN:
    case Action::Kind::MoveS:
    case Action::Kind::MoveE:
    case Action::Kind::MoveW: {
      const Position dest = state.agent + move_delta(action.kind);
      if (is_passable(state, dest)) {
        state.agent = dest;
        entered_water = state.has_kind(dest, ItemKind::Water);
      }
      break;
    }
    case Action::Kind::Toggle: {
      if (Item* sw = state.find_kind(state.agent, ItemKind::Switch))
        sw->color = (sw->color + 1) % sw->num_states;
      break;
    }
    case Action::Kind::PushN:
    case Action::Kind::PushS:
    case Action::Kind::PushE:
    case Action::Kind::PushW:
      do_push(state, action.kind);
      break;
    case Action::Kind::Breadcrumb:
      if (state.breadcrumbs_enabled &&
          !state.has_kind(state.agent, ItemKind::Breadcrumb))
        state.at(state.agent).push_back({ItemKind::Breadcrumb});
      break;
    case Action::Kind::Attack:
      break;  // unreachable
  }

  const TaskHookResult hook = task_step_hook(state, action);

  StepResult result;
  result.reward = -0.1 - (entered_water ? 0.2 : 0.0) - hook.penalty;
  state.step += 1;
  state.accumulated_reward += result.reward;

  result.success = hook.done && hook.success;
  result.terminated = hook.done || state.step >= state.max_steps;
  state.terminated = result.terminated;
  state.success = result.success;
  return result;
}

void check_initial_done(GameState& state) {
  if (task_is_done(state)) {
    // Count Multigoals/Exclusion spawn-visits so flags stay consistent; the
    // generators never place the agent on an item, so in practice this only
    // fires for location targets (Goto, GotoHidden) and Switches.
    state.terminated = true;
    state.success = true;
  }
}

}  // namespace mazelab
