#include "mazelab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "mazelab/error.hpp"
#include "mazelab/tasks.hpp"

namespace mazelab::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeCost {
  double cost = kInf;
  int actions = 0;
  int prev = -1;
};

// Uniform-cost search over an implicit graph. `expand(node, emit)` calls
// emit(next, edge_cost) for each out-edge; every edge is one action.
// Lexicographic (cost, actions) keeps equal-cost results deterministic.
template <typename GoalFn, typename ExpandFn>
std::optional<std::pair<int, std::vector<NodeCost>>> search(
    int n_nodes, int start, GoalFn is_goal, ExpandFn expand) {
  std::vector<NodeCost> best(n_nodes);
  using Entry = std::tuple<double, int, int>;  // cost, actions, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  best[start] = {0.0, 0, -1};
  queue.push({0.0, 0, start});
  while (!queue.empty()) {
    auto [cost, actions, node] = queue.top();
    queue.pop();
    if (cost > best[node].cost ||
        (cost == best[node].cost && actions > best[node].actions))
      continue;
    if (is_goal(node)) return std::make_pair(node, std::move(best));
    expand(node, [&](int next, double edge) {
      const double c = cost + edge;
      const int a = actions + 1;
      if (c < best[next].cost ||
          (c == best[next].cost && a < best[next].actions)) {
        best[next] = {c, a, node};
        queue.push({c, a, next});
      }
    });
  }
  return std::nullopt;
}

int cell_index(const GameState& s, Position p) { return p.y * s.width + p.x; }

Position cell_position(const GameState& s, int idx) {
  return {idx % s.width, idx / s.width};
}

double enter_cost(const GameState& s, Position dest) {
  return 0.1 + (s.has_kind(dest, ItemKind::Water) ? 0.2 : 0.0);
}

constexpr Position kDirs[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};

// Plain grid search with an optional surcharge on entering certain cells
// (Exclusion's forbidden goals).
std::optional<PathResult> grid_path(const GameState& s, Position from,
                                    const std::vector<Position>& targets,
                                    const std::vector<double>* cell_penalty) {
  if (targets.empty()) return std::nullopt;
  std::vector<char> target_mask(static_cast<std::size_t>(s.width) * s.height, 0);
  for (Position t : targets)
    if (s.in_bounds(t)) target_mask[cell_index(s, t)] = 1;

  auto result = search(
      s.width * s.height, cell_index(s, from),
      [&](int node) { return target_mask[node] != 0; },
      [&](int node, auto emit) {
        const Position p = cell_position(s, node);
        for (Position d : kDirs) {
          const Position q = p + d;
          if (!is_passable(s, q)) continue;
          double edge = enter_cost(s, q);
          if (cell_penalty) edge += (*cell_penalty)[cell_index(s, q)];
          emit(cell_index(s, q), edge);
        }
      });
  if (!result) return std::nullopt;

  PathResult out;
  const auto& [goal, best] = *result;
  out.cost = best[goal].cost;
  out.actions = best[goal].actions;
  for (int n = goal; n != -1; n = best[n].prev)
    out.path.push_back(cell_position(s, n));
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

struct Leg {
  double cost;
  int actions;
};

// Open-tour cost over a metric closure: start node 0, visit 1..n once each.
// Exact permutation search up to 6 stops; nearest-neighbour + 2-opt beyond
// (outside this game suite's ranges, kept as a guard).
std::optional<OptimalEstimate> best_tour(const std::vector<std::vector<std::optional<Leg>>>& d) {
  const int n = static_cast<int>(d.size()) - 1;
  if (n == 0) return OptimalEstimate{0.0, 0, true};

  auto tour_cost = [&](const std::vector<int>& order) -> std::optional<Leg> {
    Leg total{0.0, 0};
    int at = 0;
    for (int g : order) {
      const auto& leg = d[at][g];
      if (!leg) return std::nullopt;
      total.cost += leg->cost;
      total.actions += leg->actions;
      at = g;
    }
    return total;
  };

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;

  if (n <= 6) {
    std::optional<Leg> best;
    do {
      auto c = tour_cost(order);
      if (c && (!best || c->cost < best->cost)) best = c;
    } while (std::next_permutation(order.begin(), order.end()));
    if (!best) return std::nullopt;
    return OptimalEstimate{-best->cost, best->actions, true};
  }

  // Nearest neighbour construction.
  std::vector<int> left = order, tour;
  int at = 0;
  while (!left.empty()) {
    int pick = -1;
    double pick_cost = kInf;
    for (std::size_t i = 0; i < left.size(); ++i) {
      const auto& leg = d[at][left[i]];
      if (leg && leg->cost < pick_cost) {
        pick_cost = leg->cost;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) return std::nullopt;
    at = left[pick];
    tour.push_back(at);
    left.erase(left.begin() + pick);
  }
  // 2-opt until no improving segment reversal remains.
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < tour.size(); ++i)
      for (std::size_t j = i + 1; j < tour.size(); ++j) {
        std::vector<int> cand = tour;
        std::reverse(cand.begin() + i, cand.begin() + j + 1);
        auto a = tour_cost(tour), b = tour_cost(cand);
        if (a && b && b->cost < a->cost) {
          tour = cand;
          improved = true;
        }
      }
  }
  auto c = tour_cost(tour);
  if (!c) return std::nullopt;
  return OptimalEstimate{-c->cost, c->actions, false};
}

// Pairwise legs from the agent and every stop to every other stop.
std::optional<OptimalEstimate> tour_over_cells(const GameState& s,
                                               const std::vector<Position>& stops,
                                               const std::vector<double>* penalty) {
  const int n = static_cast<int>(stops.size());
  std::vector<Position> nodes;
  nodes.push_back(s.agent);
  nodes.insert(nodes.end(), stops.begin(), stops.end());
  std::vector<std::vector<std::optional<Leg>>> d(
      n + 1, std::vector<std::optional<Leg>>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      auto p = grid_path(s, nodes[i], {nodes[j]}, penalty);
      if (p) d[i][j] = Leg{p->cost, p->actions};
    }
  return best_tour(d);
}

std::optional<OptimalEstimate> multigoals_optimal(const GameState& s) {
  std::vector<Position> stops;
  for (int name : s.task_state.goal_order) {
    for (Position p : s.find_all(ItemKind::Goal))
      if (s.find_kind(p, ItemKind::Goal)->name == name) stops.push_back(p);
  }
  return tour_over_cells(s, stops, nullptr);
}

std::optional<OptimalEstimate> exclusion_optimal(const GameState& s) {
  std::vector<double> penalty(static_cast<std::size_t>(s.width) * s.height, 0.0);
  std::vector<Position> stops;
  for (Position p : s.find_all(ItemKind::Goal)) {
    const int name = s.find_kind(p, ItemKind::Goal)->name;
    const auto& forb = s.task_state.forbidden_goals;
    if (std::binary_search(forb.begin(), forb.end(), name))
      penalty[cell_index(s, p)] = 0.5;
    else
      stops.push_back(p);
  }
  return tour_over_cells(s, stops, &penalty);
}

std::optional<OptimalEstimate> switches_optimal(const GameState& s) {
  const auto switch_cells = s.find_all(ItemKind::Switch);
  if (switch_cells.empty()) return std::nullopt;
  std::vector<int> colors;
  int m = 1;
  for (Position p : switch_cells) {
    const Item* sw = s.find_kind(p, ItemKind::Switch);
    colors.push_back(sw->color);
    m = sw->num_states;
  }

  std::optional<OptimalEstimate> best;
  for (int target = 0; target < m; ++target) {
    std::vector<Position> stops;
    int toggles = 0;
    for (std::size_t i = 0; i < switch_cells.size(); ++i) {
      const int t = ((target - colors[i]) % m + m) % m;
      if (t > 0) {
        stops.push_back(switch_cells[i]);
        toggles += t;
      }
    }
    auto tour = tour_over_cells(s, stops, nullptr);
    if (!tour) continue;
    OptimalEstimate est{tour->reward - 0.1 * toggles, tour->actions + toggles,
                        tour->exact};
    if (!best || est.reward > best->reward) best = est;
  }
  return best;
}

// State-augmented search over (cell, switch color) for tasks whose map
// changes with the switch: LightKey's door and ConditionalGoals' target.
std::optional<OptimalEstimate> switch_state_search(const GameState& s) {
  const auto switch_cells = s.find_all(ItemKind::Switch);
  if (switch_cells.empty()) return std::nullopt;
  const Item* sw = s.find_kind(switch_cells[0], ItemKind::Switch);
  const int m = sw->num_states;
  const int n_cells = s.width * s.height;

  const bool conditional = s.task == TaskKind::ConditionalGoals;
  auto target_goal = [&](int color) {
    return color == s.task_state.cond_color ? s.task_state.then_goal
                                            : s.task_state.else_goal;
  };
  auto passable = [&](Position p, int color) {
    if (!s.in_bounds(p)) return false;
    for (const Item& it : s.at(p)) {
      if (it.kind == ItemKind::Block || it.kind == ItemKind::PushableBlock)
        return false;
      if (it.kind == ItemKind::Door && it.color != color) return false;
    }
    return true;
  };

  auto node_of = [&](Position p, int color) { return cell_index(s, p) * m + color; };
  auto is_goal = [&](int node) {
    const Position p = cell_position(s, node / m);
    const int color = node % m;
    if (conditional) {
      const Item* g = s.find_kind(p, ItemKind::Goal);
      return g && g->name == target_goal(color);
    }
    return p == s.task_state.target;
  };

  auto result = search(
      n_cells * m, node_of(s.agent, sw->color), is_goal,
      [&](int node, auto emit) {
        const Position p = cell_position(s, node / m);
        const int color = node % m;
        for (Position d : kDirs) {
          const Position q = p + d;
          if (!passable(q, color)) continue;
          double edge = enter_cost(s, q);
          if (conditional) {
            const Item* g = s.find_kind(q, ItemKind::Goal);
            if (g && g->name != target_goal(color)) edge += 0.2;
          }
          emit(node_of(q, color), edge);
        }
        if (s.has_kind(p, ItemKind::Switch))
          emit(node_of(p, (color + 1) % m), 0.1);
      });
  if (!result) return std::nullopt;
  const auto& [goal, best] = *result;
  return OptimalEstimate{-best[goal].cost, best[goal].actions, true};
}

// Joint (agent, block) search for the pushable-block tasks.
std::optional<OptimalEstimate> push_state_search(const GameState& s) {
  const auto blocks = s.find_all(ItemKind::PushableBlock);
  if (blocks.size() != 1) return std::nullopt;

  // Work on a copy with the block lifted out of the grid; its position is
  // part of the search node instead.
  GameState base = s;
  auto& cell = base.at(blocks[0]);
  std::erase_if(cell, [](const Item& it) { return it.kind == ItemKind::PushableBlock; });

  std::optional<Position> exempt;
  if (s.task == TaskKind::PushBlock) exempt = s.task_state.target_switch;

  const int n_cells = s.width * s.height;
  auto node_of = [&](Position agent, Position block) {
    return cell_index(s, agent) * n_cells + cell_index(s, block);
  };
  auto is_goal = [&](int node) {
    const Position agent = cell_position(s, node / n_cells);
    const Position block = cell_position(s, node % n_cells);
    switch (s.task) {
      case TaskKind::PushBlock:
        return block == s.task_state.target_switch;
      case TaskKind::PushBlockCardinal:
        switch (s.task_state.target_edge) {
          case Edge::Left: return block.x == 0;
          case Edge::Right: return block.x == s.width - 1;
          case Edge::Top: return block.y == s.height - 1;
          case Edge::Bottom: return block.y == 0;
        }
        return false;
      default:
        return agent == s.task_state.target;
    }
  };

  auto result = search(
      n_cells * n_cells, node_of(s.agent, blocks[0]), is_goal,
      [&](int node, auto emit) {
        const Position agent = cell_position(s, node / n_cells);
        const Position block = cell_position(s, node % n_cells);
        for (Position d : kDirs) {
          const Position q = agent + d;
          if (q == block) {
            const Position beyond = block + d;
            if (push_destination_ok(base, beyond, exempt))
              emit(node_of(agent, beyond), 0.1);
          } else if (is_passable(base, q)) {
            emit(node_of(q, block), enter_cost(base, q));
          }
        }
      });
  if (!result) return std::nullopt;
  const auto& [goal, best] = *result;
  return OptimalEstimate{-best[goal].cost, best[goal].actions, true};
}

Position hidden_target(const GameState& s) {
  for (const auto& [name, pos] : s.task_state.hidden_goals)
    if (name == s.task_state.target_goal_name) return pos;
  return {-1, -1};
}

}  // namespace

std::optional<PathResult> min_cost_path(const GameState& state, Position from,
                                        const std::vector<Position>& targets) {
  return grid_path(state, from, targets, nullptr);
}

std::optional<OptimalEstimate> estimated_optimal(TaskKind kind, const GameState& state) {
  if (task_is_done(state)) return OptimalEstimate{0.0, 0, true};
  switch (kind) {
    case TaskKind::Goto: {
      auto p = min_cost_path(state, state.agent, {state.task_state.target});
      if (!p) return std::nullopt;
      return OptimalEstimate{-p->cost, p->actions, true};
    }
    case TaskKind::GotoHidden: {
      auto p = min_cost_path(state, state.agent, {hidden_target(state)});
      if (!p) return std::nullopt;
      return OptimalEstimate{-p->cost, p->actions, true};
    }
    case TaskKind::Multigoals:
      return multigoals_optimal(state);
    case TaskKind::Exclusion:
      return exclusion_optimal(state);
    case TaskKind::Switches:
      return switches_optimal(state);
    case TaskKind::ConditionalGoals:
    case TaskKind::LightKey:
      return switch_state_search(state);
    case TaskKind::PushBlock:
    case TaskKind::PushBlockCardinal:
    case TaskKind::BlockedDoor:
      return push_state_search(state);
  }
  return std::nullopt;
}

double relative_reward(double actual, double optimal) {
  if (actual == 0.0)
    throw UsageError("relative_reward: undefined for zero actual reward");
  return optimal / actual;
}

}  // namespace mazelab::oracle
