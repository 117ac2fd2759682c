#include "mazelab/curriculum.hpp"

#include <algorithm>

#include "mazelab/error.hpp"

namespace mazelab {

CurriculumState::CurriculumState(std::vector<DifficultyVar> vars, double t_lower,
                                 double t_upper, int window_capacity)
    : vars_(std::move(vars)),
      t_lower_(t_lower),
      t_upper_(t_upper),
      window_capacity_(window_capacity) {
  if (!(t_lower_ < t_upper_))
    throw UsageError("curriculum: thresholds must satisfy t_lower < t_upper");
  for (auto& v : vars_)
    v.cur_max = std::clamp(v.cur_max, v.min_value, v.abs_max);
}

CurriculumState CurriculumState::for_tasks(const std::vector<TaskKind>& tasks,
                                           double t_lower, double t_upper,
                                           int window_capacity) {
  std::vector<DifficultyVar> vars;
  for (TaskKind task : tasks)
    for (const VarSpec& spec : task_var_specs(task)) {
      DifficultyVar v;
      v.name = task_name(task) + "." + spec.name;
      v.min_value = spec.min_value;
      v.cur_max = spec.min_value;  // start at the easiest game
      v.abs_max = spec.abs_max;
      v.step = spec.step;
      vars.push_back(v);
    }
  return CurriculumState(std::move(vars), t_lower, t_upper, window_capacity);
}

void CurriculumState::record_outcome(bool success) {
  window_.push_back(success ? 1 : 0);
  if (static_cast<int>(window_.size()) > window_capacity_)
    window_.erase(window_.begin());
}

double CurriculumState::success_rate() const {
  if (window_.empty()) return 0.0;
  double sum = 0;
  for (char c : window_) sum += c;
  return sum / static_cast<double>(window_.size());
}

void CurriculumState::maybe_adjust() {
  if (forced_ || !window_full()) return;
  const double rate = success_rate();
  int direction = 0;
  if (rate > t_upper_)
    direction = 1;
  else if (rate < t_lower_)
    direction = -1;
  if (direction == 0) return;
  for (auto& v : vars_)
    v.cur_max = std::clamp(v.cur_max + direction * v.step, v.min_value, v.abs_max);
  window_.clear();
}

DifficultyVars CurriculumState::sample_difficulty(TaskKind task, Rng& rng) const {
  const std::string prefix = task_name(task) + ".";
  DifficultyVars out;
  for (const auto& v : vars_)
    if (v.name.rfind(prefix, 0) == 0)
      out[v.name.substr(prefix.size())] = rng.uniform_int(v.min_value, v.cur_max);
  return out;
}

void CurriculumState::force_max() {
  if (progress_ < 2.0 / 3.0)
    throw UsageError("force_max: only valid in the last third of training");
  for (auto& v : vars_) v.cur_max = v.abs_max;
  forced_ = true;
}

std::vector<std::int64_t> CurriculumState::serialize() const {
  // Variable names are reconstructed from the run config on load; only the
  // numeric state travels.
  std::vector<std::int64_t> out;
  out.push_back(static_cast<std::int64_t>(vars_.size()));
  for (const auto& v : vars_) {
    out.push_back(v.min_value);
    out.push_back(v.cur_max);
    out.push_back(v.abs_max);
    out.push_back(v.step);
  }
  out.push_back(window_capacity_);
  out.push_back(static_cast<std::int64_t>(window_.size()));
  for (char c : window_) out.push_back(c);
  out.push_back(forced_ ? 1 : 0);
  out.push_back(static_cast<std::int64_t>(progress_ * 1e12));
  out.push_back(static_cast<std::int64_t>(t_lower_ * 1e12));
  out.push_back(static_cast<std::int64_t>(t_upper_ * 1e12));
  return out;
}

CurriculumState CurriculumState::deserialize(const std::vector<std::int64_t>& data) {
  std::size_t i = 0;
  auto next = [&]() -> std::int64_t {
    if (i >= data.size()) throw UsageError("curriculum state: truncated");
    return data[i++];
  };
  CurriculumState cs;
  const auto n_vars = static_cast<std::size_t>(next());
  cs.vars_.resize(n_vars);
  for (auto& v : cs.vars_) {
    v.min_value = static_cast<int>(next());
    v.cur_max = static_cast<int>(next());
    v.abs_max = static_cast<int>(next());
    v.step = static_cast<int>(next());
  }
  cs.window_capacity_ = static_cast<int>(next());
  const auto n_window = static_cast<std::size_t>(next());
  cs.window_.resize(n_window);
  for (auto& c : cs.window_) c = static_cast<char>(next());
  cs.forced_ = next() != 0;
  cs.progress_ = static_cast<double>(next()) / 1e12;
  cs.t_lower_ = static_cast<double>(next()) / 1e12;
  cs.t_upper_ = static_cast<double>(next()) / 1e12;
  return cs;
}

}  // namespace mazelab
