#ifndef MAZELAB_CURRICULUM_HPP
#define MAZELAB_CURRICULUM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mazelab/rng.hpp"
#include "mazelab/tasks.hpp"

namespace mazelab {

// One difficulty variable under curriculum control. The lower limit never
// moves, so the easiest game stays available for the whole run.
struct DifficultyVar {
  std::string name;  // task-scoped, e.g. "goto.height"
  int min_value = 0;
  int cur_max = 0;
  int abs_max = 0;
  int step = 1;
  bool operator==(const DifficultyVar&) const = default;
};

// Success-threshold difficulty controller: widen every sampling range when
// the rolling success rate clears t_upper, narrow when it drops below
// t_lower, and pin everything at max for the last third of training.
class CurriculumState {
 public:
  CurriculumState() = default;
  CurriculumState(std::vector<DifficultyVar> vars, double t_lower, double t_upper,
                  int window_capacity);

  // Controller starting from the easiest ranges (cur_max = min) over the
  // union of the tasks' variables, task-scoped names.
  static CurriculumState for_tasks(const std::vector<TaskKind>& tasks,
                                   double t_lower = 0.5, double t_upper = 0.9,
                                   int window_capacity = 512);

  void record_outcome(bool success);  // FIFO window update

  // Applies the threshold rule once the window is full; adjusting clears
  // the window so each decision sees fresh outcomes. No-op after force_max.
  void maybe_adjust();

  // Uniform draw in [min, cur_max] for each of `task`'s variables.
  DifficultyVars sample_difficulty(TaskKind task, Rng& rng) const;

  // Pins cur_max = abs_max permanently. Requires progress >= 2/3
  // (UsageError otherwise); idempotent.
  void force_max();

  void set_progress(double fraction) { progress_ = fraction; }
  double progress() const { return progress_; }

  double success_rate() const;  // over the current window contents
  bool window_full() const { return static_cast<int>(window_.size()) == window_capacity_; }
  const std::vector<DifficultyVar>& vars() const { return vars_; }
  bool forced() const { return forced_; }
  double t_lower() const { return t_lower_; }
  double t_upper() const { return t_upper_; }

  // Checkpoint support: flat serialization of the controller state.
  std::vector<std::int64_t> serialize() const;
  static CurriculumState deserialize(const std::vector<std::int64_t>& data);

  bool operator==(const CurriculumState&) const = default;

 private:
  std::vector<DifficultyVar> vars_;
  double t_lower_ = 0.5;
  double t_upper_ = 0.9;
  int window_capacity_ = 512;
  std::vector<char> window_;  // FIFO, oldest first
  double progress_ = 0.0;
  bool forced_ = false;
};

}  // namespace mazelab

#endif  // MAZELAB_CURRICULUM_HPP
