#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "memsat/cnf.hpp"

namespace memsat {

enum class StopReason { kThresholdReached, kBudgetExhausted, kConverged };

std::string to_string(StopReason r);
std::optional<StopReason> parse_stop_reason(std::string_view s);

struct TrajectoryPoint {
  std::int64_t step = 0;
  std::size_t unsat = 0;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Outcome of one solver run. `steps_total` counts Euler steps for the
/// dynamics solver and flips for local search.
struct SolveResult {
  Assignment best_assignment;
  std::size_t best_unsat = 0;
  std::int64_t step_of_best = 0;
  std::int64_t steps_total = 0;
  double wall_time_s = 0.0;
  StopReason stop_reason = StopReason::kBudgetExhausted;
  std::vector<TrajectoryPoint> trajectory;

  /// Equality of everything except wall time.
  bool same_run(const SolveResult& o) const {
    return best_assignment == o.best_assignment && best_unsat == o.best_unsat &&
           step_of_best == o.step_of_best && steps_total == o.steps_total &&
           stop_reason == o.stop_reason && trajectory == o.trajectory;
  }
};

/// Clause-count threshold for a fraction of M: floor(fraction * M), with a
/// 1e-9 guard so that e.g. 0.015 * 5000 yields 75 and not 74.
std::size_t threshold_count(double fraction, std::size_t n_clauses);

/// {"stop_reason", "best_unsat", "steps_total", "wall_time_s", "step_of_best",
///  "trajectory": [[step, unsat], ...]} and optionally "assignment" as a bit
/// string.
std::string to_json(const SolveResult& r, bool include_assignment = false);
SolveResult solve_result_from_json(const std::string& text);

/// Avalanche view of a run: the best-so-far staircase over the recorded
/// trajectory and the sizes of its downward steps.
struct StaircaseSummary {
  std::vector<TrajectoryPoint> best_curve;
  std::vector<std::size_t> drops;
  std::map<std::size_t, std::size_t> drop_histogram;

  std::size_t total_drop() const;
};

/// Throws Error on an empty trajectory.
StaircaseSummary trajectory_diagnostics(const SolveResult& r);

}  // namespace memsat
