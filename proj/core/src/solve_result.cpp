#include "memsat/solve_result.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "memsat/errors.hpp"

namespace memsat {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kThresholdReached: return "ThresholdReached";
    case StopReason::kBudgetExhausted: return "BudgetExhausted";
    case StopReason::kConverged: return "Converged";
  }
  return "?";
}

std::optional<StopReason> parse_stop_reason(std::string_view s) {
  if (s == "ThresholdReached") return StopReason::kThresholdReached;
  if (s == "BudgetExhausted") return StopReason::kBudgetExhausted;
  if (s == "Converged") return StopReason::kConverged;
  return std::nullopt;
}

std::size_t threshold_count(double fraction, std::size_t n_clauses) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n_clauses) + 1e-9));
}

std::string to_json(const SolveResult& r, bool include_assignment) {
  nlohmann::ordered_json j;
  j["stop_reason"] = to_string(r.stop_reason);
  j["best_unsat"] = r.best_unsat;
  j["steps_total"] = r.steps_total;
  j["wall_time_s"] = r.wall_time_s;
  j["step_of_best"] = r.step_of_best;
  auto traj = nlohmann::json::array();
  for (const auto& p : r.trajectory) traj.push_back({p.step, p.unsat});
  j["trajectory"] = std::move(traj);
  if (include_assignment) {
    std::string bits(r.best_assignment.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = r.best_assignment[i] ? '1' : '0';
    j["assignment"] = bits;
  }
  return j.dump();
}

SolveResult solve_result_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SolveResult r;
  const auto reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
  if (!reason) throw Error("unknown stop_reason in solve result");
  r.stop_reason = *reason;
  r.best_unsat = j.at("best_unsat").get<std::size_t>();
  r.steps_total = j.at("steps_total").get<std::int64_t>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.step_of_best = j.at("step_of_best").get<std::int64_t>();
  for (const auto& p : j.at("trajectory")) {
    r.trajectory.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::size_t>()});
  }
  if (j.contains("assignment")) {
    for (char c : j["assignment"].get<std::string>()) r.best_assignment.push_back(c == '1');
  }
  return r;
}

std::size_t StaircaseSummary::total_drop() const {
  return std::accumulate(drops.begin(), drops.end(), std::size_t{0});
}

StaircaseSummary trajectory_diagnostics(const SolveResult& r) {
  if (r.trajectory.empty()) throw Error("trajectory_diagnostics: empty trajectory");
  StaircaseSummary s;
  std::size_t best = r.trajectory.front().unsat;
  s.best_curve.reserve(r.trajectory.size());
  for (const auto& p : r.trajectory) {
    if (p.unsat < best) {
      s.drops.push_back(best - p.unsat);
      ++s.drop_histogram[best - p.unsat];
      best = p.unsat;
    }
    s.best_curve.push_back({p.step, best});
  }
  return s;
}

}  // namespace memsat
