#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memsat/cnf.hpp"
#include "memsat/dmm.hpp"
#include "memsat/walksat.hpp"

namespace memsat::bench {

enum class SolverId { kDmm, kSls };
std::string to_string(SolverId s);
SolverId parse_solver(std::string_view s);  // throws ConfigError

/// Stop status of a benchmark cell; kFailed marks a cell whose run threw.
enum class CellStatus { kThresholdReached, kBudgetExhausted, kConverged, kFailed };
std::string to_string(CellStatus s);
CellStatus cell_status(StopReason r);

struct BenchRecord {
  SolverId solver = SolverId::kDmm;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double threshold_fraction = 0.015;
  CellStatus status = CellStatus::kBudgetExhausted;
  std::optional<double> time_to_threshold_s;  // present iff ThresholdReached
  std::int64_t steps_or_flips = 0;
  std::size_t best_unsat = 0;
  std::uint64_t mem_model_bytes = 0;
  std::optional<std::uint64_t> peak_rss_bytes;

  /// Equality ignoring the wall-clock and RSS columns.
  bool same_outcome(const BenchRecord& o) const;
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SolverSettings {
  DmmParams dmm;
  SlsParams sls;  // seed and threshold_fraction are overridden per cell
};

/// Runs one solver on f under a wall-clock budget (seconds). The clock
/// starts before solver state allocation; parsing is not timed.
BenchRecord time_to_threshold(SolverId solver, const CnfFormula& f, double threshold_fraction,
                              double budget_s, std::uint64_t seed,
                              const SolverSettings& settings = {});

inline constexpr std::uint64_t kMemoryModelOverheadBytes = 4096;

/// 8(N + 2M) state bytes + 8(N + 2M) derivative bytes + 8L incidence bytes
/// (L literal occurrences) + kMemoryModelOverheadBytes.
std::uint64_t memory_model(const CnfFormula& f);
std::uint64_t memory_model(std::size_t n, std::size_t m, std::size_t literals);

/// Peak resident set of this process, when the platform reports it.
std::optional<std::uint64_t> peak_rss_bytes();

struct SweepSpec {
  std::vector<SolverId> solvers{SolverId::kDmm, SolverId::kSls};
  std::vector<std::size_t> ns{250, 500, 1000, 2000, 4000};
  std::size_t seeds_per_n = 5;
  std::uint64_t base_seed = 1;
  double rho_xor = 1.25;
  double threshold_fraction = 0.015;
  double budget_s = 60.0;
  std::size_t workers = 1;
  SolverSettings settings;

  /// Instance (and solver) seed of the k-th cell for a given N.
  std::uint64_t cell_seed(std::size_t k) const { return base_seed + k; }
};

/// CSV header, in contract order.
inline constexpr std::string_view kCsvHeader =
    "solver,n,m,seed,threshold_fraction,status,time_to_threshold_s,steps_or_flips,best_unsat,"
    "mem_model_bytes,peak_rss_bytes";

std::string csv_row(const BenchRecord& r);
/// Parses a CSV with the mandatory header. Throws ParseError.
std::vector<BenchRecord> parse_csv(std::string_view text);

/// Runs every (solver, N, seed) cell of the spec, skipping cells already
/// present in csv_path (matched on solver, n, seed, threshold), and appends
/// one row per finished cell. Cells run on up to spec.workers threads; rows
/// are written by one writer under a lock. A cell that throws is recorded
/// with status Failed. Returns the records of the cells run by this call,
/// in spec order. An empty csv_path disables file output.
std::vector<BenchRecord> run_sweep(const SweepSpec& spec, const std::string& csv_path = {});

enum class ScalingModel { kPowerLaw, kExponential };
std::string to_string(ScalingModel m);
ScalingModel parse_model(std::string_view s);

struct ScalingFit {
  ScalingModel model = ScalingModel::kPowerLaw;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

struct Point {
  double n = 0.0;
  double t = 0.0;
};

/// Least squares of log t on log n (power law, slope = exponent) or on n
/// (exponential, slope = rate). Throws InsufficientData below 3 points.
ScalingFit fit_points(const std::vector<Point>& points, ScalingModel model);

/// Median time-to-threshold per N over ThresholdReached records of one
/// solver, ascending in N. Censored cells are excluded.
std::vector<Point> median_by_n(const std::vector<BenchRecord>& records, SolverId solver);

/// Fraction of cells per N (ascending) that did not reach the threshold.
std::vector<Point> censored_fraction_by_n(const std::vector<BenchRecord>& records, SolverId solver);

ScalingFit fit_scaling(const std::vector<BenchRecord>& records, SolverId solver, ScalingModel model);

/// Model with the larger r^2 (power law on ties).
ScalingModel better_model(const ScalingFit& power_law, const ScalingFit& exponential);

}  // namespace memsat::bench
