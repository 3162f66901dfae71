#include "memsat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <sys/resource.h>

#include "memsat/config.hpp"
#include "memsat/dimacs.hpp"
#include "memsat/errors.hpp"
#include "memsat/xorsat.hpp"

namespace memsat::bench {

std::string to_string(SolverId s) { return s == SolverId::kDmm ? "dmm" : "sls"; }

SolverId parse_solver(std::string_view s) {
  if (s == "dmm") return SolverId::kDmm;
  if (s == "sls") return SolverId::kSls;
  throw ConfigError("unknown solver '" + std::string(s) + "' (expected dmm or sls)");
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::kThresholdReached: return "ThresholdReached";
    case CellStatus::kBudgetExhausted: return "BudgetExhausted";
    case CellStatus::kConverged: return "Converged";
    case CellStatus::kFailed: return "Failed";
  }
  return "?";
}

CellStatus cell_status(StopReason r) {
  switch (r) {
    case StopReason::kThresholdReached: return CellStatus::kThresholdReached;
    case StopReason::kBudgetExhausted: return CellStatus::kBudgetExhausted;
    case StopReason::kConverged: return CellStatus::kConverged;
  }
  return CellStatus::kFailed;
}

bool BenchRecord::same_outcome(const BenchRecord& o) const {
  return solver == o.solver && n == o.n && m == o.m && seed == o.seed &&
         threshold_fraction == o.threshold_fraction && status == o.status &&
         time_to_threshold_s.has_value() == o.time_to_threshold_s.has_value() &&
         steps_or_flips == o.steps_or_flips && best_unsat == o.best_unsat &&
         mem_model_bytes == o.mem_model_bytes;
}

std::uint64_t memory_model(std::size_t n, std::size_t m, std::size_t literals) {
  const std::uint64_t state = 8 * (static_cast<std::uint64_t>(n) + 2 * static_cast<std::uint64_t>(m));
  return state + state + 8 * static_cast<std::uint64_t>(literals) + kMemoryModelOverheadBytes;
}

std::uint64_t memory_model(const CnfFormula& f) {
  return memory_model(f.n_vars(), f.n_clauses(), f.literal_count());
}

std::optional<std::uint64_t> peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) return std::nullopt;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

BenchRecord time_to_threshold(SolverId solver, const CnfFormula& f, double threshold_fraction,
                              double budget_s, std::uint64_t seed, const SolverSettings& settings) {
  if (!(budget_s > 0)) throw ConfigError("benchmark budget must be > 0 seconds");
  BenchRecord rec;
  rec.solver = solver;
  rec.n = f.n_vars();
  rec.m = f.n_clauses();
  rec.seed = seed;
  rec.threshold_fraction = threshold_fraction;
  rec.mem_model_bytes = memory_model(f);

  RunControl control;
  const auto start = std::chrono::steady_clock::now();
  control.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(budget_s));
  SolveResult r;
  if (solver == SolverId::kDmm) {
    r = solve_dmm(f, settings.dmm, threshold_fraction, seed, control);
  } else {
    SlsParams p = settings.sls;
    p.seed = seed;
    p.threshold_fraction = threshold_fraction;
    r = solve_sls(f, p, control);
  }
  rec.status = cell_status(r.stop_reason);
  if (r.stop_reason == StopReason::kThresholdReached) rec.time_to_threshold_s = r.wall_time_s;
  rec.steps_or_flips = r.steps_total;
  rec.best_unsat = r.best_unsat;
  rec.peak_rss_bytes = peak_rss_bytes();
  return rec;
}

// --- CSV -------------------------------------------------------------------

std::string csv_row(const BenchRecord& r) {
  std::string row;
  row += to_string(r.solver) + ',';
  row += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.seed) + ',';
  row += config::format_double(r.threshold_fraction) + ',';
  row += to_string(r.status) + ',';
  if (r.time_to_threshold_s) row += config::format_double(*r.time_to_threshold_s);
  row += ',' + std::to_string(r.steps_or_flips) + ',' + std::to_string(r.best_unsat) + ',';
  row += std::to_string(r.mem_model_bytes) + ',';
  if (r.peak_rss_bytes) row += std::to_string(*r.peak_rss_bytes);
  return row;
}

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

CellStatus parse_status(const std::string& s, std::size_t line) {
  for (auto st : {CellStatus::kThresholdReached, CellStatus::kBudgetExhausted, CellStatus::kConverged,
                  CellStatus::kFailed}) {
    if (to_string(st) == s) return st;
  }
  throw ParseError(line, "unknown status '" + s + "'");
}

template <typename F>
auto field(std::size_t line, const std::string& name, F&& convert) {
  try {
    return convert();
  } catch (const ConfigError& e) {
    throw ParseError(line, "column " + name + ": " + e.what());
  }
}

}  // namespace

std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> out;
  std::size_t number = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(number, "missing or wrong CSV header");
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 11) throw ParseError(number, "expected 11 columns, got " + std::to_string(f.size()));
    BenchRecord r;
    try {
      r.solver = parse_solver(f[0]);
    } catch (const ConfigError& e) {
      throw ParseError(number, e.what());
    }
    r.n = field(number, "n", [&] { return static_cast<std::size_t>(config::to_uint("n", f[1])); });
    r.m = field(number, "m", [&] { return static_cast<std::size_t>(config::to_uint("m", f[2])); });
    r.seed = field(number, "seed", [&] { return config::to_uint("seed", f[3]); });
    r.threshold_fraction = field(number, "threshold_fraction", [&] { return config::to_double("threshold_fraction", f[4]); });
    r.status = parse_status(f[5], number);
    if (!f[6].empty()) {
      r.time_to_threshold_s = field(number, "time_to_threshold_s", [&] { return config::to_double("time", f[6]); });
    }
    r.steps_or_flips = field(number, "steps_or_flips", [&] { return static_cast<std::int64_t>(config::to_int("steps", f[7])); });
    r.best_unsat = field(number, "best_unsat", [&] { return static_cast<std::size_t>(config::to_uint("best_unsat", f[8])); });
    r.mem_model_bytes = field(number, "mem_model_bytes", [&] { return config::to_uint("mem", f[9]); });
    if (!f[10].empty()) {
      r.peak_rss_bytes = field(number, "peak_rss_bytes", [&] { return config::to_uint("rss", f[10]); });
    }
    if (r.time_to_threshold_s.has_value() != (r.status == CellStatus::kThresholdReached)) {
      throw ParseError(number, "time_to_threshold_s must be present exactly for ThresholdReached");
    }
    out.push_back(r);
  }
  if (!header_seen) throw ParseError(number, "empty CSV");
  return out;
}

// --- Sweep -----------------------------------------------------------------

namespace {

using CellKey = std::tuple<SolverId, std::size_t, std::uint64_t, double>;

CellKey key_of(const BenchRecord& r) { return {r.solver, r.n, r.seed, r.threshold_fraction}; }

struct Cell {
  SolverId solver;
  std::size_t n;
  std::uint64_t seed;
};

}  // namespace

std::vector<BenchRecord> run_sweep(const SweepSpec& spec, const std::string& csv_path) {
  if (spec.solvers.empty() || spec.ns.empty() || spec.seeds_per_n == 0) {
    throw ConfigError("sweep needs at least one solver, one N and one seed");
  }
  std::set<CellKey> done;
  bool need_header = true;
  if (!csv_path.empty()) {
    std::ifstream probe(csv_path);
    if (probe) {
      const std::string existing = dimacs::read_text(csv_path);
      if (!existing.empty()) {
        for (const auto& r : parse_csv(existing)) done.insert(key_of(r));
        need_header = false;
      }
    }
  }

  std::vector<Cell> cells;
  for (std::size_t n : spec.ns) {
    for (std::size_t k = 0; k < spec.seeds_per_n; ++k) {
      for (SolverId s : spec.solvers) {
        const std::uint64_t seed = spec.cell_seed(k);
        if (!done.count(CellKey{s, n, seed, spec.threshold_fraction})) cells.push_back({s, n, seed});
      }
    }
  }

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::app);
    if (!csv) throw std::ios_base::failure("cannot open '" + csv_path + "' for appending");
    if (need_header) csv << kCsvHeader << '\n' << std::flush;
  }

  std::vector<BenchRecord> results(cells.size());
  std::mutex writer;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      BenchRecord rec;
      rec.solver = c.solver;
      rec.n = c.n;
      rec.seed = c.seed;
      rec.threshold_fraction = spec.threshold_fraction;
      try {
        const CnfFormula f = expand_instance(generate_balanced_xorsat(c.n, spec.rho_xor, c.seed));
        rec = time_to_threshold(c.solver, f, spec.threshold_fraction, spec.budget_s, c.seed, spec.settings);
      } catch (const std::exception&) {
        rec.status = CellStatus::kFailed;
        rec.time_to_threshold_s.reset();
      }
      results[i] = rec;
      if (csv.is_open()) {
        std::lock_guard lock(writer);
        csv << csv_row(rec) << '\n' << std::flush;
      }
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(spec.workers, cells.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

// --- Fits ------------------------------------------------------------------

std::string to_string(ScalingModel m) { return m == ScalingModel::kPowerLaw ? "power_law" : "exponential"; }

ScalingModel parse_model(std::string_view s) {
  if (s == "power_law" || s == "power") return ScalingModel::kPowerLaw;
  if (s == "exponential" || s == "exp") return ScalingModel::kExponential;
  throw ConfigError("unknown scaling model '" + std::string(s) + "'");
}

ScalingFit fit_points(const std::vector<Point>& points, ScalingModel model) {
  if (points.size() < 3) {
    throw InsufficientData("scaling fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (!(p.n > 0) || !(p.t > 0)) throw InsufficientData("scaling fit needs positive N and times");
    xs.push_back(model == ScalingModel::kPowerLaw ? std::log(p.n) : p.n);
    ys.push_back(std::log(p.t));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw InsufficientData("scaling fit needs at least 2 distinct N");
  ScalingFit fit;
  fit.model = model;
  fit.n_points = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  // A flat series is fitted exactly by slope 0.
  const double r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  fit.r_squared = std::clamp(r2, 0.0, 1.0);
  return fit;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::vector<Point> median_by_n(const std::vector<BenchRecord>& records, SolverId solver) {
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& r : records) {
    if (r.solver == solver && r.status == CellStatus::kThresholdReached && r.time_to_threshold_s) {
      by_n[r.n].push_back(*r.time_to_threshold_s);
    }
  }
  std::vector<Point> out;
  for (auto& [n, times] : by_n) out.push_back({static_cast<double>(n), median(std::move(times))});
  return out;
}

std::vector<Point> censored_fraction_by_n(const std::vector<BenchRecord>& records, SolverId solver) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> by_n;  // censored, total
  for (const auto& r : records) {
    if (r.solver != solver) continue;
    auto& [censored, total] = by_n[r.n];
    ++total;
    censored += r.status != CellStatus::kThresholdReached;
  }
  std::vector<Point> out;
  for (const auto& [n, ct] : by_n) {
    out.push_back({static_cast<double>(n), static_cast<double>(ct.first) / static_cast<double>(ct.second)});
  }
  return out;
}

ScalingFit fit_scaling(const std::vector<BenchRecord>& records, SolverId solver, ScalingModel model) {
  return fit_points(median_by_n(records, solver), model);
}

ScalingModel better_model(const ScalingFit& power_law, const ScalingFit& exponential) {
  return exponential.r_squared > power_law.r_squared ? ScalingModel::kExponential : ScalingModel::kPowerLaw;
}

}  // namespace memsat::bench
