// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. The sweep behind A6/A7/A10 is resumable from --workdir.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "memsat/bench.hpp"
#include "memsat/dimacs.hpp"
#include "memsat/dmm.hpp"
#include "memsat/errors.hpp"
#include "memsat/rng.hpp"
#include "memsat/walksat.hpp"
#include "memsat/xorsat.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace memsat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  fs::path workdir;
  double budget_s = 300.0;
  std::vector<bench::BenchRecord> sweep;  // filled by A6
  bool sweep_loaded = false;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

// Test-side unsat count: re-evaluates each clause literal by literal.
std::size_t naive_unsat(const CnfFormula& f, const Assignment& a) { return testing::naive_unsat(f, a); }

Outcome a1_encoding() {
  std::size_t checked = 0;
  // Every ordering of three distinct variables among four, both parities.
  const std::vector<std::array<Var, 3>> shapes{{1, 2, 3}, {3, 1, 2}, {2, 4, 1}, {4, 3, 2}};
  for (const auto& vars : shapes) {
    for (bool parity : {false, true}) {
      const XorClause xc{vars, parity};
      const auto cnf = xor_to_cnf(xc);
      for (std::uint64_t x = 0; x < 16; ++x) {
        const auto a = testing::bits_of(x, 4);
        const bool xor_sat = (a[vars[0] - 1] ^ a[vars[1] - 1] ^ a[vars[2] - 1]) == parity;
        bool all = true;
        for (const auto& c : cnf) {
          bool any = false;
          for (const auto& l : c.literals) any |= a[l.var - 1] != l.negated;
          all &= any;
        }
        if (xor_sat != all) return {false, "mismatch at shape/assignment " + std::to_string(x)};
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " (shape, parity, assignment) cases agree"};
}

Outcome a2_family() {
  std::size_t instances = 0;
  for (std::size_t n : {8, 100, 1000}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto xi = generate_balanced_xorsat(n, 1.25, seed);
      std::vector<int> occ(n + 1, 0);
      for (const auto& c : xi.clauses) {
        for (Var v : c.vars) ++occ[v];
      }
      for (std::size_t v = 1; v <= n; ++v) {
        if (occ[v] != 3 && occ[v] != 4) {
          return {false, "N=" + std::to_string(n) + " seed " + std::to_string(seed) + ": variable " +
                             std::to_string(v) + " occurs " + std::to_string(occ[v]) + " times"};
        }
      }
      const auto f = expand_instance(xi);
      // 1.25 N is integral for every N here, so density must be exactly 5.
      if (f.n_clauses() != 5 * n || f.n_vars() != n) {
        return {false, "N=" + std::to_string(n) + " seed " + std::to_string(seed) + ": M=" +
                           std::to_string(f.n_clauses())};
      }
      ++instances;
    }
  }
  return {true, std::to_string(instances) + " instances, occurrences in {3,4}, CNF density 5"};
}

Outcome a3_oracle() {
  SplitMix64 rng(0xa3);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t m = n + rng.below(6 * n);
    const auto f = random_ksat(n, m, 3, 1000 + k);
    const auto bf = brute_force_max_sat(f);
    // Exhaustive minimum computed independently here.
    std::size_t lo = m + 1;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
      const auto a = testing::bits_of(x, n);
      const auto u = naive_unsat(f, a);
      if (u != count_unsat(f, a)) return {false, "count_unsat disagrees on formula " + std::to_string(k)};
      lo = std::min(lo, u);
    }
    if (bf.min_unsat != lo) return {false, "brute force minimum wrong on formula " + std::to_string(k)};
    DmmParams dp;
    dp.max_steps = 20000;
    const auto d = solve_dmm(f, dp, 0.0, k);
    SlsParams sp;
    sp.seed = k;
    sp.threshold_fraction = 0.0;
    const auto s = solve_sls(f, sp);
    if (d.best_unsat < lo || s.best_unsat < lo) return {false, "solver beat the exact minimum on formula " + std::to_string(k)};
    if (naive_unsat(f, d.best_assignment) != d.best_unsat || naive_unsat(f, s.best_assignment) != s.best_unsat) {
      return {false, "reported best_unsat does not match its assignment on formula " + std::to_string(k)};
    }
  }
  const auto ex = brute_force_max_sat(example_formula());
  if (ex.min_unsat != 1) return {false, "example formula min-unsat " + std::to_string(ex.min_unsat)};
  return {true, "100 formulas bounded by exhaustive minimum; example formula min-unsat 1"};
}

Outcome a4_determinism() {
  std::vector<CnfFormula> fs;
  for (std::uint64_t s = 1; s <= 4; ++s) fs.push_back(expand_instance(generate_balanced_xorsat(300, 1.25, s)));
  DmmParams dp;
  dp.max_steps = 20000;
  SlsParams sp;
  sp.max_flips = 200000;
  sp.max_restarts = 2;
  sp.threshold_fraction = 0.0;
  auto run_all = [&](std::size_t threads) {
    std::vector<SolveResult> out(2 * fs.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next++) < out.size();) {
        const auto& f = fs[i / 2];
        if (i % 2 == 0) {
          out[i] = solve_dmm(f, dp, 0.0, 17 + i);
        } else {
          SlsParams p = sp;
          p.seed = 17 + i;
          out[i] = solve_sls(f, p);
        }
      }
    };
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
  };
  const auto a = run_all(1);
  const auto b = run_all(1);
  const auto c = run_all(4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].same_run(b[i])) return {false, "run " + std::to_string(i) + " differs between repeats"};
    if (!a[i].same_run(c[i])) return {false, "run " + std::to_string(i) + " differs with 4 threads"};
  }
  bench::SweepSpec spec;
  spec.ns = {100, 200};
  spec.seeds_per_n = 2;
  spec.budget_s = 30.0;
  spec.settings.dmm.max_steps = 5000;
  spec.settings.sls.max_flips = 50000;
  spec.settings.sls.max_restarts = 1;
  spec.threshold_fraction = 0.0;
  const auto w1 = bench::run_sweep(spec);
  spec.workers = 3;
  const auto w3 = bench::run_sweep(spec);
  for (std::size_t i = 0; i < w1.size(); ++i) {
    if (!w1[i].same_outcome(w3[i])) return {false, "sweep cell " + std::to_string(i) + " differs across worker counts"};
  }
  return {true, std::to_string(a.size()) + " runs identical across repeats and 1/4 threads; sweep identical for 1/3 workers"};
}

Outcome a5_capability() {
  int reached = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = expand_instance(generate_balanced_xorsat(500, 1.25, seed));
    const auto r = solve_dmm(f, DmmParams{}, 0.015, seed);
    const bool ok = r.stop_reason == StopReason::kThresholdReached && r.best_unsat <= 37 &&
                    naive_unsat(f, r.best_assignment) == r.best_unsat;
    reached += ok;
    detail << (seed > 1 ? " " : "") << r.steps_total << (ok ? "" : "*");
  }
  return {reached >= 9, std::to_string(reached) + "/10 seeds reached 37 unsat; steps: " + detail.str()};
}

bool nondecreasing_and_rising(const std::vector<bench::Point>& pts) {
  if (pts.size() < 2) return false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].t < pts[i - 1].t) return false;
  }
  return pts.back().t > pts.front().t;
}

void load_sweep(Context& ctx) {
  if (ctx.sweep_loaded) return;
  bench::SweepSpec spec;  // default desk grid
  spec.budget_s = ctx.budget_s;
  const auto csv = (ctx.workdir / "sweep.csv").string();
  fs::create_directories(ctx.workdir);
  const auto fresh = bench::run_sweep(spec, csv);
  ctx.sweep = bench::parse_csv(dimacs::read_text(csv));
  ctx.sweep_loaded = true;
  std::cout << "  sweep: " << fresh.size() << " cells run, " << ctx.sweep.size() - fresh.size()
            << " resumed from " << csv << "\n";
  for (auto solver : {bench::SolverId::kDmm, bench::SolverId::kSls}) {
    std::cout << "  " << bench::to_string(solver) << " medians:";
    for (const auto& p : bench::median_by_n(ctx.sweep, solver)) std::cout << " N=" << p.n << ":" << fmt(p.t) << "s";
    std::cout << " | censored:";
    for (const auto& p : bench::censored_fraction_by_n(ctx.sweep, solver)) std::cout << " " << fmt(p.t, 2);
    std::cout << "\n";
  }
}

Outcome a6_scaling(Context& ctx) {
  load_sweep(ctx);
  std::ostringstream d;
  bool dmm_ok = false;
  try {
    const auto pl = bench::fit_scaling(ctx.sweep, bench::SolverId::kDmm, bench::ScalingModel::kPowerLaw);
    const auto ex = bench::fit_scaling(ctx.sweep, bench::SolverId::kDmm, bench::ScalingModel::kExponential);
    dmm_ok = pl.slope >= 0.8 && pl.slope <= 1.8 && pl.r_squared >= ex.r_squared;
    d << "dmm slope " << fmt(pl.slope) << " r2 pl " << fmt(pl.r_squared) << " exp " << fmt(ex.r_squared);
  } catch (const InsufficientData& e) {
    d << "dmm: " << e.what();
  }
  bool sls_ok = false;
  const auto cens = bench::censored_fraction_by_n(ctx.sweep, bench::SolverId::kSls);
  const bool rising = nondecreasing_and_rising(cens);
  d << "; sls censoring rising " << (rising ? "yes" : "no");
  try {
    const auto pl = bench::fit_scaling(ctx.sweep, bench::SolverId::kSls, bench::ScalingModel::kPowerLaw);
    const auto ex = bench::fit_scaling(ctx.sweep, bench::SolverId::kSls, bench::ScalingModel::kExponential);
    d << ", r2 pl " << fmt(pl.r_squared) << " exp " << fmt(ex.r_squared);
    sls_ok = ex.r_squared > pl.r_squared;
  } catch (const InsufficientData&) {
    d << ", too few uncensored N to fit";
  }
  sls_ok = sls_ok || rising;
  return {dmm_ok && sls_ok, d.str()};
}

Outcome a7_memory(Context& ctx) {
  load_sweep(ctx);
  // Ordinary least squares of bytes on N, done here rather than in the library.
  std::vector<double> xs, ys;
  for (const auto& r : ctx.sweep) {
    if (r.solver != bench::SolverId::kDmm) continue;
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(static_cast<double>(r.mem_model_bytes));
  }
  if (xs.size() < 3) return {false, "too few sweep rows"};
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double r2 = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
  std::ostringstream d;
  d << "r2 " << std::setprecision(8) << r2 << ", slope " << fmt(sxy / sxx) << " B/var; model/file ratio:";
  for (std::size_t n_vars : {250, 500, 1000, 2000, 4000}) {
    const auto f = expand_instance(generate_balanced_xorsat(n_vars, 1.25, 1));
    const double file = static_cast<double>(dimacs::emit(f).size());
    d << " " << n_vars << ":" << fmt(static_cast<double>(bench::memory_model(f)) / file, 3);
  }
  return {r2 > 0.999, d.str()};
}

Outcome a8_numerics() {
  const auto f = expand_instance(generate_balanced_xorsat(500, 1.25, 8));
  DmmParams p;
  DmmIntegrator integ(f, p);
  auto s = initial_state(f, 8);
  const double xl_max = integ.xl_max();
  std::size_t violations = 0;
  for (int k = 0; k < 100000; ++k) {
    integ.step(s);
    for (double v : s.v) violations += !(v >= -1.0 && v <= 1.0);
    for (double x : s.xs) violations += !(x >= 0.0 && x <= 1.0);
    for (double x : s.xl) violations += !(x >= 1.0 && x <= xl_max);
  }
  if (violations != 0) return {false, std::to_string(violations) + " bound violations"};

  const auto g = random_ksat(40, 170, 3, 88);
  SplitMix64 rng(0xa8);
  const double h = 1e-6;
  double worst = 0.0;
  int states = 0;
  while (states < 1000) {
    std::vector<double> v(40);
    for (auto& x : v) x = rng.uniform(-0.999, 0.999);
    const auto m = static_cast<ClauseId>(rng.below(g.n_clauses()));
    const auto& lits = g.clause(m).literals;
    std::vector<double> t;
    for (const auto& l : lits) t.push_back(1.0 - (l.negated ? -1.0 : 1.0) * v[l.var - 1]);
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[1] - sorted[0] < 1e-4) continue;
    const std::size_t arg = std::min_element(t.begin(), t.end()) - t.begin();
    for (std::size_t k = 0; k < lits.size(); ++k) {
      auto up = v, dn = v;
      up[lits[k].var - 1] += h;
      dn[lits[k].var - 1] -= h;
      const double fd = (clause_value(g, m, up) - clause_value(g, m, dn)) / (2 * h);
      const double want = k == arg ? (lits[k].negated ? 0.5 : -0.5) : 0.0;
      worst = std::max(worst, std::abs(fd - want));
    }
    ++states;
  }
  return {worst <= 1e-6, "1e5 steps, 0 bound violations; 1000 states, max |fd - exact| " + fmt(worst, 3)};
}

Outcome a9_baseline() {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = random_ksat(100, 300, 3, 9000 + seed);
    SlsParams p;
    p.seed = seed;
    p.threshold_fraction = 0.0;
    const auto r = solve_sls(f, p);
    solved += r.best_unsat == 0 && naive_unsat(f, r.best_assignment) == 0;
  }
  return {solved >= 9, std::to_string(solved) + "/10 formulas satisfied"};
}

Outcome a10_interchange(Context& ctx) {
  SplitMix64 rng(0xa10);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(60);
    const std::size_t width = 1 + rng.below(std::min<std::size_t>(n, 5));
    const auto f = random_ksat(n, rng.below(200), width, 50000 + k);
    const auto text = dimacs::emit(f);
    const auto back = dimacs::parse(text);
    if (!(back == f) || dimacs::emit(back) != text) return {false, "DIMACS round trip failed on formula " + std::to_string(k)};
  }
  load_sweep(ctx);
  std::string csv(bench::kCsvHeader);
  csv += "\n";
  for (const auto& r : ctx.sweep) csv += bench::csv_row(r) + "\n";
  const auto parsed = bench::parse_csv(csv);
  if (parsed != ctx.sweep) return {false, "CSV parse(emit(x)) != x"};
  std::string again(bench::kCsvHeader);
  again += "\n";
  for (const auto& r : parsed) again += bench::csv_row(r) + "\n";
  if (again != csv) return {false, "CSV emit(parse(y)) != y"};
  return {true, "1000 DIMACS round trips; " + std::to_string(parsed.size()) + " sweep rows round trip"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memsat acceptance suite"};
  Context ctx;
  std::string workdir = "acceptance-work";
  std::vector<std::string> only;
  std::vector<std::string> expected_fail;
  bool fresh = false;
  app.add_option("--workdir", workdir, "Directory for the resumable sweep CSV");
  app.add_option("--budget-s", ctx.budget_s, "Per-cell wall-clock budget of the sweep")->capture_default_str();
  app.add_option("--only", only, "Run only these criteria (e.g. A1 A5)")->delimiter(',');
  app.add_option("--expected-fail", expected_fail,
                 "Criteria whose failure is known and documented; still reported, not counted")
      ->delimiter(',');
  app.add_flag("--fresh", fresh, "Discard a previous sweep CSV");
  CLI11_PARSE(app, argc, argv);
  ctx.workdir = workdir;
  if (fresh) fs::remove(ctx.workdir / "sweep.csv");

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1_encoding},
      {"A2", a2_family},
      {"A3", a3_oracle},
      {"A4", a4_determinism},
      {"A5", a5_capability},
      {"A6", [&] { return a6_scaling(ctx); }},
      {"A7", [&] { return a7_memory(ctx); }},
      {"A8", a8_numerics},
      {"A9", a9_baseline},
      {"A10", [&] { return a10_interchange(ctx); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = std::find(expected_fail.begin(), expected_fail.end(), name) != expected_fail.end();
    failed += !o.pass && !known;
    std::cout << name << " " << (o.pass ? "PASS" : known ? "FAIL (known, not counted)" : "FAIL") << " ("
              << fmt(secs, 3) << " s) " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
