#include "memsat/dmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "memsat/errors.hpp"
#include "memsat/rng.hpp"

namespace memsat {

void DmmParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid dmm parameter: " + what); };
  if (!(alpha > 0) || !(beta > 0) || !(epsilon > 0) || !(zeta > 0)) fail("rates must be > 0");
  if (!(delta > 0 && delta < gamma && gamma < 0.5)) fail("need 0 < delta < gamma < 0.5");
  if (!(dt > 0) || !std::isfinite(dt)) fail("dt must be > 0");
  if (xl_max && !(*xl_max >= 1)) fail("xl_max must be >= 1");
  if (max_steps < 0) fail("max_steps must be >= 0");
  if (eval_stride < 1 || sample_stride < 1) fail("strides must be >= 1");
  if (sample_stride % eval_stride != 0) fail("sample_stride must be a multiple of eval_stride");
}

double clause_value(const CnfFormula& f, ClauseId m, std::span<const double> v) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& l : f.clause(m).literals) {
    lo = std::min(lo, 1.0 - l.sign() * v[l.var - 1]);
  }
  return 0.5 * lo;
}

DmmIntegrator::DmmIntegrator(const CnfFormula& f, const DmmParams& p)
    : params_(p), xl_max_(p.effective_xl_max(f.n_clauses())), n_vars_(f.n_vars()) {
  params_.validate();
  clause_start_.reserve(f.n_clauses() + 1);
  clause_start_.push_back(0);
  lit_var_.reserve(f.literal_count());
  lit_sign_.reserve(f.literal_count());
  for (const auto& c : f.clauses()) {
    for (const auto& l : c.literals) {
      lit_var_.push_back(l.var - 1);
      lit_sign_.push_back(l.sign());
    }
    clause_start_.push_back(static_cast<std::uint32_t>(lit_var_.size()));
  }
  term_.resize(lit_var_.size());
  all_three_ = std::all_of(f.clauses().begin(), f.clauses().end(),
                           [](const CnfClause& c) { return c.literals.size() == 3; });
  dv_.resize(n_vars_);
  dxs_.resize(f.n_clauses());
  dxl_.resize(f.n_clauses());
}

void DmmIntegrator::derivatives(const DmmState& s) {
  if (all_three_) {
    derivatives_e3(s);
    return;
  }
  const auto& p = params_;
  std::fill(dv_.begin(), dv_.end(), 0.0);
  const std::size_t m_count = dxs_.size();
  for (std::size_t m = 0; m < m_count; ++m) {
    const std::uint32_t begin = clause_start_[m], end = clause_start_[m + 1];
    // Minimum and runner-up of the literal terms; ties keep the first index.
    double lo = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::uint32_t arg = begin;
    for (std::uint32_t k = begin; k < end; ++k) {
      const double t = 1.0 - lit_sign_[k] * s.v[lit_var_[k]];
      term_[k] = t;
      if (t < lo) {
        second = lo;
        lo = t;
        arg = k;
      } else if (t < second) {
        second = t;
      }
    }
    const double c = 0.5 * lo;
    const double xs = s.xs[m], xl = s.xl[m];
    const double grad_w = xl * xs;
    const double rigid_w = (1.0 + p.zeta * xl) * (1.0 - xs);
    for (std::uint32_t k = begin; k < end; ++k) {
      const double q = lit_sign_[k];
      // A single-literal clause has no other literal; its gradient term is 0.
      const double others = k == arg ? second : lo;
      const double g = std::isfinite(others) ? 0.5 * q * others : 0.0;
      double contrib = grad_w * g;
      if (k == arg) contrib += rigid_w * 0.5 * (q - s.v[lit_var_[k]]);
      dv_[lit_var_[k]] += contrib;
    }
    dxs_[m] = p.beta * (xs + p.epsilon) * (c - p.gamma);
    dxl_[m] = p.alpha * (c - p.delta);
  }
}

// Same arithmetic as the general loop, unrolled for 3-literal clauses.
void DmmIntegrator::derivatives_e3(const DmmState& s) {
  const auto& p = params_;
  std::fill(dv_.begin(), dv_.end(), 0.0);
  const double* v = s.v.data();
  double* dv = dv_.data();
  const std::uint32_t* var = lit_var_.data();
  const double* q = lit_sign_.data();
  const std::size_t m_count = dxs_.size();
  for (std::size_t m = 0; m < m_count; ++m, var += 3, q += 3) {
    const double v0 = v[var[0]], v1 = v[var[1]], v2 = v[var[2]];
    const double t0 = 1.0 - q[0] * v0, t1 = 1.0 - q[1] * v1, t2 = 1.0 - q[2] * v2;
    const double m12 = std::min(t1, t2), m02 = std::min(t0, t2), m01 = std::min(t0, t1);
    // First index wins ties: literal 0 if t0 <= min(t1, t2), else literal 1
    // if t1 <= t2, else literal 2.
    const bool first = t0 <= m12;
    const bool second = !first && t1 <= t2;
    const bool third = !first && !second;
    const double lo = first ? t0 : (second ? t1 : t2);
    const double c = 0.5 * lo;
    const double xs = s.xs[m], xl = s.xl[m];
    const double grad_w = 0.5 * xl * xs;
    const double rigid_w = 0.5 * (1.0 + p.zeta * xl) * (1.0 - xs);
    const double d0 = grad_w * q[0] * m12 + (first ? rigid_w * (q[0] - v0) : 0.0);
    const double d1 = grad_w * q[1] * m02 + (second ? rigid_w * (q[1] - v1) : 0.0);
    const double d2 = grad_w * q[2] * m01 + (third ? rigid_w * (q[2] - v2) : 0.0);
    dv[var[0]] += d0;
    dv[var[1]] += d1;
    dv[var[2]] += d2;
    dxs_[m] = p.beta * (xs + p.epsilon) * (c - p.gamma);
    dxl_[m] = p.alpha * (c - p.delta);
  }
}

void DmmIntegrator::apply(DmmState& s, double dt) const {
  bool finite = true;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    const double x = s.v[i] + dt * dv_[i];
    finite &= std::isfinite(x);
    s.v[i] = std::clamp(x, -1.0, 1.0);
  }
  for (std::size_t m = 0; m < s.xs.size(); ++m) {
    const double a = s.xs[m] + dt * dxs_[m];
    const double b = s.xl[m] + dt * dxl_[m];
    finite &= std::isfinite(a) && std::isfinite(b);
    s.xs[m] = std::clamp(a, 0.0, 1.0);
    s.xl[m] = std::clamp(b, 1.0, xl_max_);
  }
  s.t += dt;
  ++s.step;
  if (!finite) throw NonFiniteState(s.step);
}

std::size_t DmmIntegrator::unsat_count(std::span<const double> v) const {
  std::size_t unsat = 0;
  const std::size_t m_count = dxs_.size();
  for (std::size_t m = 0; m < m_count; ++m) {
    bool sat = false;
    for (std::uint32_t k = clause_start_[m]; k < clause_start_[m + 1] && !sat; ++k) {
      sat = (v[lit_var_[k]] > 0.0) == (lit_sign_[k] > 0.0);
    }
    unsat += sat ? 0 : 1;
  }
  return unsat;
}

double DmmIntegrator::max_abs_dv() const {
  double mx = 0.0;
  for (double d : dv_) mx = std::max(mx, std::abs(d));
  return mx;
}

DmmDerivatives compute_derivatives(const CnfFormula& f, const DmmState& s, const DmmParams& p) {
  DmmIntegrator integ(f, p);
  integ.derivatives(s);
  return {{integ.dv().begin(), integ.dv().end()},
          {integ.dxs().begin(), integ.dxs().end()},
          {integ.dxl().begin(), integ.dxl().end()}};
}

DmmState euler_step(const CnfFormula& f, const DmmState& s, const DmmParams& p) {
  DmmIntegrator integ(f, p);
  DmmState next = s;
  integ.step(next);
  return next;
}

Assignment readout(std::span<const double> v) {
  Assignment a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = v[i] > 0.0;
  return a;
}

DmmState initial_state(const CnfFormula& f, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, SeedStream::kDmmInit));
  DmmState s;
  s.v.resize(f.n_vars());
  for (auto& x : s.v) x = rng.uniform(-1.0, 1.0);
  s.xs.assign(f.n_clauses(), 0.5);
  s.xl.assign(f.n_clauses(), 1.0);
  return s;
}

namespace {

constexpr double kConvergedDv = 1e-9;
constexpr int kConvergedEvals = 100;

}  // namespace

SolveResult solve_dmm(const CnfFormula& f, const DmmParams& p, double threshold_fraction,
                      std::uint64_t seed, const RunControl& control) {
  if (!(threshold_fraction >= 0.0 && threshold_fraction <= 1.0)) {
    throw ConfigError("threshold_fraction must lie in [0, 1]");
  }
  const auto start = std::chrono::steady_clock::now();
  DmmIntegrator integ(f, p);
  DmmState s = initial_state(f, seed);
  const std::size_t target = threshold_count(threshold_fraction, f.n_clauses());

  SolveResult r;
  r.best_unsat = f.n_clauses() + 1;
  int quiet_evals = 0;
  double dt = p.dt;
  const double dt_min = p.dt / 128.0, dt_max = 10.0 * p.dt;

  auto evaluate = [&]() -> bool {
    const std::size_t unsat = integ.unsat_count(s.v);
    if (unsat < r.best_unsat) {
      r.best_unsat = unsat;
      r.best_assignment = readout(s);
      r.step_of_best = s.step;
    }
    if (s.step % p.sample_stride == 0) r.trajectory.push_back({s.step, unsat});
    if (r.best_unsat <= target) {
      r.stop_reason = StopReason::kThresholdReached;
      return true;
    }
    return false;
  };

  bool done = evaluate();
  bool have_dv = false;
  while (!done) {
    if (s.step >= p.max_steps || (control.deadline && std::chrono::steady_clock::now() >= *control.deadline)) {
      r.stop_reason = StopReason::kBudgetExhausted;
      break;
    }
    integ.derivatives(s);
    have_dv = true;
    if (p.adaptive) {
      const double jump = dt * integ.max_abs_dv();
      if (jump > 0.5) dt = std::max(dt_min, dt * 0.5);
      else if (jump < 0.05) dt = std::min(dt_max, dt * 2.0);
    }
    integ.apply(s, dt);
    if (s.step % p.eval_stride == 0) {
      done = evaluate();
      if (!done && have_dv) {
        quiet_evals = integ.max_abs_dv() < kConvergedDv ? quiet_evals + 1 : 0;
        if (quiet_evals >= kConvergedEvals) {
          r.stop_reason = StopReason::kConverged;
          done = true;
        }
      }
    }
  }
  if (r.trajectory.empty() || r.trajectory.back().step != s.step) {
    r.trajectory.push_back({s.step, integ.unsat_count(s.v)});
  }
  r.steps_total = s.step;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace memsat
