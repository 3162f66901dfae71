#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "memsat/cnf.hpp"
#include "memsat/solve_result.hpp"

namespace memsat {

/// Parameters of the voltage/memory flow field and of its integration.
/// Defaults are the committed values listed in docs/parameters.md.
struct DmmParams {
  double alpha = 5.0;     // long-term memory rate
  double beta = 4.0;      // short-term memory rate
  double gamma = 0.25;    // short-term threshold, in (0, 0.5)
  double delta = 0.05;    // long-term threshold, in (0, gamma)
  double epsilon = 1e-3;  // short-term floor offset
  double zeta = 0.15;     // rigidity weight
  double dt = 0.5;
  /// Cap of the long-term memory; unset means 1e4 * M.
  std::optional<double> xl_max = 2.25;
  std::int64_t max_steps = 1'000'000;
  std::int64_t eval_stride = 10;
  std::int64_t sample_stride = 100;
  /// Step-size control: halve dt when max|dt*dv| > 0.5, double it when
  /// < 0.05, staying within [dt/128, 10*dt].
  bool adaptive = false;

  double effective_xl_max(std::size_t n_clauses) const {
    return xl_max ? *xl_max : 1e4 * static_cast<double>(n_clauses);
  }
  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct DmmState {
  std::vector<double> v;   // voltage per variable, [-1, 1]
  std::vector<double> xs;  // short-term memory per clause, [0, 1]
  std::vector<double> xl;  // long-term memory per clause, [1, xl_max]
  double t = 0.0;
  std::int64_t step = 0;

  friend bool operator==(const DmmState&, const DmmState&) = default;
};

struct DmmDerivatives {
  std::vector<double> dv, dxs, dxl;
};

/// C_m(v) = 1/2 * min over literals of (1 - q*v), q = +1 / -1 for
/// positive / negated literals.
double clause_value(const CnfFormula& f, ClauseId m, std::span<const double> v);

/// The flow field. For each clause m with literal terms t_j = 1 - q_j v_j:
///   G_{m,i} = 1/2 q_i min_{j != i} t_j
///   R_{m,i} = 1/2 (q_i - v_i) if i is the minimizing literal (first among
///             ties), else 0
///   dv_i   += xl_m xs_m G_{m,i} + (1 + zeta xl_m)(1 - xs_m) R_{m,i}
///   dxs_m   = beta (xs_m + epsilon)(C_m - gamma)
///   dxl_m   = alpha (C_m - delta)
/// Contributions to dv are summed in clause order.
DmmDerivatives compute_derivatives(const CnfFormula& f, const DmmState& s, const DmmParams& p);

/// s + dt * F(s), clamped to the state box. Throws NonFiniteState.
DmmState euler_step(const CnfFormula& f, const DmmState& s, const DmmParams& p);

/// bit_i = v_i > 0.
Assignment readout(std::span<const double> v);
inline Assignment readout(const DmmState& s) { return readout(s.v); }

/// v ~ U(-1, 1) from derive_seed(seed, SeedStream::kDmmInit), xs = 0.5, xl = 1.
DmmState initial_state(const CnfFormula& f, std::uint64_t seed);

/// External limits on a run, on top of the step budget in the params.
struct RunControl {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Integrates from initial_state(f, seed) until best_unsat <=
/// threshold_count(threshold_fraction, M), the step budget or deadline is
/// spent, or max|dv| < 1e-9 at 100 consecutive evaluations. The unsat count
/// of readout(s) is evaluated every eval_stride steps (and at step 0); the
/// trajectory holds the evaluations at multiples of sample_stride plus the
/// final one.
SolveResult solve_dmm(const CnfFormula& f, const DmmParams& p, double threshold_fraction,
                      std::uint64_t seed, const RunControl& control = {});

/// Reusable integrator over a fixed formula. Holds a flattened copy of the
/// clause/literal structure and the derivative buffers, so repeated steps
/// do not allocate.
class DmmIntegrator {
 public:
  DmmIntegrator(const CnfFormula& f, const DmmParams& p);

  /// Fills the internal derivative buffers from s.
  void derivatives(const DmmState& s);
  /// Applies s += dt * (current buffers), clamps, advances t and step.
  /// Throws NonFiniteState.
  void apply(DmmState& s, double dt) const;
  /// derivatives() then apply() with the configured dt.
  void step(DmmState& s) {
    derivatives(s);
    apply(s, params_.dt);
  }

  std::span<const double> dv() const { return dv_; }
  std::span<const double> dxs() const { return dxs_; }
  std::span<const double> dxl() const { return dxl_; }
  double max_abs_dv() const;
  /// Unsatisfied clauses under readout(v).
  std::size_t unsat_count(std::span<const double> v) const;
  double xl_max() const { return xl_max_; }
  const DmmParams& params() const { return params_; }

 private:
  void derivatives_e3(const DmmState& s);

  DmmParams params_;
  double xl_max_;
  bool all_three_ = false;
  std::size_t n_vars_;
  std::vector<std::uint32_t> clause_start_;
  std::vector<std::uint32_t> lit_var_;  // 0-based
  std::vector<double> lit_sign_;
  std::vector<double> term_;            // scratch, one per literal
  std::vector<double> dv_, dxs_, dxl_;
};

}  // namespace memsat
