#pragma once

#include <cstdint>
#include <functional>

#include "memsat/cnf.hpp"
#include "memsat/dmm.hpp"
#include "memsat/solve_result.hpp"

namespace memsat {

/// WalkSAT/SKC settings. Zero budgets mean the defaults 100*N flips per try
/// and 100 tries.
struct SlsParams {
  double noise = 0.1;
  std::int64_t max_flips = 0;
  std::int64_t max_restarts = 0;
  std::uint64_t seed = 0;
  double threshold_fraction = 0.015;

  std::int64_t effective_max_flips(std::size_t n_vars) const {
    return max_flips > 0 ? max_flips : 100 * static_cast<std::int64_t>(n_vars);
  }
  std::int64_t effective_max_restarts() const { return max_restarts > 0 ? max_restarts : 100; }
  void validate() const;
};

/// Clauses that would become unsatisfied if `var` were flipped: clauses
/// where var's literal is currently the only true one.
std::size_t break_count(const CnfFormula& f, const Assignment& a, Var var);

/// Observer called before every flip with (flip index, variable, clause
/// the variable was picked from). Used by tests to inspect the search.
using FlipObserver = std::function<void(std::int64_t, Var, ClauseId)>;

/// WalkSAT/SKC with restarts. Each try starts from N coin draws (variable
/// order) of the kSls stream of p.seed; each flip picks a uniformly random
/// unsatisfied clause, flips a zero-break variable in it if any (first in
/// clause order), otherwise with probability `noise` a uniformly random
/// variable of the clause and else a minimum-break variable (first in
/// clause order). The best-so-far count is recorded on every improvement
/// and every 1000 flips.
/// steps_total counts flips across all tries.
SolveResult solve_sls(const CnfFormula& f, const SlsParams& p, const RunControl& control = {},
                      const FlipObserver& observer = {});

}  // namespace memsat
