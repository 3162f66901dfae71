#include "memsat/walksat.hpp"

#include <chrono>
#include <limits>

#include "memsat/errors.hpp"
#include "memsat/rng.hpp"

namespace memsat {

void SlsParams::validate() const {
  if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("sls noise must lie in [0, 1]");
  if (max_flips < 0 || max_restarts < 0) throw ConfigError("sls budgets must be >= 1");
  if (!(threshold_fraction >= 0.0 && threshold_fraction <= 1.0)) {
    throw ConfigError("threshold_fraction must lie in [0, 1]");
  }
}

std::size_t break_count(const CnfFormula& f, const Assignment& a, Var var) {
  if (a.size() != f.n_vars()) throw LengthMismatch(f.n_vars(), a.size());
  std::size_t breaks = 0;
  for (const auto& occ : f.occurrences(var)) {
    if (occ.negated == a[var - 1]) continue;  // literal currently false
    bool other_true = false;
    for (const auto& l : f.clause(occ.clause).literals) {
      if (l.var != var && l.satisfied_by(a[l.var - 1])) {
        other_true = true;
        break;
      }
    }
    breaks += other_true ? 0 : 1;
  }
  return breaks;
}

namespace {

// Incremental WalkSAT state: true-literal count per clause and the set of
// unsatisfied clauses with O(1) insert/remove.
class Search {
 public:
  explicit Search(const CnfFormula& f)
      : f_(f), a_(f.n_vars()), true_count_(f.n_clauses()), where_(f.n_clauses(), kNone) {}

  void reset(SplitMix64& rng) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = rng.coin();
    unsat_.clear();
    for (std::size_t c = 0; c < f_.n_clauses(); ++c) {
      std::uint32_t n = 0;
      for (const auto& l : f_.clause(static_cast<ClauseId>(c)).literals) n += l.satisfied_by(a_[l.var - 1]);
      true_count_[c] = n;
      where_[c] = kNone;
      if (n == 0) add(static_cast<ClauseId>(c));
    }
  }

  std::size_t breaks(Var v) const {
    std::size_t b = 0;
    for (const auto& occ : f_.occurrences(v)) {
      if (occ.negated != a_[v - 1] && true_count_[occ.clause] == 1) ++b;
    }
    return b;
  }

  void flip(Var v) {
    a_[v - 1] = !a_[v - 1];
    for (const auto& occ : f_.occurrences(v)) {
      if (occ.negated != a_[v - 1]) {
        if (true_count_[occ.clause]++ == 0) remove(occ.clause);
      } else {
        if (--true_count_[occ.clause] == 0) add(occ.clause);
      }
    }
  }

  std::size_t unsat() const { return unsat_.size(); }
  ClauseId unsat_at(std::size_t i) const { return unsat_[i]; }
  const Assignment& assignment() const { return a_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void add(ClauseId c) {
    where_[c] = unsat_.size();
    unsat_.push_back(c);
  }
  void remove(ClauseId c) {
    const std::size_t i = where_[c];
    const ClauseId last = unsat_.back();
    unsat_[i] = last;
    where_[last] = i;
    unsat_.pop_back();
    where_[c] = kNone;
  }

  const CnfFormula& f_;
  Assignment a_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::size_t> where_;
  std::vector<ClauseId> unsat_;
};

constexpr std::int64_t kSampleEvery = 1000;
constexpr std::int64_t kDeadlineCheckEvery = 1024;

}  // namespace

SolveResult solve_sls(const CnfFormula& f, const SlsParams& p, const RunControl& control,
                      const FlipObserver& observer) {
  p.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t target = threshold_count(p.threshold_fraction, f.n_clauses());
  const std::int64_t max_flips = p.effective_max_flips(f.n_vars());
  const std::int64_t max_tries = p.effective_max_restarts();

  SplitMix64 rng(derive_seed(p.seed, SeedStream::kSls));
  Search search(f);
  SolveResult r;
  r.best_unsat = f.n_clauses() + 1;
  r.stop_reason = StopReason::kBudgetExhausted;
  std::int64_t flips = 0;

  auto improve = [&]() {
    if (search.unsat() < r.best_unsat) {
      r.best_unsat = search.unsat();
      r.best_assignment = search.assignment();
      r.step_of_best = flips;
      r.trajectory.push_back({flips, r.best_unsat});
    }
    return r.best_unsat <= target;
  };

  bool done = false;
  for (std::int64_t attempt = 0; attempt < max_tries && !done; ++attempt) {
    search.reset(rng);
    if (improve()) {
      r.stop_reason = StopReason::kThresholdReached;
      break;
    }
    for (std::int64_t k = 0; k < max_flips; ++k) {
      if (control.deadline && flips % kDeadlineCheckEvery == 0 &&
          std::chrono::steady_clock::now() >= *control.deadline) {
        done = true;
        break;
      }
      const ClauseId c = search.unsat_at(rng.below(search.unsat()));
      const auto& lits = f.clause(c).literals;
      Var pick = 0;
      std::size_t best_break = std::numeric_limits<std::size_t>::max();
      for (const auto& l : lits) {
        const std::size_t b = search.breaks(l.var);
        if (b < best_break) {
          best_break = b;
          pick = l.var;
        }
      }
      // Freebie moves take precedence over noise.
      if (best_break > 0 && rng.uniform() < p.noise) pick = lits[rng.below(lits.size())].var;
      if (observer) observer(flips, pick, c);
      search.flip(pick);
      ++flips;
      if (improve()) {
        r.stop_reason = StopReason::kThresholdReached;
        done = true;
        break;
      }
      if (flips % kSampleEvery == 0 && r.trajectory.back().step != flips) {
        r.trajectory.push_back({flips, r.best_unsat});
      }
    }
  }
  if (r.trajectory.empty() || r.trajectory.back().step != flips) {
    r.trajectory.push_back({flips, r.best_unsat});
  }
  r.steps_total = flips;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace memsat
