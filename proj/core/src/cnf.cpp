#include "memsat/cnf.hpp"

#include <algorithm>

#include "memsat/errors.hpp"
#include "memsat/rng.hpp"

namespace memsat {

CnfFormula::CnfFormula(std::size_t n_vars, std::vector<CnfClause> clauses)
    : n_vars_(n_vars), clauses_(std::move(clauses)) {
  std::vector<std::size_t> counts(n_vars_ + 1, 0);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const auto& lits = clauses_[c].literals;
    if (lits.empty()) throw Error("clause " + std::to_string(c) + " is empty");
    for (std::size_t i = 0; i < lits.size(); ++i) {
      const Var v = lits[i].var;
      if (v == 0 || v > n_vars_) {
        throw HeaderMismatch("clause " + std::to_string(c) + " references variable " +
                             std::to_string(v) + " outside 1.." + std::to_string(n_vars_));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (lits[j].var == v) {
          throw Error("clause " + std::to_string(c) + " repeats variable " + std::to_string(v));
        }
      }
      ++counts[v];
    }
  }
  occ_start_.assign(n_vars_ + 1, 0);
  for (std::size_t v = 1; v <= n_vars_; ++v) occ_start_[v] = occ_start_[v - 1] + counts[v];
  occ_.resize(occ_start_[n_vars_]);
  std::vector<std::size_t> fill(occ_start_.begin(), occ_start_.end() - 1);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    for (const auto& lit : clauses_[c].literals) {
      occ_[fill[lit.var - 1]++] = Occurrence{static_cast<ClauseId>(c), lit.negated};
    }
  }
}

bool clause_satisfied(const CnfClause& clause, const Assignment& a) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](const Literal& l) { return l.satisfied_by(a[l.var - 1]); });
}

std::size_t count_unsat(const CnfFormula& f, const Assignment& a) {
  if (a.size() != f.n_vars()) throw LengthMismatch(f.n_vars(), a.size());
  std::size_t unsat = 0;
  for (const auto& c : f.clauses()) unsat += clause_satisfied(c, a) ? 0 : 1;
  return unsat;
}

MaxSatOptimum brute_force_max_sat(const CnfFormula& f) {
  const std::size_t n = f.n_vars();
  if (n > kBruteForceMaxVars) {
    throw TooLarge("brute force limited to " + std::to_string(kBruteForceMaxVars) +
                   " variables, formula has " + std::to_string(n));
  }
  // Clause masks: bit (n-1-i) of an index is variable i+1, so increasing
  // index is lexicographic order with x1 most significant.
  struct Mask {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Mask> masks;
  masks.reserve(f.n_clauses());
  for (const auto& c : f.clauses()) {
    Mask m;
    for (const auto& l : c.literals) {
      const std::uint32_t bit = std::uint32_t{1} << (n - l.var);
      (l.negated ? m.neg : m.pos) |= bit;
    }
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::size_t best = f.n_clauses() + 1;
  std::uint64_t best_index = 0;
  for (std::uint64_t x = 0; x < total && best > 0; ++x) {
    const auto bits = static_cast<std::uint32_t>(x);
    std::size_t unsat = 0;
    for (const auto& m : masks) {
      if ((bits & m.pos) == 0 && (~bits & m.neg) == 0) ++unsat;
      if (unsat >= best) break;
    }
    if (unsat < best) {
      best = unsat;
      best_index = x;
    }
  }
  MaxSatOptimum out;
  out.min_unsat = best;
  out.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.witness[i] = ((best_index >> (n - 1 - i)) & 1U) != 0;
  return out;
}

CnfFormula random_ksat(std::size_t n_vars, std::size_t n_clauses, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n_vars) throw Error("random_ksat: need 1 <= k <= n_vars");
  SplitMix64 rng(seed);
  std::vector<CnfClause> clauses(n_clauses);
  for (auto& c : clauses) {
    while (c.literals.size() < k) {
      const Var v = static_cast<Var>(rng.below(n_vars) + 1);
      const bool dup = std::any_of(c.literals.begin(), c.literals.end(),
                                   [v](const Literal& l) { return l.var == v; });
      if (!dup) c.literals.push_back(Literal{v, rng.coin()});
    }
  }
  return CnfFormula(n_vars, std::move(clauses));
}

CnfFormula example_formula() {
  const std::vector<std::vector<long long>> raw = {
      {1, 2}, {1, -2, 3}, {1, -2, -3}, {-1, -2, 3}, {-1, -3}, {-2, 3}, {-1, 2, 3}};
  std::vector<CnfClause> clauses;
  for (const auto& r : raw) {
    CnfClause c;
    for (auto x : r) c.literals.push_back(Literal::from_dimacs(x));
    clauses.push_back(std::move(c));
  }
  return CnfFormula(3, std::move(clauses));
}

std::string to_string(const Assignment& a) {
  std::string s;
  s.reserve(a.size() * 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ' ';
    s += a[i] ? '1' : '0';
  }
  return s;
}

}  // namespace memsat
