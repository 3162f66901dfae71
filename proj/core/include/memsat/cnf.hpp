#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace memsat {

using Var = std::uint32_t;  // 1-based
using ClauseId = std::uint32_t;

struct Literal {
  Var var = 0;
  bool negated = false;

  /// +1 for a positive literal, -1 for a negated one.
  int sign() const { return negated ? -1 : 1; }
  /// DIMACS integer encoding.
  long long dimacs() const { return negated ? -static_cast<long long>(var) : var; }
  static Literal from_dimacs(long long x) {
    return Literal{static_cast<Var>(x < 0 ? -x : x), x < 0};
  }
  bool satisfied_by(bool value) const { return value != negated; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfClause {
  std::vector<Literal> literals;

  friend bool operator==(const CnfClause&, const CnfClause&) = default;
};

/// One entry of the per-variable occurrence index.
struct Occurrence {
  ClauseId clause = 0;
  bool negated = false;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

using Assignment = std::vector<bool>;

/// Immutable CNF formula with a clause/variable incidence index.
///
/// Construction validates every clause: non-empty, variables in [1, n_vars],
/// no variable repeated within a clause.
class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(std::size_t n_vars, std::vector<CnfClause> clauses);

  std::size_t n_vars() const { return n_vars_; }
  std::size_t n_clauses() const { return clauses_.size(); }
  const std::vector<CnfClause>& clauses() const { return clauses_; }
  const CnfClause& clause(ClauseId id) const { return clauses_[id]; }

  /// Clauses containing var (1-based), in increasing clause order.
  std::span<const Occurrence> occurrences(Var var) const {
    return {occ_.data() + occ_start_[var - 1], occ_.data() + occ_start_[var]};
  }

  std::size_t literal_count() const { return occ_.size(); }
  double density() const {
    return n_vars_ == 0 ? 0.0 : static_cast<double>(clauses_.size()) / static_cast<double>(n_vars_);
  }

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.n_vars_ == b.n_vars_ && a.clauses_ == b.clauses_;
  }

 private:
  std::size_t n_vars_ = 0;
  std::vector<CnfClause> clauses_;
  std::vector<std::size_t> occ_start_{0};
  std::vector<Occurrence> occ_;
};

bool clause_satisfied(const CnfClause& clause, const Assignment& a);

/// Number of clauses with no true literal under a.
/// Throws LengthMismatch when a.size() != f.n_vars().
std::size_t count_unsat(const CnfFormula& f, const Assignment& a);

struct MaxSatOptimum {
  std::size_t min_unsat = 0;
  Assignment witness;
};

/// Exhaustive scan of all 2^N assignments. Ties go to the lowest assignment
/// in lexicographic bit order (x1 most significant). Throws TooLarge for N > 24.
MaxSatOptimum brute_force_max_sat(const CnfFormula& f);

inline constexpr std::size_t kBruteForceMaxVars = 24;

/// Uniform random k-SAT with distinct variables per clause. Test helper only.
CnfFormula random_ksat(std::size_t n_vars, std::size_t n_clauses, std::size_t k, std::uint64_t seed);

/// The seven-clause example formula over x1..x3 used throughout the docs.
CnfFormula example_formula();

std::string to_string(const Assignment& a);

}  // namespace memsat
