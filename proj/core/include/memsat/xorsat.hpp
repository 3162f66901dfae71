#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "memsat/cnf.hpp"

namespace memsat {

/// x_a XOR x_b XOR x_c = parity, with pairwise distinct a, b, c.
struct XorClause {
  std::array<Var, 3> vars{};
  bool parity = false;

  bool satisfied_by(const Assignment& a) const {
    return (a[vars[0] - 1] ^ a[vars[1] - 1] ^ a[vars[2] - 1]) == parity;
  }
  friend bool operator==(const XorClause&, const XorClause&) = default;
};

struct XorInstance {
  std::size_t n_vars = 0;
  std::vector<XorClause> clauses;
  double rho_xor = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const XorInstance&, const XorInstance&) = default;
};

inline constexpr int kGeneratorVersion = 1;
inline constexpr double kDeltaRhoXor = 1.25;
inline constexpr std::size_t kMinGeneratorVars = 8;
inline constexpr std::uint64_t kMaxRepairSwaps = 1'000'000;

/// Number of XOR clauses for n variables at density rho_xor: nearest integer,
/// halves rounded away from zero.
std::size_t xor_clause_count(std::size_t n, double rho_xor);

/// Balanced random 3-XORSAT: every variable occurs 3 or 4 times.
///
/// Procedure, in RNG draw order (SplitMix64 seeded with
/// derive_seed(seed, SeedStream::kGenerator)):
///  1. M = xor_clause_count(n, rho_xor); b = 3M - 3n variables get four
///     occurrences, the rest three. The four-occurrence set is the first b
///     entries of a Fisher-Yates shuffle of 1..n.
///  2. The slot list (each variable repeated by its occurrence count, in
///     variable order) is Fisher-Yates shuffled and cut into triples.
///  3. While a triple repeats a variable, its duplicate slot is swapped with
///     a uniformly drawn slot of another triple when the swap leaves both
///     triples without new repeats. At most kMaxRepairSwaps attempts.
///  4. One fair coin per clause, in clause order, gives its parity.
///
/// Throws InfeasibleBalance when n < 8, 3*rho_xor > 4, the slot count
/// cannot be split into 3/4 occurrences, or repair does not converge.
XorInstance generate_balanced_xorsat(std::size_t n, double rho_xor, std::uint64_t seed);

/// Occurrence count of each variable (index 0 is variable 1).
std::vector<std::size_t> occurrence_counts(const XorInstance& xi);

/// The four 3-clauses that together are equivalent to the XOR equation. Each
/// clause rules out exactly one violating assignment; clauses are ordered by
/// the violating assignment read as a 3-bit number (first variable high).
std::array<CnfClause, 4> xor_to_cnf(const XorClause& clause);

/// CNF with 4 clauses per XOR clause, each expansion contiguous and in XOR
/// clause order.
CnfFormula expand_instance(const XorInstance& xi);

/// Copy of xi whose parities are chosen so that `planted` satisfies every
/// XOR clause.
XorInstance plant_solution(const XorInstance& xi, const Assignment& planted);

std::size_t count_unsat(const XorInstance& xi, const Assignment& a);

}  // namespace memsat
