#include "memsat/xorsat.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "memsat/errors.hpp"
#include "memsat/rng.hpp"

namespace memsat {
namespace {

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

bool has_repeat(const Var* t) { return t[0] == t[1] || t[0] == t[2] || t[1] == t[2]; }

// Position (0..2) of the second occurrence of a repeated variable.
int repeat_position(const Var* t) {
  if (t[1] == t[0]) return 1;
  return 2;
}

}  // namespace

std::size_t xor_clause_count(std::size_t n, double rho_xor) {
  return static_cast<std::size_t>(std::llround(rho_xor * static_cast<double>(n)));
}

XorInstance generate_balanced_xorsat(std::size_t n, double rho_xor, std::uint64_t seed) {
  if (n < kMinGeneratorVars) throw InfeasibleBalance(n, rho_xor, "need at least 8 variables");
  if (!(rho_xor > 0.0) || 3.0 * rho_xor > 4.0) {
    throw InfeasibleBalance(n, rho_xor, "need 0 < rho_xor <= 4/3");
  }
  const std::size_t m = xor_clause_count(n, rho_xor);
  const std::size_t slots = 3 * m;
  if (slots < 3 * n || slots > 4 * n) {
    throw InfeasibleBalance(n, rho_xor,
                            std::to_string(slots) + " literal slots cannot be split into 3 or 4 "
                            "occurrences per variable");
  }
  const std::size_t n_four = slots - 3 * n;

  SplitMix64 rng(derive_seed(seed, SeedStream::kGenerator));

  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), Var{1});
  shuffle(order, rng);
  std::vector<std::size_t> occ(n + 1, 3);
  for (std::size_t i = 0; i < n_four; ++i) occ[order[i]] = 4;

  std::vector<Var> slot;
  slot.reserve(slots);
  for (Var v = 1; v <= n; ++v) slot.insert(slot.end(), occ[v], v);
  shuffle(slot, rng);

  std::vector<std::size_t> bad;
  for (std::size_t c = 0; c < m; ++c) {
    if (has_repeat(&slot[3 * c])) bad.push_back(c);
  }
  std::uint64_t attempts = 0;
  std::size_t next_bad = 0;
  while (next_bad < bad.size()) {
    const std::size_t c = bad[next_bad];
    Var* tc = &slot[3 * c];
    if (!has_repeat(tc)) {
      ++next_bad;
      continue;
    }
    if (++attempts > kMaxRepairSwaps) {
      throw InfeasibleBalance(n, rho_xor, "duplicate repair did not converge");
    }
    const std::size_t pos = 3 * c + repeat_position(tc);
    const std::size_t other = rng.below(slots);
    const std::size_t d = other / 3;
    if (d == c) continue;
    Var* td = &slot[3 * d];
    const Var incoming = slot[other];
    const Var outgoing = slot[pos];
    if (incoming == tc[0] || incoming == tc[1] || incoming == tc[2]) continue;
    if (outgoing == td[0] || outgoing == td[1] || outgoing == td[2]) continue;
    std::swap(slot[pos], slot[other]);
  }

  XorInstance xi;
  xi.n_vars = n;
  xi.rho_xor = rho_xor;
  xi.seed = seed;
  xi.clauses.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    xi.clauses[c].vars = {slot[3 * c], slot[3 * c + 1], slot[3 * c + 2]};
  }
  for (auto& c : xi.clauses) c.parity = rng.coin();
  return xi;
}

std::vector<std::size_t> occurrence_counts(const XorInstance& xi) {
  std::vector<std::size_t> counts(xi.n_vars, 0);
  for (const auto& c : xi.clauses) {
    for (Var v : c.vars) ++counts[v - 1];
  }
  return counts;
}

std::array<CnfClause, 4> xor_to_cnf(const XorClause& clause) {
  std::array<CnfClause, 4> out;
  std::size_t k = 0;
  for (unsigned bits = 0; bits < 8; ++bits) {
    const bool a = (bits >> 2) & 1U, b = (bits >> 1) & 1U, c = bits & 1U;
    if ((a ^ b ^ c) == clause.parity) continue;
    // A literal is false under (a, b, c) when it is negated exactly where the
    // bit is set.
    out[k++].literals = {Literal{clause.vars[0], a}, Literal{clause.vars[1], b},
                         Literal{clause.vars[2], c}};
  }
  return out;
}

CnfFormula expand_instance(const XorInstance& xi) {
  std::vector<CnfClause> clauses;
  clauses.reserve(4 * xi.clauses.size());
  for (const auto& xc : xi.clauses) {
    for (auto& c : xor_to_cnf(xc)) clauses.push_back(std::move(c));
  }
  return CnfFormula(xi.n_vars, std::move(clauses));
}

XorInstance plant_solution(const XorInstance& xi, const Assignment& planted) {
  if (planted.size() != xi.n_vars) throw LengthMismatch(xi.n_vars, planted.size());
  XorInstance out = xi;
  for (auto& c : out.clauses) {
    c.parity = planted[c.vars[0] - 1] ^ planted[c.vars[1] - 1] ^ planted[c.vars[2] - 1];
  }
  return out;
}

std::size_t count_unsat(const XorInstance& xi, const Assignment& a) {
  if (a.size() != xi.n_vars) throw LengthMismatch(xi.n_vars, a.size());
  std::size_t unsat = 0;
  for (const auto& c : xi.clauses) unsat += c.satisfied_by(a) ? 0 : 1;
  return unsat;
}

}  // namespace memsat
