#include <doctest.h>

#include <map>

#include <algorithm>
#include <set>

#include "memsat/cnf.hpp"
#include "memsat/errors.hpp"
#include "memsat/xorsat.hpp"
#include "test_util.hpp"

using namespace memsat;
using memsat::testing::bits_of;
using memsat::testing::naive_unsat;

namespace {

CnfClause clause(std::initializer_list<long long> lits) {
  CnfClause c;
  for (auto x : lits) c.literals.push_back(Literal::from_dimacs(x));
  return c;
}

// Occurrence histogram {count -> number of variables}.
std::map<std::size_t, std::size_t> occurrence_histogram(const XorInstance& xi) {
  std::map<std::size_t, std::size_t> h;
  for (auto c : occurrence_counts(xi)) ++h[c];
  return h;
}

}  // namespace

TEST_CASE("formula construction validates clauses and builds the occurrence index") {
  const CnfFormula f(3, {clause({1, -2, 3}), clause({-1, 2})});
  CHECK(f.n_vars() == 3);
  CHECK(f.n_clauses() == 2);
  CHECK(f.literal_count() == 5);
  REQUIRE(f.occurrences(1).size() == 2);
  CHECK(f.occurrences(1)[0] == Occurrence{0, false});
  CHECK(f.occurrences(1)[1] == Occurrence{1, true});
  CHECK(f.occurrences(3).size() == 1);

  CHECK_THROWS_AS(CnfFormula(3, {clause({1, 4})}), HeaderMismatch);
  CHECK_THROWS_AS(CnfFormula(3, {clause({1, -1})}), Error);
  CHECK_THROWS_AS(CnfFormula(3, {CnfClause{}}), Error);
}

TEST_CASE("occurrence index is consistent with the clause list") {
  const auto f = random_ksat(30, 90, 3, 5);
  std::size_t total = 0;
  for (Var v = 1; v <= f.n_vars(); ++v) {
    for (const auto& occ : f.occurrences(v)) {
      const auto& lits = f.clause(occ.clause).literals;
      const bool found = std::any_of(lits.begin(), lits.end(), [&](const Literal& l) {
        return l.var == v && l.negated == occ.negated;
      });
      CHECK(found);
      ++total;
    }
  }
  CHECK(total == f.literal_count());
}

TEST_CASE("count_unsat on the seven-clause example") {
  const auto f = example_formula();
  // (1,0,0) leaves only (~x1 | x2 | x3) unsatisfied.
  CHECK(count_unsat(f, {true, false, false}) == 1);
  CHECK(naive_unsat(f, {true, false, false}) == 1);
  CHECK_FALSE(clause_satisfied(f.clause(6), {true, false, false}));

  const CnfFormula contradiction(1, {clause({1}), clause({-1})});
  CHECK(count_unsat(contradiction, {true}) == 1);
  CHECK(count_unsat(contradiction, {false}) == 1);

  CHECK_THROWS_AS(count_unsat(f, {true, false}), LengthMismatch);
}

TEST_CASE("brute force optimum of the seven-clause example") {
  const auto opt = brute_force_max_sat(example_formula());
  CHECK(opt.min_unsat == 1);
  CHECK(count_unsat(example_formula(), opt.witness) == 1);
  // Lowest assignment in lexicographic order among the optima.
  CHECK(opt.witness == Assignment{false, false, false});

  const CnfFormula contradiction(1, {clause({1}), clause({-1})});
  CHECK(brute_force_max_sat(contradiction).min_unsat == 1);
  CHECK_THROWS_AS(brute_force_max_sat(random_ksat(25, 10, 3, 1)), TooLarge);
}

TEST_CASE("brute force agrees with exhaustive naive enumeration") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 4 + seed % 6;
    const auto f = random_ksat(n, 5 * n, 3, seed);
    std::size_t best = f.n_clauses() + 1;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) best = std::min(best, naive_unsat(f, bits_of(x, n)));
    const auto opt = brute_force_max_sat(f);
    CHECK(opt.min_unsat == best);
    CHECK(naive_unsat(f, opt.witness) == best);
  }
}

TEST_CASE("balanced generator: occurrence mix from slot arithmetic") {
  SUBCASE("n = 1000") {
    const auto xi = generate_balanced_xorsat(1000, 1.25, 7);
    CHECK(xi.clauses.size() == 1250);
    // a + b = N and 3a + 4b = 3750 give a = 250 (three times), b = 750 (four).
    const auto h = occurrence_histogram(xi);
    CHECK(h.size() == 2);
    CHECK(h.at(3) == 250);
    CHECK(h.at(4) == 750);
  }
  SUBCASE("n = 8") {
    const auto xi = generate_balanced_xorsat(8, 1.25, 1);
    CHECK(xi.clauses.size() == 10);
    const auto h = occurrence_histogram(xi);
    CHECK(h.at(3) == 2);
    CHECK(h.at(4) == 6);
  }
  SUBCASE("n = 9 rounds 11.25 to 11 clauses") {
    const auto xi = generate_balanced_xorsat(9, 1.25, 3);
    CHECK(xi.clauses.size() == 11);
    const auto h = occurrence_histogram(xi);
    CHECK(h.at(3) == 3);
    CHECK(h.at(4) == 6);
  }
}

TEST_CASE("balanced generator: clauses use distinct variables and output is seed-determined") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (std::size_t n : {8, 100}) {
      const auto xi = generate_balanced_xorsat(n, 1.25, seed);
      for (const auto& c : xi.clauses) {
        CHECK(c.vars[0] != c.vars[1]);
        CHECK(c.vars[0] != c.vars[2]);
        CHECK(c.vars[1] != c.vars[2]);
      }
      for (auto count : occurrence_counts(xi)) CHECK((count == 3 || count == 4));
    }
  }
  CHECK(generate_balanced_xorsat(1000, 1.25, 7) == generate_balanced_xorsat(1000, 1.25, 7));
  CHECK_FALSE(generate_balanced_xorsat(1000, 1.25, 7) == generate_balanced_xorsat(1000, 1.25, 8));
}

TEST_CASE("balanced generator: parities are roughly fair") {
  const auto xi = generate_balanced_xorsat(4000, 1.25, 11);
  const auto ones = std::count_if(xi.clauses.begin(), xi.clauses.end(), [](const XorClause& c) { return c.parity; });
  CHECK(ones > 2300);
  CHECK(ones < 2700);
}

TEST_CASE("balanced generator: infeasible requests") {
  CHECK_THROWS_AS(generate_balanced_xorsat(7, 1.25, 1), InfeasibleBalance);
  CHECK_THROWS_AS(generate_balanced_xorsat(100, 1.4, 1), InfeasibleBalance);
  CHECK_THROWS_AS(generate_balanced_xorsat(100, 0.0, 1), InfeasibleBalance);
  // 0.5 * 100 = 50 clauses, 150 slots < 3 per variable.
  CHECK_THROWS_AS(generate_balanced_xorsat(100, 0.5, 1), InfeasibleBalance);
  try {
    generate_balanced_xorsat(100, 0.5, 1);
  } catch (const InfeasibleBalance& e) {
    CHECK(e.n() == 100);
    CHECK(e.rho_xor() == doctest::Approx(0.5));
  }
  // rho = 1 and rho = 4/3 are the feasible extremes.
  CHECK(occurrence_histogram(generate_balanced_xorsat(90, 1.0, 1)).at(3) == 90);
  CHECK(occurrence_histogram(generate_balanced_xorsat(90, 4.0 / 3.0, 1)).at(4) == 90);
}

TEST_CASE("xor_to_cnf matches the listed expansions") {
  const auto odd = xor_to_cnf(XorClause{{1, 2, 3}, true});
  CHECK(odd[0] == clause({1, 2, 3}));
  CHECK(odd[1] == clause({1, -2, -3}));
  CHECK(odd[2] == clause({-1, 2, -3}));
  CHECK(odd[3] == clause({-1, -2, 3}));

  const auto even = xor_to_cnf(XorClause{{1, 2, 3}, false});
  std::set<std::vector<long long>> got, want = {{-1, -2, -3}, {-1, 2, 3}, {1, -2, 3}, {1, 2, -3}};
  for (const auto& c : even) {
    std::vector<long long> v;
    for (const auto& l : c.literals) v.push_back(l.dimacs());
    got.insert(v);
  }
  CHECK(got == want);
}

TEST_CASE("xor_to_cnf is equivalent to the XOR equation on all 8 assignments") {
  for (bool parity : {false, true}) {
    const XorClause x{{2, 5, 3}, parity};
    const auto cnf = xor_to_cnf(x);
    std::size_t satisfying = 0;
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
      Assignment a(5, false);
      a[1] = bits & 1U;
      a[4] = (bits >> 1) & 1U;
      a[2] = (bits >> 2) & 1U;
      const bool xor_sat = (a[1] ^ a[4] ^ a[2]) == parity;
      std::size_t falsified = 0;
      for (const auto& c : cnf) falsified += clause_satisfied(c, a) ? 0 : 1;
      CHECK(xor_sat == (falsified == 0));
      // Each violating assignment is excluded by exactly one clause.
      if (!xor_sat) CHECK(falsified == 1);
      satisfying += xor_sat;
    }
    CHECK(satisfying == 4);
  }
}

TEST_CASE("expand_instance gives four contiguous clauses per XOR clause") {
  const auto xi = generate_balanced_xorsat(1000, 1.25, 7);
  const auto f = expand_instance(xi);
  CHECK(f.n_clauses() == 5000);
  CHECK(f.density() == 5.0);
  for (std::size_t c = 0; c < xi.clauses.size(); ++c) {
    const auto exp = xor_to_cnf(xi.clauses[c]);
    for (std::size_t k = 0; k < 4; ++k) CHECK(f.clause(static_cast<ClauseId>(4 * c + k)) == exp[k]);
  }
  const auto counts = occurrence_counts(xi);
  for (Var v = 1; v <= f.n_vars(); ++v) {
    const auto k = f.occurrences(v).size();
    CHECK((k == 12 || k == 16));
    CHECK(k == 4 * counts[v - 1]);
  }

  const auto small = expand_instance(generate_balanced_xorsat(8, 1.25, 1));
  CHECK(small.n_clauses() == 40);
  for (const auto& c : small.clauses()) CHECK(c.literals.size() == 3);
}

TEST_CASE("each violated XOR clause leaves exactly one CNF clause unsatisfied") {
  const auto xi = generate_balanced_xorsat(40, 1.25, 9);
  const auto f = expand_instance(xi);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = bits_of(seed * 0x9e3779b97f4a7c15ULL, 40);
    CHECK(count_unsat(f, a) == count_unsat(xi, a));
  }
}

TEST_CASE("planted instances are satisfiable") {
  const auto xi = generate_balanced_xorsat(20, 1.25, 4);
  const auto planted_bits = bits_of(0xabcde, 20);
  const auto planted = plant_solution(xi, planted_bits);
  CHECK(count_unsat(planted, planted_bits) == 0);
  const auto f = expand_instance(planted);
  CHECK(count_unsat(f, planted_bits) == 0);
  CHECK(brute_force_max_sat(f).min_unsat == 0);
}
