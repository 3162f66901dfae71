#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "memsat/cnf.hpp"
#include "memsat/xorsat.hpp"

namespace memsat::dimacs {

/// Parses DIMACS CNF. Clauses may span lines and must end with 0; "c" lines
/// are comments (appended to *comments when given, without the leading "c ").
/// A line starting with '%' ends the body (SATLIB convention).
///
/// Throws ParseError (with 1-based line) on malformed tokens, a missing or
/// repeated header, repeated variables in a clause or an unterminated final
/// clause; HeaderMismatch when a variable exceeds the declared N or the
/// clause count differs from the declared M.
CnfFormula parse(std::string_view text, std::vector<std::string>* comments = nullptr);

/// Header "p cnf N M" followed by one clause per line.
std::string emit(const CnfFormula& f, const std::vector<std::string>& comments = {});

/// Extended dialect for XOR systems:
///   p xcnf N M
///   x a b c p      (p in {0,1})
XorInstance parse_xcnf(std::string_view text);
std::string emit_xcnf(const XorInstance& xi);

/// Instance sidecar: {"n", "rho_xor", "seed", "generator_version", "m_xor",
/// "m_cnf", "rho_cnf"}.
std::string emit_metadata(const XorInstance& xi);

/// Assignment files. Either a line of 0/1 bits ("1 0 0", may span lines) or
/// Max-SAT competition "v" lines with signed literals ("v 1 -2 -3 0").
Assignment parse_assignment(std::string_view text);
std::string emit_v_line(const Assignment& a);

CnfFormula read_file(const std::string& path);
std::string read_text(const std::string& path);
void write_text(const std::string& path, std::string_view text);

}  // namespace memsat::dimacs
