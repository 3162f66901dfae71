#include "memsat/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "memsat/errors.hpp"

namespace memsat::dimacs {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

bool blank(std::string_view s) { return tokens(s).empty(); }

struct Header {
  std::size_t n = 0, m = 0;
};

Header parse_header(std::string_view line, std::size_t number, std::string_view kind) {
  const auto tok = tokens(line);
  if (tok.size() != 4 || tok[0] != "p" || tok[1] != kind) {
    throw ParseError(number, "malformed header, expected 'p " + std::string(kind) + " N M'");
  }
  const long long n = to_int(tok[2], number), m = to_int(tok[3], number);
  if (n < 0 || m < 0) throw ParseError(number, "negative header count");
  return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
}

}  // namespace

CnfFormula parse(std::string_view text, std::vector<std::string>* comments) {
  bool have_header = false;
  Header header;
  std::vector<CnfClause> clauses;
  CnfClause current;
  std::size_t last_line = 0;
  for (const auto& [number, line] : split_lines(text)) {
    last_line = number;
    if (blank(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    const char lead = line[first];
    if (lead == 'c') {
      if (comments) {
        auto body = line.substr(first + 1);
        if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        comments->emplace_back(body);
      }
      continue;
    }
    if (lead == '%') break;
    if (lead == 'p') {
      if (have_header) throw ParseError(number, "duplicate header");
      header = parse_header(line, number, "cnf");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(number, "clause before 'p cnf' header");
    for (auto tok : tokens(line)) {
      const long long x = to_int(tok, number);
      if (x == 0) {
        if (current.literals.empty()) throw ParseError(number, "empty clause");
        clauses.push_back(std::move(current));
        current = CnfClause{};
        continue;
      }
      const auto lit = Literal::from_dimacs(x);
      if (lit.var > header.n) {
        throw HeaderMismatch("line " + std::to_string(number) + ": variable " +
                             std::to_string(lit.var) + " exceeds declared " +
                             std::to_string(header.n));
      }
      for (const auto& l : current.literals) {
        if (l.var == lit.var) {
          throw ParseError(number, "variable " + std::to_string(lit.var) + " repeated in clause");
        }
      }
      current.literals.push_back(lit);
    }
  }
  if (!have_header) throw ParseError(last_line, "missing 'p cnf' header");
  if (!current.literals.empty()) throw ParseError(last_line, "final clause not terminated by 0");
  if (clauses.size() != header.m) {
    throw HeaderMismatch("header declares " + std::to_string(header.m) + " clauses, body has " +
                         std::to_string(clauses.size()));
  }
  return CnfFormula(header.n, std::move(clauses));
}

std::string emit(const CnfFormula& f, const std::vector<std::string>& comments) {
  std::string out;
  out.reserve(16 * f.n_clauses() + 32);
  for (const auto& c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(f.n_vars()) + " " + std::to_string(f.n_clauses()) + "\n";
  for (const auto& clause : f.clauses()) {
    for (const auto& l : clause.literals) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

XorInstance parse_xcnf(std::string_view text) {
  bool have_header = false;
  Header header;
  XorInstance xi;
  std::size_t last_line = 0;
  for (const auto& [number, line] : split_lines(text)) {
    last_line = number;
    if (blank(line)) continue;
    const auto tok = tokens(line);
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(number, "duplicate header");
      header = parse_header(line, number, "xcnf");
      have_header = true;
      xi.n_vars = header.n;
      continue;
    }
    if (!have_header) throw ParseError(number, "clause before 'p xcnf' header");
    if (tok[0] != "x" || tok.size() != 5) throw ParseError(number, "expected 'x a b c p'");
    XorClause c;
    for (int i = 0; i < 3; ++i) {
      const long long v = to_int(tok[1 + i], number);
      if (v <= 0) throw ParseError(number, "XOR variables must be positive");
      if (static_cast<std::size_t>(v) > header.n) {
        throw HeaderMismatch("line " + std::to_string(number) + ": variable " + std::to_string(v) +
                             " exceeds declared " + std::to_string(header.n));
      }
      c.vars[i] = static_cast<Var>(v);
    }
    if (c.vars[0] == c.vars[1] || c.vars[0] == c.vars[2] || c.vars[1] == c.vars[2]) {
      throw ParseError(number, "XOR clause repeats a variable");
    }
    const long long p = to_int(tok[4], number);
    if (p != 0 && p != 1) throw ParseError(number, "parity must be 0 or 1");
    c.parity = p == 1;
    xi.clauses.push_back(c);
  }
  if (!have_header) throw ParseError(last_line, "missing 'p xcnf' header");
  if (xi.clauses.size() != header.m) {
    throw HeaderMismatch("header declares " + std::to_string(header.m) + " XOR clauses, body has " +
                         std::to_string(xi.clauses.size()));
  }
  xi.rho_xor = header.n ? static_cast<double>(header.m) / static_cast<double>(header.n) : 0.0;
  return xi;
}

std::string emit_xcnf(const XorInstance& xi) {
  std::string out = "p xcnf " + std::to_string(xi.n_vars) + " " + std::to_string(xi.clauses.size()) + "\n";
  for (const auto& c : xi.clauses) {
    out += "x " + std::to_string(c.vars[0]) + " " + std::to_string(c.vars[1]) + " " +
           std::to_string(c.vars[2]) + (c.parity ? " 1\n" : " 0\n");
  }
  return out;
}

std::string emit_metadata(const XorInstance& xi) {
  const std::size_t m_cnf = 4 * xi.clauses.size();
  nlohmann::ordered_json j;
  j["n"] = xi.n_vars;
  j["rho_xor"] = xi.rho_xor;
  j["seed"] = xi.seed;
  j["generator_version"] = kGeneratorVersion;
  j["m_xor"] = xi.clauses.size();
  j["m_cnf"] = m_cnf;
  j["rho_cnf"] = xi.n_vars ? static_cast<double>(m_cnf) / static_cast<double>(xi.n_vars) : 0.0;
  return j.dump(2) + "\n";
}

Assignment parse_assignment(std::string_view text) {
  Assignment bits;
  std::vector<long long> lits;
  bool literal_format = false, bit_format = false;
  std::size_t last_line = 0;
  for (const auto& [number, line] : split_lines(text)) {
    last_line = number;
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c" || tok[0] == "s" || tok[0] == "o") continue;
    if (tok[0] == "v") {
      if (bit_format) throw ParseError(number, "mixed assignment formats");
      literal_format = true;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const long long x = to_int(tok[i], number);
        if (x != 0) lits.push_back(x);
      }
      continue;
    }
    if (literal_format) throw ParseError(number, "mixed assignment formats");
    bit_format = true;
    for (auto t : tok) {
      if (t == "0") bits.push_back(false);
      else if (t == "1") bits.push_back(true);
      else throw ParseError(number, "expected 0 or 1, got '" + std::string(t) + "'");
    }
  }
  if (literal_format) {
    bits.assign(lits.size(), false);
    std::vector<bool> seen(lits.size(), false);
    for (long long x : lits) {
      const auto var = static_cast<std::size_t>(x < 0 ? -x : x);
      if (var > lits.size() || seen[var - 1]) {
        throw ParseError(last_line, "'v' lines must list each variable 1..N exactly once");
      }
      seen[var - 1] = true;
      bits[var - 1] = x > 0;
    }
  }
  if (bits.empty()) throw ParseError(last_line, "empty assignment");
  return bits;
}

std::string emit_v_line(const Assignment& a) {
  std::string out = "v";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += ' ';
    if (!a[i]) out += '-';
    out += std::to_string(i + 1);
  }
  out += " 0\n";
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

CnfFormula read_file(const std::string& path) { return parse(read_text(path)); }

}  // namespace memsat::dimacs
