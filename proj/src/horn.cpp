#include <algorithm>

#include "quadchase/error.hpp"
#include "quadchase/reductions.hpp"
#include "reductions_common.hpp"

namespace quadchase {

using detail::iri;
using detail::pat;
using detail::rdf_type;
using detail::var;

HornClause pad_to_pure(const std::vector<std::string>& body, const std::string& head) {
  if (body.size() > 2) throw Error(ErrorCode::kInvalidArgument, "a 3Horn clause has at most two body literals");
  HornClause c;
  c.body[0] = body.size() > 0 ? body[0] : "t";
  c.body[1] = body.size() > 1 ? body[1] : "t";
  c.head = head;
  return c;
}

HornFormulaSet parse_horn(std::string_view text) {
  HornFormulaSet phi;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '&', ' ');
    std::vector<std::string> tok = detail::tokens(line);
    if (tok.empty()) continue;
    auto arrow = std::find(tok.begin(), tok.end(), "->");
    if (arrow == tok.end() || arrow + 2 != tok.end()) {
      throw ParseError(line_no, 1, "expected '<p> <q> -> <r>'");
    }
    std::vector<std::string> body(tok.begin(), arrow);
    for (const std::string& s : tok) {
      if (s != "->" && !detail::is_symbol_name(s)) throw ParseError(line_no, 1, "invalid literal '" + s + "'");
    }
    if (body.size() > 2) throw ParseError(line_no, 1, "more than two body literals");
    phi.clauses.push_back(pad_to_pure(body, tok.back()));
  }
  return phi;
}

std::string serialize_horn(const HornFormulaSet& phi) {
  std::string out;
  for (const HornClause& c : phi.clauses) out += c.body[0] + " " + c.body[1] + " -> " + c.head + "\n";
  return out;
}

Encoding encode_horn(const HornFormulaSet& phi) {
  const Constant ct = iri("c_t");
  const Constant cf = iri("c_f");
  const Constant klass = iri("T");
  Encoding e;
  for (const HornClause& c : phi.clauses) {
    for (const std::string& s : {c.body[0], c.body[1], c.head}) {
      if (!detail::is_symbol_name(s)) throw Error(ErrorCode::kInvalidArgument, "clause is not pure: literal '" + s + "'");
    }
    e.system.quads.insert(Quad{cf, iri(c.body[0]), iri(c.body[1]), iri(c.head)});
  }
  e.system.quads.insert(Quad{ct, iri("t"), rdf_type().constant(), klass});
  std::vector<QuadPattern> body{pat(ct, var("x1"), rdf_type(), klass), pat(ct, var("x2"), rdf_type(), klass),
                                pat(cf, var("x1"), var("x2"), var("x3"))};
  std::vector<QuadPattern> head{pat(ct, var("x3"), rdf_type(), klass)};
  e.system.rules.emplace_back("horn", std::move(body), std::move(head));
  e.query.atoms.push_back(pat(ct, iri("f"), rdf_type(), klass));
  return e;
}

HornOracleResult horn_sat_oracle(const HornFormulaSet& phi) {
  std::set<std::string> derived{"t"};
  for (bool changed = true; changed;) {
    changed = false;
    for (const HornClause& c : phi.clauses) {
      if (derived.count(c.body[0]) && derived.count(c.body[1]) && derived.insert(c.head).second) changed = true;
    }
  }
  HornOracleResult r;
  r.sat = !derived.count("f");
  derived.erase("t");
  derived.erase("f");
  if (r.sat) r.model = std::move(derived);
  return r;
}

HornFormulaSet random_horn(std::mt19937_64& rng, std::size_t max_vars, std::size_t max_clauses) {
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::size_t nvars = pick(1, std::max<std::size_t>(1, max_vars));
  std::size_t nclauses = pick(0, max_clauses);
  auto body_literal = [&] { return pick(0, nvars) == 0 ? std::string("t") : "P" + std::to_string(pick(1, nvars)); };
  std::bernoulli_distribution falsum(0.15);
  HornFormulaSet phi;
  for (std::size_t i = 0; i < nclauses; ++i) {
    HornClause c;
    c.body[0] = body_literal();
    c.body[1] = body_literal();
    c.head = falsum(rng) ? std::string("f") : "P" + std::to_string(pick(1, nvars));
    phi.clauses.push_back(std::move(c));
  }
  return phi;
}

}  // namespace quadchase
