#include <algorithm>
#include <array>

#include "quadchase/error.hpp"
#include "quadchase/reductions.hpp"
#include "reductions_common.hpp"

namespace quadchase {

using detail::pat;
using detail::rdf_type;
using detail::var;

std::set<std::string> Cfg::variables() const {
  std::set<std::string> out;
  for (const Production& p : productions) out.insert(p.lhs);
  return out;
}

std::set<std::string> Cfg::terminals() const {
  std::set<std::string> vars = variables();
  std::set<std::string> out;
  for (const Production& p : productions) {
    for (const std::string& w : p.rhs) {
      if (!vars.count(w)) out.insert(w);
    }
  }
  return out;
}

Cfg parse_cfg(std::string_view text) {
  Cfg g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::vector<std::string> tok = detail::tokens(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (tok.empty()) continue;
    auto fail = [&](const std::string& message) -> void { throw ParseError(line_no, 1, message); };
    if (tok[0] == "start") {
      if (tok.size() != 2 || !detail::is_symbol_name(tok[1])) fail("expected 'start <variable>'");
      g.start = tok[1];
      continue;
    }
    if (tok.size() < 2 || tok[1] != "->") fail("expected '<variable> -> <symbols> | ...'");
    if (!detail::is_symbol_name(tok[0])) fail("invalid variable name '" + tok[0] + "'");
    Production current{tok[0], {}};
    for (std::size_t i = 2; i <= tok.size(); ++i) {
      if (i == tok.size() || tok[i] == "|") {
        g.productions.push_back(current);
        current.rhs.clear();
        continue;
      }
      if (tok[i] == "eps") continue;
      if (!detail::is_symbol_name(tok[i])) fail("invalid symbol '" + tok[i] + "'");
      current.rhs.push_back(tok[i]);
    }
  }
  if (g.productions.empty()) throw ParseError(0, 0, "grammar has no productions");
  if (g.start.empty()) g.start = g.productions.front().lhs;
  return g;
}

std::string serialize_cfg(const Cfg& g) {
  std::string out = "start " + g.start + "\n";
  for (const Production& p : g.productions) {
    out += p.lhs + " ->";
    if (p.rhs.empty()) out += " eps";
    for (const std::string& w : p.rhs) out += " " + w;
    out += "\n";
  }
  return out;
}

Encoding encode_cfg_pair(const Cfg& g1, const Cfg& g2) {
  std::set<std::string> v1 = g1.variables();
  std::set<std::string> v2 = g2.variables();
  std::set<std::string> terminals = g1.terminals();
  for (const std::string& t : g2.terminals()) terminals.insert(t);
  for (const std::string& v : v1) {
    if (v2.count(v)) throw Error(ErrorCode::kInvalidArgument, "variable " + v + " occurs in both grammars");
    if (terminals.count(v)) throw Error(ErrorCode::kInvalidArgument, "symbol " + v + " is a variable and a terminal");
  }
  for (const std::string& v : v2) {
    if (terminals.count(v)) throw Error(ErrorCode::kInvalidArgument, "symbol " + v + " is a variable and a terminal");
  }

  const Constant c = Constant::iri("c");
  const Constant klass = Constant::iri("C");
  Encoding e;
  e.system.quads.insert(Quad{c, Constant::iri("a"), rdf_type().constant(), klass});

  auto encode = [&](const Cfg& g, const std::string& tag) {
    std::size_t k = 0;
    for (const Production& p : g.productions) {
      ++k;
      if (p.rhs.empty()) continue;
      std::vector<QuadPattern> body;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        body.push_back(pat(c, var("x" + std::to_string(i + 1)), Constant::iri(p.rhs[i]),
                           var("x" + std::to_string(i + 2))));
      }
      std::vector<QuadPattern> head{pat(c, var("x1"), Constant::iri(p.lhs), var("x" + std::to_string(p.rhs.size() + 1)))};
      e.system.rules.emplace_back(tag + "_p" + std::to_string(k), std::move(body), std::move(head));
    }
  };
  encode(g1, "g1");
  encode(g2, "g2");
  for (const std::string& t : terminals) {
    std::vector<QuadPattern> body{pat(c, var("x"), rdf_type(), klass)};
    std::vector<QuadPattern> head{pat(c, var("x"), Constant::iri(t), var("y")), pat(c, var("y"), rdf_type(), klass)};
    e.system.rules.emplace_back("t_" + t, std::move(body), std::move(head));
  }
  e.query.atoms.push_back(pat(c, Constant::iri("a"), Constant::iri(g1.start), var("y")));
  e.query.atoms.push_back(pat(c, Constant::iri("a"), Constant::iri(g2.start), var("y")));
  return e;
}

namespace {

/// Chomsky normal form restricted to non-empty strings.
struct Cnf {
  std::string start;
  std::map<std::string, std::set<std::string>> by_terminal;  // t -> {A | A -> t}
  std::vector<std::array<std::string, 3>> binary;            // A -> B C
};

Cnf to_cnf(const Cfg& g) {
  const std::set<std::string> vars = g.variables();
  auto is_var = [&](const std::string& s) { return vars.count(s) != 0 || s.rfind('#', 0) == 0; };
  std::vector<Production> prods;

  // TERM: terminals in long right-hand sides get their own variable.
  std::set<std::string> term_vars;
  for (const Production& p : g.productions) {
    Production q = p;
    if (q.rhs.size() >= 2) {
      for (std::string& w : q.rhs) {
        if (is_var(w)) continue;
        std::string nt = "#T_" + w;
        if (term_vars.insert(nt).second) prods.push_back({nt, {w}});
        w = nt;
      }
    }
    prods.push_back(std::move(q));
  }

  // BIN: split right-hand sides longer than two.
  std::vector<Production> binary;
  std::size_t fresh = 0;
  for (const Production& p : prods) {
    if (p.rhs.size() <= 2) {
      binary.push_back(p);
      continue;
    }
    std::string lhs = p.lhs;
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      std::string next = "#B" + std::to_string(fresh++);
      binary.push_back({lhs, {p.rhs[i], next}});
      lhs = next;
    }
    binary.push_back({lhs, {p.rhs[p.rhs.size() - 2], p.rhs.back()}});
  }

  // DEL: drop epsilon productions, adding the variants that skip nullables.
  std::set<std::string> nullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& p : binary) {
      if (nullable.count(p.lhs)) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const std::string& w) { return nullable.count(w) != 0; })) {
        changed = nullable.insert(p.lhs).second || changed;
      }
    }
  }
  std::set<std::pair<std::string, std::vector<std::string>>> nonempty;
  for (const Production& p : binary) {
    if (p.rhs.empty()) continue;
    nonempty.insert({p.lhs, p.rhs});
    if (p.rhs.size() == 2) {
      if (nullable.count(p.rhs[0])) nonempty.insert({p.lhs, {p.rhs[1]}});
      if (nullable.count(p.rhs[1])) nonempty.insert({p.lhs, {p.rhs[0]}});
    }
  }

  // UNIT: A ->* B through unit productions, then inherit B's other rules.
  std::map<std::string, std::set<std::string>> unit;
  for (const auto& [lhs, rhs] : nonempty) {
    unit[lhs].insert(lhs);
    for (const std::string& w : rhs) {
      if (is_var(w)) unit[w].insert(w);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rhs] : nonempty) {
      if (rhs.size() != 1 || !is_var(rhs[0])) continue;
      for (auto& [a, reach] : unit) {
        if (reach.count(lhs)) {
          for (const std::string& b : std::set<std::string>(unit.at(rhs[0]))) {
            changed = reach.insert(b).second || changed;
          }
          changed = reach.insert(rhs[0]).second || changed;
        }
      }
    }
  }

  Cnf cnf;
  cnf.start = g.start;
  for (const auto& [a, reach] : unit) {
    for (const auto& [lhs, rhs] : nonempty) {
      if (!reach.count(lhs)) continue;
      if (rhs.size() == 1 && !is_var(rhs[0])) cnf.by_terminal[rhs[0]].insert(a);
      if (rhs.size() == 2) cnf.binary.push_back({a, rhs[0], rhs[1]});
    }
  }
  return cnf;
}

bool cyk(const Cnf& g, const std::vector<std::string>& word) {
  const std::size_t n = word.size();
  if (n == 0) return false;
  // table[i][len-1]: variables deriving word[i, i+len).
  std::vector<std::vector<std::set<std::string>>> table(n, std::vector<std::set<std::string>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    auto it = g.by_terminal.find(word[i]);
    if (it != g.by_terminal.end()) table[i][0] = it->second;
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      for (std::size_t split = 1; split < len; ++split) {
        const auto& left = table[i][split - 1];
        const auto& right = table[i + split][len - split - 1];
        if (left.empty() || right.empty()) continue;
        for (const auto& [a, b, c] : g.binary) {
          if (left.count(b) && right.count(c)) table[i][len - 1].insert(a);
        }
      }
    }
  }
  return table[0][n - 1].count(g.start) != 0;
}

}  // namespace

bool cfg_accepts(const Cfg& g, const std::vector<std::string>& word) { return cyk(to_cnf(g), word); }

CfgOracleResult cfg_intersection_oracle(const Cfg& g1, const Cfg& g2, std::size_t max_len) {
  Cnf c1 = to_cnf(g1);
  Cnf c2 = to_cnf(g2);
  std::set<std::string> joint = g1.terminals();
  for (const std::string& t : g2.terminals()) joint.insert(t);
  std::vector<std::string> alphabet(joint.begin(), joint.end());
  CfgOracleResult result;
  if (alphabet.empty()) return result;

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<std::string> word;
      for (std::size_t d : digits) word.push_back(alphabet[d]);
      if (cyk(c1, word) && cyk(c2, word)) {
        result.nonempty = true;
        result.witness = std::move(word);
        return result;
      }
      std::size_t pos = len;
      while (pos > 0 && ++digits[pos - 1] == alphabet.size()) digits[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return result;
}

Cfg random_cfg(std::mt19937_64& rng, const std::string& prefix, const std::vector<std::string>& terminals,
               const RandomCfgOptions& options) {
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::size_t nvars = pick(1, options.max_variables);
  Cfg g;
  g.start = prefix + "0";
  for (std::size_t v = 0; v < nvars; ++v) {
    std::size_t nprods = pick(1, options.max_productions_per_variable);
    for (std::size_t k = 0; k < nprods; ++k) {
      Production p{prefix + std::to_string(v), {}};
      std::size_t len = pick(1, options.max_rhs);
      for (std::size_t i = 0; i < len; ++i) {
        bool terminal = terminals.size() > 0 && pick(0, 9) < 6;
        p.rhs.push_back(terminal ? terminals[pick(0, terminals.size() - 1)] : prefix + std::to_string(pick(0, nvars - 1)));
      }
      g.productions.push_back(std::move(p));
    }
  }
  return g;
}

}  // namespace quadchase
