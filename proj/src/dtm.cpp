#include <algorithm>

#include "quadchase/error.hpp"
#include "quadchase/reductions.hpp"
#include "reductions_common.hpp"

namespace quadchase {

using detail::iri;
using detail::pat;
using detail::rdf_type;
using detail::var;

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const std::string& s : v) out += " " + s;
  return out;
}

Constant sym(const std::string& s) { return iri("sym_" + s); }
Constant state(const std::string& q) { return iri("q_" + q); }
Constant indexed(const std::string& name, std::size_t i) { return iri(name + "_" + std::to_string(i)); }

}  // namespace

Dtm parse_dtm(std::string_view text) {
  Dtm m;
  std::size_t line_no = 0;
  std::vector<std::tuple<std::size_t, std::vector<std::string>>> transitions;
  for (const std::string& line : lines_of(text)) {
    ++line_no;
    std::vector<std::string> tok = detail::tokens(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& message) -> void { throw ParseError(line_no, 1, message); };
    for (const std::string& t : tok) {
      if (t != "->" && !detail::is_symbol_name(t)) fail("invalid name '" + t + "'");
    }
    const std::string& key = tok[0];
    std::vector<std::string> rest(tok.begin() + 1, tok.end());
    if (key == "states" || key == "alphabet") {
      if (rest.empty()) fail("'" + key + "' needs at least one name");
      (key == "states" ? m.states : m.alphabet) = rest;
    } else if (key == "blank" || key == "start" || key == "accept") {
      if (rest.size() != 1) fail("'" + key + "' takes exactly one name");
      (key == "blank" ? m.blank : key == "start" ? m.start : m.accept) = rest[0];
    } else if (tok.size() == 6 && tok[2] == "->") {
      transitions.emplace_back(line_no, tok);
    } else {
      fail("expected a declaration or '<q> <symbol> -> <q'> <symbol'> L|R'");
    }
  }
  if (m.states.empty()) throw ParseError(0, 0, "missing 'states'");
  if (m.alphabet.empty()) throw ParseError(0, 0, "missing 'alphabet'");
  if (m.blank.empty() || !contains(m.alphabet, m.blank)) throw ParseError(0, 0, "the blank must be in the alphabet");
  if (m.start.empty() || !contains(m.states, m.start)) throw ParseError(0, 0, "the start state must be declared");
  if (m.accept.empty() || !contains(m.states, m.accept)) throw ParseError(0, 0, "the accept state must be declared");

  for (const auto& [line, tok] : transitions) {
    auto fail = [line = line](const std::string& message) { throw ParseError(line, 1, message); };
    if (!contains(m.states, tok[0]) || !contains(m.states, tok[3])) fail("undeclared state");
    if (!contains(m.alphabet, tok[1]) || !contains(m.alphabet, tok[4])) fail("undeclared symbol");
    if (tok[5] != "L" && tok[5] != "R") fail("move must be L or R");
    if (tok[0] == m.accept) fail("the accept state must not have transitions");
    Transition t{tok[3], tok[4], tok[5] == "L" ? Move::kLeft : Move::kRight};
    if (!m.delta.emplace(std::pair{tok[0], tok[1]}, t).second) fail("duplicate transition");
  }
  return m;
}

std::string serialize_dtm(const Dtm& m) {
  std::string out = "states" + join(m.states) + "\n";
  out += "alphabet" + join(m.alphabet) + "\n";
  out += "blank " + m.blank + "\nstart " + m.start + "\naccept " + m.accept + "\n";
  for (const auto& [key, t] : m.delta) {
    out += key.first + " " + key.second + " -> " + t.next + " " + t.write + (t.move == Move::kLeft ? " L" : " R") + "\n";
  }
  return out;
}

std::vector<std::string> parse_dtm_input(const Dtm& m, std::string_view text) {
  std::vector<std::string> word;
  bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  std::string trimmed(text);
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r')) trimmed.pop_back();
  if (spaced) {
    word = detail::tokens(trimmed);
  } else if (contains(m.alphabet, trimmed)) {
    word.push_back(trimmed);
  } else {
    for (char ch : trimmed) word.emplace_back(1, ch);
  }
  for (const std::string& s : word) {
    if (!contains(m.alphabet, s)) throw Error(ErrorCode::kInvalidArgument, "input symbol '" + s + "' is not in the alphabet");
  }
  return word;
}

std::size_t dtm_cells(std::size_t n) {
  if (n >= 6) throw Error(ErrorCode::kLimitExceeded, "counter depth too large");
  return std::size_t{1} << (std::size_t{1} << n);
}

Encoding encode_dtm(const Dtm& m, const std::vector<std::string>& w, std::size_t n, std::size_t max_depth) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "counter depth must be at least 1");
  if (n > max_depth) {
    throw Error(ErrorCode::kLimitExceeded,
                "counter depth " + std::to_string(n) + " exceeds the cap of " + std::to_string(max_depth));
  }
  const std::size_t cells = dtm_cells(n);
  if (w.size() + 1 > cells) {
    throw Error(ErrorCode::kInvalidArgument, "input of length " + std::to_string(w.size()) + " does not fit " +
                                                 std::to_string(cells) + " cells with a trailing blank");
  }
  for (const std::string& s : w) {
    if (!contains(m.alphabet, s)) throw Error(ErrorCode::kInvalidArgument, "input symbol '" + s + "' is not in the alphabet");
    if (s == m.blank) throw Error(ErrorCode::kInvalidArgument, "the input must not contain the blank");
  }
  for (const auto& [key, t] : m.delta) {
    if (key.first == m.accept) throw Error(ErrorCode::kInvalidArgument, "the accept state must not have transitions");
  }

  Encoding e;
  auto& rules = e.system.rules;
  auto c = [](std::size_t i) { return iri("c" + std::to_string(i)); };
  auto g = [](std::size_t i) { return iri("g" + std::to_string(i)); };
  const Term type = rdf_type();
  auto x = [](std::size_t i) { return var("x" + std::to_string(i)); };

  // Two counters: cells (R) and configurations (RC).
  struct Counter {
    std::string kind, gen, min, max, succ, succa, succb;
    const char* k0;
    const char* k1;
  };
  const Counter counters[] = {
      {"R", "gen", "min", "max", "succ", "succa", "succb", "k0", "k1"},
      {"RC", "cgen", "cmin", "cmax", "csucc", "csucca", "csuccb", "j0", "j1"},
  };
  for (const Counter& k : counters) {
    const Constant c0 = c(0);
    e.system.quads.insert(Quad{c0, iri(k.k0), type.constant(), iri(k.kind)});
    e.system.quads.insert(Quad{c0, iri(k.k1), type.constant(), iri(k.kind)});
    e.system.quads.insert(Quad{c0, iri(k.k0), type.constant(), indexed(k.min, 0)});
    e.system.quads.insert(Quad{c0, iri(k.k1), type.constant(), indexed(k.max, 0)});
    e.system.quads.insert(Quad{c0, iri(k.k0), indexed(k.succ, 0), iri(k.k1)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Constant ci = c(i);
    const Constant cn = c(i + 1);
    const Constant gn = g(i + 1);
    const std::string si = std::to_string(i);
    for (const Counter& k : counters) {
      rules.emplace_back(k.gen + "_" + si,
                         std::vector{pat(ci, x(0), type, iri(k.kind)), pat(ci, x(1), type, iri(k.kind))},
                         std::vector{pat(gn, x(0), x(1), var("y")), pat(gn, var("y"), type, iri(k.kind))});
      rules.emplace_back(k.min + "_" + si,
                         std::vector{pat(cn, x(0), x(0), x(1)), pat(ci, x(0), type, indexed(k.min, i))},
                         std::vector{pat(cn, x(1), type, indexed(k.min, i + 1))});
      rules.emplace_back(k.max + "_" + si,
                         std::vector{pat(cn, x(0), x(0), x(1)), pat(ci, x(0), type, indexed(k.max, i))},
                         std::vector{pat(cn, x(1), type, indexed(k.max, i + 1))});
      rules.emplace_back(k.succa + "_" + si,
                         std::vector{pat(ci, x(1), indexed(k.succ, i), x(2)), pat(cn, x(0), x(1), x(3)),
                                     pat(cn, x(0), x(2), x(4))},
                         std::vector{pat(cn, x(3), indexed(k.succ, i + 1), x(4))});
      rules.emplace_back(k.succb + "_" + si,
                         std::vector{pat(ci, x(1), indexed(k.succ, i), x(2)), pat(cn, x(1), x(3), x(5)),
                                     pat(cn, x(2), x(4), x(6)), pat(ci, x(3), type, indexed(k.max, i)),
                                     pat(ci, x(4), type, indexed(k.min, i))},
                         std::vector{pat(cn, x(5), indexed(k.succ, i + 1), x(6))});
    }
    rules.emplace_back("copy_" + std::to_string(i + 1), std::vector{pat(gn, var("s"), var("p"), var("o"))},
                       std::vector{pat(cn, var("s"), var("p"), var("o"))});
  }

  const Constant cn = c(n);
  const Constant succ = iri("succ");
  const Constant succt = iri("succt");
  const Constant con_succ = iri("conSucc");
  const Constant con_init = iri("conInit");
  const Constant head = iri("head");
  const Constant st = iri("state");
  const Constant accept = iri("Accept");

  rules.emplace_back("succ", std::vector{pat(cn, x(0), indexed("succ", n), x(1))}, std::vector{pat(cn, x(0), succ, x(1))});
  rules.emplace_back("succt1", std::vector{pat(cn, x(0), succ, x(1))}, std::vector{pat(cn, x(0), succt, x(1))});
  rules.emplace_back("succt2", std::vector{pat(cn, x(0), succt, x(1)), pat(cn, x(1), succt, x(2))},
                     std::vector{pat(cn, x(0), succt, x(2))});
  rules.emplace_back("coninit", std::vector{pat(cn, x(0), type, indexed("cmin", n))},
                     std::vector{pat(cn, x(0), type, con_init)});
  rules.emplace_back("consucc", std::vector{pat(cn, x(0), indexed("csucc", n), x(1))},
                     std::vector{pat(cn, x(0), con_succ, x(1))});

  // Initial configuration q0 w blank, with the head on the first cell.
  const Term xj = var("xj");
  rules.emplace_back("init_head", std::vector{pat(cn, xj, type, con_init), pat(cn, x(0), type, indexed("min", n))},
                     std::vector{pat(cn, xj, head, x(0)), pat(cn, xj, st, state(m.start))});
  {
    std::vector<QuadPattern> body{pat(cn, x(0), type, indexed("min", n))};
    for (std::size_t i = 0; i < w.size(); ++i) body.push_back(pat(cn, x(i), succ, x(i + 1)));
    body.push_back(pat(cn, xj, type, con_init));
    std::vector<QuadPattern> hd;
    for (std::size_t i = 0; i < w.size(); ++i) hd.push_back(pat(cn, xj, sym(w[i]), x(i)));
    hd.push_back(pat(cn, xj, sym(m.blank), x(w.size())));
    rules.emplace_back("init_tape", std::move(body), std::move(hd));
  }
  rules.emplace_back("init_blank",
                     std::vector{pat(cn, xj, type, con_init), pat(cn, xj, sym(m.blank), x(0)), pat(cn, x(0), succt, x(1))},
                     std::vector{pat(cn, xj, sym(m.blank), x(1))});

  std::size_t k = 0;
  for (const auto& [key, t] : m.delta) {
    const auto& [q, s] = key;
    const Term xi = var("xi");
    std::vector<QuadPattern> body{pat(cn, x(0), head, xi), pat(cn, x(0), sym(s), xi), pat(cn, x(0), st, state(q))};
    body.push_back(t.move == Move::kLeft ? pat(cn, xj, succ, xi) : pat(cn, xi, succ, xj));
    body.push_back(pat(cn, x(0), con_succ, x(1)));
    rules.emplace_back("delta_" + std::to_string(++k), std::move(body),
                       std::vector{pat(cn, x(1), head, xj), pat(cn, x(1), sym(t.write), xi),
                                   pat(cn, x(1), st, state(t.next))});
  }

  for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
    const Constant sa = sym(m.alphabet[a]);
    const Term xi = var("xi");
    const std::string sid = std::to_string(a + 1);
    rules.emplace_back("inertl_" + sid,
                       std::vector{pat(cn, x(0), head, xi), pat(cn, x(0), con_succ, x(1)), pat(cn, xj, succt, xi),
                                   pat(cn, x(0), sa, xj)},
                       std::vector{pat(cn, x(1), sa, xj)});
    rules.emplace_back("inertr_" + sid,
                       std::vector{pat(cn, x(0), head, xi), pat(cn, x(0), con_succ, x(1)), pat(cn, xi, succt, xj),
                                   pat(cn, x(0), sa, xj)},
                       std::vector{pat(cn, x(1), sa, xj)});
  }

  rules.emplace_back("accept", std::vector{pat(cn, x(0), st, state(m.accept))}, std::vector{pat(cn, x(0), type, accept)});
  rules.emplace_back("backprop", std::vector{pat(cn, x(0), con_succ, x(1)), pat(cn, x(1), type, accept)},
                     std::vector{pat(cn, x(0), type, accept)});

  for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
    for (std::size_t b = a + 1; b < m.alphabet.size(); ++b) {
      rules.emplace_back("excl_" + m.alphabet[a] + "_" + m.alphabet[b],
                         std::vector{pat(cn, var("z1"), sym(m.alphabet[a]), var("z2")),
                                     pat(cn, var("z1"), sym(m.alphabet[b]), var("z2"))},
                         std::vector<QuadPattern>{});
    }
  }

  e.query.atoms.push_back(pat(cn, var("y"), type, con_init));
  e.query.atoms.push_back(pat(cn, var("y"), type, accept));
  return e;
}

std::string to_string(DtmVerdict v) {
  switch (v) {
    case DtmVerdict::kAccept: return "accept";
    case DtmVerdict::kReject: return "reject";
    case DtmVerdict::kTimeout: return "timeout";
  }
  return "?";
}

DtmVerdict dtm_oracle(const Dtm& m, const std::vector<std::string>& w, std::size_t max_steps,
                      std::optional<std::size_t> tape_cells) {
  std::vector<std::string> tape = w;
  if (tape_cells) {
    if (tape.size() > *tape_cells) return DtmVerdict::kReject;
    tape.resize(*tape_cells, m.blank);
  }
  if (tape.empty()) tape.push_back(m.blank);
  std::string q = m.start;
  std::size_t pos = 0;
  for (std::size_t step = 0;; ++step) {
    if (q == m.accept) return DtmVerdict::kAccept;
    if (step == max_steps) return DtmVerdict::kTimeout;
    auto it = m.delta.find({q, tape[pos]});
    if (it == m.delta.end()) return DtmVerdict::kReject;
    const Transition& t = it->second;
    tape[pos] = t.write;
    q = t.next;
    if (t.move == Move::kLeft) {
      if (pos == 0) return DtmVerdict::kReject;
      --pos;
    } else {
      ++pos;
      if (pos == tape.size()) {
        if (tape_cells) return DtmVerdict::kReject;
        tape.push_back(m.blank);
      }
    }
  }
}

}  // namespace quadchase
