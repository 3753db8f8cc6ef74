#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace oracle {

namespace {

const std::string kType = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
const std::string kSco = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";
const std::string kSpo = "<http://www.w3.org/2000/01/rdf-schema#subPropertyOf>";
const std::string kDom = "<http://www.w3.org/2000/01/rdf-schema#domain>";
const std::string kRng = "<http://www.w3.org/2000/01/rdf-schema#range>";
const std::string kResource = "<http://www.w3.org/2000/01/rdf-schema#Resource>";

bool is_var(const std::string& s) { return !s.empty() && s[0] == '?'; }

std::string term_of(const quadchase::Term& t) {
  return t.is_variable() ? "?" + t.variable().name : t.constant().canonical();
}

bool unify(const Atom& a, const Fact& f, Binding& b, std::vector<std::string>& bound) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!is_var(a[i])) {
      if (a[i] != f[i]) return false;
      continue;
    }
    auto it = b.find(a[i]);
    if (it == b.end()) {
      b.emplace(a[i], f[i]);
      bound.push_back(a[i]);
    } else if (it->second != f[i]) {
      return false;
    }
  }
  return true;
}

bool search(const std::vector<Atom>& atoms, std::size_t k, const std::set<Fact>& facts, Binding& b,
            const std::function<bool(const Binding&)>& fn) {
  if (k == atoms.size()) return fn(b);
  for (const Fact& f : facts) {
    std::vector<std::string> bound;
    bool ok = unify(atoms[k], f, b, bound);
    if (ok && !search(atoms, k + 1, facts, b, fn)) return false;
    for (const std::string& v : bound) b.erase(v);
  }
  return true;
}

}  // namespace

Fact fact_of(const quadchase::Quad& q) {
  return {q.context.canonical(), q.subject.canonical(), q.predicate.canonical(), q.object.canonical()};
}

std::set<Fact> facts_of(const quadchase::QuadGraph& g) {
  std::set<Fact> out;
  for (const quadchase::Quad& q : g.quads()) out.insert(fact_of(q));
  return out;
}

Atom atom_of(const quadchase::QuadPattern& p) {
  return {p.context.canonical(), term_of(p.terms[0]), term_of(p.terms[1]), term_of(p.terms[2])};
}

System system_of(const quadchase::QuadSystem& qs) {
  System s;
  s.facts = facts_of(qs.quads);
  for (const quadchase::BridgeRule& r : qs.rules) {
    Rule rule{r.id(), {}, {}};
    for (const auto& p : r.body()) rule.body.push_back(atom_of(p));
    for (const auto& p : r.head()) rule.head.push_back(atom_of(p));
    s.rules.push_back(std::move(rule));
  }
  return s;
}

std::set<Triple3> rdfs_closure(std::set<Triple3> g, bool resource_rule) {
  for (bool changed = true; changed;) {
    changed = false;
    std::set<Triple3> add;
    for (const Triple3& t : g) {
      if (resource_rule) add.insert({t[2], kType, kResource});
      for (const Triple3& u : g) {
        if (t[1] == kSco && u[1] == kSco && t[2] == u[0]) add.insert({t[0], kSco, u[2]});
        if (t[1] == kSco && u[1] == kType && u[2] == t[0]) add.insert({u[0], kType, t[2]});
        if (t[1] == kSpo && u[1] == kSpo && t[2] == u[0]) add.insert({t[0], kSpo, u[2]});
        if (t[1] == kSpo && u[1] == t[0]) add.insert({u[0], t[2], u[2]});
        if (t[1] == kDom && u[1] == t[0]) add.insert({u[0], kType, t[2]});
        if (t[1] == kRng && u[1] == t[0]) add.insert({u[2], kType, t[2]});
      }
    }
    for (const Triple3& t : add) changed = g.insert(t).second || changed;
  }
  return g;
}

std::set<Fact> lclosure(const std::set<Fact>& facts, Semantics sem) {
  if (sem == Semantics::kSimple) return facts;
  std::map<std::string, std::set<Triple3>> by_context;
  for (const Fact& f : facts) by_context[f[0]].insert({f[1], f[2], f[3]});
  std::set<Fact> out;
  for (auto& [c, g] : by_context) {
    for (const Triple3& t : rdfs_closure(g, sem == Semantics::kRdfsResource)) out.insert({c, t[0], t[1], t[2]});
  }
  return out;
}

void for_each_match(const std::vector<Atom>& atoms, const std::set<Fact>& facts,
                    const std::function<bool(const Binding&)>& fn) {
  Binding b;
  search(atoms, 0, facts, b, fn);
}

bool entails(const std::set<Fact>& facts, const std::vector<Atom>& atoms) {
  bool found = false;
  for_each_match(atoms, facts, [&](const Binding&) {
    found = true;
    return false;
  });
  return found;
}

ChaseOutcome naive_chase(const System& sys, Semantics sem, std::size_t max_rounds) {
  ChaseOutcome out;
  out.model = lclosure(sys.facts, sem);
  for (; out.rounds < max_rounds; ++out.rounds) {
    std::set<Fact> add;
    for (const Rule& r : sys.rules) {
      if (r.head.empty()) continue;
      std::set<std::string> body_vars, head_vars;
      for (const Atom& a : r.body)
        for (const std::string& t : a)
          if (is_var(t)) body_vars.insert(t);
      std::vector<std::string> frontier;
      for (const Atom& a : r.head) {
        for (const std::string& t : a) {
          if (is_var(t) && body_vars.count(t) && std::find(frontier.begin(), frontier.end(), t) == frontier.end()) {
            frontier.push_back(t);
          }
        }
      }
      std::sort(frontier.begin(), frontier.end());
      for_each_match(r.body, out.model, [&](const Binding& b) {
        std::string args;
        for (const std::string& v : frontier) args += "|" + b.at(v);
        for (const Atom& a : r.head) {
          Fact f;
          for (std::size_t i = 0; i < 4; ++i) {
            if (!is_var(a[i])) {
              f[i] = a[i];
            } else if (auto it = b.find(a[i]); it != b.end()) {
              f[i] = it->second;
            } else {
              f[i] = "_:f(" + r.id + "," + a[i] + args + ")";
            }
          }
          add.insert(f);
        }
        return true;
      });
    }
    std::size_t before = out.model.size();
    out.model.insert(add.begin(), add.end());
    out.model = lclosure(out.model, sem);
    if (out.model.size() == before) {
      out.terminated = true;
      break;
    }
  }
  for (const Rule& r : sys.rules) {
    if (r.head.empty() && entails(out.model, r.body)) out.inconsistent = true;
  }
  return out;
}

GraphFacts graph_facts(const quadchase::QuadSystem& qs) {
  GraphFacts g;
  std::set<std::string> nodes;
  for (const quadchase::Quad& q : qs.quads.quads()) nodes.insert(q.context.value());
  for (const quadchase::BridgeRule& r : qs.rules) {
    std::set<std::string> body_vars;
    for (const auto& p : r.body()) {
      nodes.insert(p.context.value());
      for (const auto& t : p.terms)
        if (t.is_variable()) body_vars.insert(t.variable().name);
    }
    for (const auto& h : r.head()) {
      nodes.insert(h.context.value());
      for (const auto& t : h.terms)
        if (t.is_variable() && !body_vars.count(t.variable().name)) g.tgcs.insert(h.context.value());
      for (const auto& b : r.body()) g.edges.insert({b.context.value(), h.context.value()});
    }
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  return g;
}

std::map<std::string, std::set<std::string>> reachability(const GraphFacts& g) {
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& n : g.nodes) reach[n];
  for (const auto& [u, v] : g.edges) reach[u].insert(v);
  // Floyd-Warshall style closure.
  for (const auto& k : g.nodes)
    for (const auto& i : g.nodes)
      if (reach[i].count(k))
        for (const auto& j : std::set<std::string>(reach[k])) reach[i].insert(j);
  return reach;
}

bool context_acyclic(const GraphFacts& g) {
  auto reach = reachability(g);
  for (const auto& t : g.tgcs)
    if (reach[t].count(t)) return false;
  return true;
}

std::map<std::string, std::size_t> levels(const GraphFacts& g) {
  auto reach = reachability(g);
  std::map<std::string, std::size_t> level;
  // TGC level: 1 + the highest level of a TGC with a path into it. Resolve
  // by repeated relaxation, which settles since the TGC order is acyclic.
  std::function<std::size_t(const std::string&)> tgc_level = [&](const std::string& t) -> std::size_t {
    std::size_t best = 0;
    for (const auto& u : g.tgcs)
      if (u != t && reach[u].count(t)) best = std::max(best, tgc_level(u));
    return best + 1;
  };
  for (const auto& n : g.nodes) {
    if (g.tgcs.count(n)) {
      level[n] = tgc_level(n);
      continue;
    }
    std::size_t best = 0;
    for (const auto& u : g.tgcs)
      if (reach[u].count(n)) best = std::max(best, tgc_level(u));
    level[n] = best;
  }
  return level;
}

bool horn_unsat(const quadchase::HornFormulaSet& phi) {
  std::set<std::string> truth{"t"};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : phi.clauses) {
      if (truth.count(c.body[0]) && truth.count(c.body[1]) && truth.insert(c.head).second) changed = true;
    }
  }
  return truth.count("f") > 0;
}

std::set<std::vector<std::string>> cfg_language(const quadchase::Cfg& g, std::size_t max_len) {
  std::set<std::string> vars = g.variables();
  std::set<std::vector<std::string>> seen, words;
  std::deque<std::vector<std::string>> todo{{g.start}};
  while (!todo.empty()) {
    std::vector<std::string> form = todo.front();
    todo.pop_front();
    if (form.size() > max_len) continue;
    auto first_var = std::find_if(form.begin(), form.end(), [&](const std::string& s) { return vars.count(s) > 0; });
    if (first_var == form.end()) {
      if (!form.empty()) words.insert(form);
      continue;
    }
    for (const auto& p : g.productions) {
      if (p.lhs != *first_var) continue;
      std::vector<std::string> next(form.begin(), first_var);
      next.insert(next.end(), p.rhs.begin(), p.rhs.end());
      next.insert(next.end(), first_var + 1, form.end());
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return words;
}

bool dtm_accepts(const quadchase::Dtm& m, const std::vector<std::string>& w, std::size_t cells) {
  if (w.size() > cells) return false;
  std::vector<std::string> tape(cells, m.blank);
  std::copy(w.begin(), w.end(), tape.begin());
  std::string state = m.start;
  long pos = 0;
  for (std::size_t step = 0; step < cells; ++step) {
    if (state == m.accept) return true;
    if (step == cells - 1) break;
    auto it = m.delta.find({state, tape[pos]});
    if (it == m.delta.end()) return false;
    tape[pos] = it->second.write;
    state = it->second.next;
    pos += it->second.move == quadchase::Move::kLeft ? -1 : 1;
    if (pos < 0 || pos >= static_cast<long>(cells)) return false;
  }
  return false;
}

}  // namespace oracle
