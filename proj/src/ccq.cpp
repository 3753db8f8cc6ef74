#include "quadchase/ccq.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "quadchase/error.hpp"

namespace quadchase {

namespace {

template <typename Answer>
void annotate(Answer& a, const ChaseResult& d) {
  a.complete = d.status == ChaseStatus::kComplete;
  a.inconsistent = d.status == ChaseStatus::kInconsistent;
  if (d.status == ChaseStatus::kBudgetExhausted) {
    a.warnings.push_back("the dChase is partial (budget exhausted): positive answers are sound, absent ones are "
                         "inconclusive");
  }
  if (a.inconsistent) {
    a.warnings.push_back("the quad-system is inconsistent: every query is entailed");
  }
}

struct Compiled {
  VariableTable vars;
  std::vector<AtomPattern> atoms;
};

Compiled compile(const QueryDocument& q) {
  Compiled c;
  for (const std::string& v : q.free_vars) c.vars.index_of(v);
  for (const QuadPattern& a : q.atoms) c.atoms.push_back(c.vars.compile(a));
  return c;
}

}  // namespace

BooleanAnswer entails_boolean(const ChaseResult& d, const QueryDocument& q) {
  if (!q.is_boolean()) throw Error(ErrorCode::kInvalidArgument, "entails_boolean expects a query without free variables");
  if (q.atoms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty query body");
  BooleanAnswer a;
  annotate(a, d);
  if (a.inconsistent) {
    a.entailed = true;
    return a;
  }
  Compiled c = compile(q);
  a.entailed = has_match(d.quads, c.atoms, c.vars.size());
  return a;
}

AnswerSet answers(const ChaseResult& d, const QueryDocument& q) {
  if (q.atoms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty query body");
  AnswerSet out;
  out.free_vars = q.free_vars;
  annotate(out, d);
  if (out.inconsistent) return out;

  Compiled c = compile(q);
  const std::size_t k = q.free_vars.size();
  std::set<std::vector<Constant>> tuples;
  for_each_match(d.quads, c.atoms, c.vars.size(), [&](std::span<const Constant> binding) {
    std::vector<Constant> tuple(binding.begin(), binding.begin() + static_cast<std::ptrdiff_t>(k));
    if (std::none_of(tuple.begin(), tuple.end(), [](Constant x) { return x.is_skolem(); })) {
      tuples.insert(std::move(tuple));
    }
    return true;
  });
  out.tuples.assign(tuples.begin(), tuples.end());
  return out;
}

QueryDocument query_from_quadgraph(const QuadGraph& g) {
  QueryDocument q;
  auto term = [](Constant c) -> Term {
    if (c.is_blank()) return Term::var("_:" + c.value());
    return c;
  };
  for (const Quad& quad : g.sorted()) {
    q.atoms.emplace_back(quad.context, term(quad.subject), term(quad.predicate), term(quad.object));
  }
  return q;
}

BooleanAnswer entails_quad(const ChaseResult& d, const Quad& quad) {
  QuadGraph g;
  g.insert(quad);
  return entails_quadgraph(d, g);
}

BooleanAnswer entails_quadgraph(const ChaseResult& d, const QuadGraph& g) {
  if (g.empty()) {
    BooleanAnswer a;
    annotate(a, d);
    a.entailed = true;
    return a;
  }
  return entails_boolean(d, query_from_quadgraph(g));
}

ChaseResult load_chase(std::string_view nquads_text) {
  ChaseResult d;
  constexpr std::string_view kHeader = "# quadchase dchase ";
  std::string_view first = nquads_text.substr(0, nquads_text.find('\n'));
  if (first.substr(0, kHeader.size()) == kHeader) {
    std::istringstream fields{std::string(first.substr(kHeader.size()))};
    std::string field;
    while (fields >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) continue;
      std::string key = field.substr(0, eq);
      std::string value = field.substr(eq + 1);
      try {
        if (key == "status") d.status = chase_status_from_string(value);
        if (key == "iterations") d.iterations = std::stoul(value);
        if (key == "generating") d.generating_iterations = std::stoul(value);
      } catch (const std::logic_error&) {
        throw ParseError(1, 1, "malformed dChase header field '" + field + "'");
      }
    }
  }
  d.quads = parse_nquads(nquads_text);
  return d;
}

}  // namespace quadchase
