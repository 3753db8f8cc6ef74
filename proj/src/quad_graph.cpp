#include "quadchase/quad.hpp"

#include <algorithm>
#include <set>

#include "quadchase/error.hpp"

namespace quadchase {

std::string to_string(const Quad& q) {
  return q.context.canonical() + ":(" + q.subject.canonical() + ", " + q.predicate.canonical() +
         ", " + q.object.canonical() + ")";
}

bool QuadPattern::is_ground() const {
  return std::none_of(terms.begin(), terms.end(), [](const Term& t) { return t.is_variable(); });
}

std::vector<std::string> QuadPattern::variables() const {
  std::vector<std::string> out;
  for (const Term& t : terms) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.variable().name) == out.end()) {
      out.push_back(t.variable().name);
    }
  }
  return out;
}

std::optional<Quad> QuadPattern::to_quad() const {
  if (!is_ground()) return std::nullopt;
  return Quad{context, terms[0].constant(), terms[1].constant(), terms[2].constant()};
}

std::string to_string(const QuadPattern& p) {
  return p.context.canonical() + "(" + p.terms[0].to_string() + ", " + p.terms[1].to_string() +
         ", " + p.terms[2].to_string() + ")";
}

std::optional<Constant> Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Substitution Substitution::compose_after(const Substitution& inner) const {
  Substitution out = inner;
  for (const auto& [var, value] : map_) {
    if (!out.contains(var)) out.bind(var, value);
  }
  return out;
}

QuadPattern apply_substitution(const QuadPattern& pattern, const Substitution& mu) {
  QuadPattern out = pattern;
  for (Term& t : out.terms) {
    if (!t.is_variable()) continue;
    if (auto value = mu.lookup(t.variable().name)) t = *value;
  }
  return out;
}

QuadGraph::QuadGraph(std::initializer_list<Quad> quads) {
  for (const Quad& q : quads) insert(q);
}

bool QuadGraph::insert(const Quad& q) {
  if (!q.context || !q.context.is_iri()) {
    throw Error(ErrorCode::kInvalidContext,
                "context identifier must be an IRI, got " + q.context.canonical());
  }
  if (!q.subject || !q.predicate || !q.object) {
    throw Error(ErrorCode::kInvalidArgument, "quad with a null term");
  }
  if (!set_.insert(q).second) return false;
  auto index = static_cast<std::uint32_t>(quads_.size());
  quads_.push_back(q);
  by_context_[q.context].push_back(index);
  by_subject_[{q.context, q.subject}].push_back(index);
  by_predicate_[{q.context, q.predicate}].push_back(index);
  by_object_[{q.context, q.object}].push_back(index);
  return true;
}

std::size_t QuadGraph::merge(const QuadGraph& other) {
  std::size_t added = 0;
  for (const Quad& q : other.quads_) added += insert(q) ? 1 : 0;
  return added;
}

std::vector<Triple> QuadGraph::graph_of(Constant context) const {
  if (!context || !context.is_iri()) {
    throw Error(ErrorCode::kInvalidContext, "graph_of expects an IRI context, got " + context.canonical());
  }
  std::vector<Triple> out;
  for (std::uint32_t i : by_context(context)) out.push_back(quads_[i].triple());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Constant> QuadGraph::contexts() const {
  std::vector<Constant> out;
  out.reserve(by_context_.size());
  for (const auto& [c, _] : by_context_) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Constant> QuadGraph::constants() const {
  std::unordered_set<Constant> seen;
  for (const Quad& q : quads_) {
    seen.insert(q.context);
    seen.insert(q.subject);
    seen.insert(q.predicate);
    seen.insert(q.object);
  }
  std::vector<Constant> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quad> QuadGraph::sorted() const {
  std::vector<Quad> out = quads_;
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const std::uint32_t> QuadGraph::by_context(Constant c) const {
  auto it = by_context_.find(c);
  if (it == by_context_.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> QuadGraph::lookup(const PairIndex& index, Constant c, Constant t) {
  auto it = index.find({c, t});
  if (it == index.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> QuadGraph::by_subject(Constant c, Constant s) const {
  return lookup(by_subject_, c, s);
}
std::span<const std::uint32_t> QuadGraph::by_predicate(Constant c, Constant p) const {
  return lookup(by_predicate_, c, p);
}
std::span<const std::uint32_t> QuadGraph::by_object(Constant c, Constant o) const {
  return lookup(by_object_, c, o);
}

bool operator==(const QuadGraph& a, const QuadGraph& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.quads_.begin(), a.quads_.end(), [&](const Quad& q) { return b.contains(q); });
}

QuadGraph graph_union(const QuadGraph& a, const QuadGraph& b) {
  QuadGraph out = a;
  out.merge(b);
  return out;
}

std::vector<Triple> graph_of(const QuadGraph& q, Constant context) { return q.graph_of(context); }

std::size_t size_of(const QuadGraph& q) { return 4 * q.size(); }

}  // namespace quadchase
