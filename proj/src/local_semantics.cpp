#include "quadchase/local_semantics.hpp"

#include "quadchase/error.hpp"

namespace quadchase {

LocalSemantics LocalSemantics::from_name(std::string_view name, bool resource_rule) {
  if (name == "simple") return simple();
  if (name == "rdfs-core") return rdfs_core(resource_rule);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown local semantics '" + std::string(name) + "' (expected simple or rdfs-core)");
}

std::string LocalSemantics::name() const { return kind_ == Kind::kSimple ? "simple" : "rdfs-core"; }

std::vector<LocalRule> LocalSemantics::rules() const {
  if (kind_ == Kind::kSimple) return {};
  std::vector<LocalRule> out = {
      {"scm-sco", "(A, rdfs:subClassOf, B), (B, rdfs:subClassOf, C)", "(A, rdfs:subClassOf, C)"},
      {"cax-sco", "(A, rdfs:subClassOf, B), (x, rdf:type, A)", "(x, rdf:type, B)"},
      {"scm-spo", "(P, rdfs:subPropertyOf, Q), (Q, rdfs:subPropertyOf, R)", "(P, rdfs:subPropertyOf, R)"},
      {"prp-spo", "(P, rdfs:subPropertyOf, Q), (x, P, y)", "(x, Q, y)"},
      {"prp-dom", "(P, rdfs:domain, C), (x, P, y)", "(x, rdf:type, C)"},
      {"prp-rng", "(P, rdfs:range, C), (x, P, y)", "(y, rdf:type, C)"},
  };
  if (resource_rule_) out.push_back({"rdfs-res", "(s, p, o)", "(o, rdf:type, rdfs:Resource)"});
  return out;
}

namespace {

struct Vocabulary {
  Constant type = Constant::iri(vocab::kRdfType);
  Constant sc = Constant::iri(vocab::kRdfsSubClassOf);
  Constant sp = Constant::iri(vocab::kRdfsSubPropertyOf);
  Constant dom = Constant::iri(vocab::kRdfsDomain);
  Constant range = Constant::iri(vocab::kRdfsRange);
  Constant resource = Constant::iri(vocab::kRdfsResource);
};

const Vocabulary& vocabulary() {
  static const Vocabulary v;
  return v;
}

/// Rho-df consequences of one new quad against the current graph.
class RdfsStep {
 public:
  RdfsStep(const QuadGraph& g, bool resource_rule, std::vector<Quad>& out)
      : g_(g), v_(vocabulary()), resource_rule_(resource_rule), out_(out) {}

  void run(const Quad& t) {
    const Constant c = t.context;
    const Constant x = t.subject;
    const Constant p = t.predicate;
    const Constant y = t.object;

    if (p == v_.sc) {
      for_each(c, y, v_.sc, {}, [&](const Quad& q) { emit(c, x, v_.sc, q.object); });
      for_each(c, {}, v_.sc, x, [&](const Quad& q) { emit(c, q.subject, v_.sc, y); });
      for_each(c, {}, v_.type, x, [&](const Quad& q) { emit(c, q.subject, v_.type, y); });
    }
    if (p == v_.type) {
      for_each(c, y, v_.sc, {}, [&](const Quad& q) { emit(c, x, v_.type, q.object); });
    }
    if (p == v_.sp) {
      for_each(c, y, v_.sp, {}, [&](const Quad& q) { emit(c, x, v_.sp, q.object); });
      for_each(c, {}, v_.sp, x, [&](const Quad& q) { emit(c, q.subject, v_.sp, y); });
      for_each(c, {}, x, {}, [&](const Quad& q) { emit(c, q.subject, y, q.object); });
    }
    if (p == v_.dom) {
      for_each(c, {}, x, {}, [&](const Quad& q) { emit(c, q.subject, v_.type, y); });
    }
    if (p == v_.range) {
      for_each(c, {}, x, {}, [&](const Quad& q) { emit(c, q.object, v_.type, y); });
    }
    // t as an instance of its predicate.
    for (std::uint32_t i : g_.by_subject(c, p)) {
      const Quad& schema = g_.at(i);
      if (schema.predicate == v_.sp) emit(c, x, schema.object, y);
      if (schema.predicate == v_.dom) emit(c, x, v_.type, schema.object);
      if (schema.predicate == v_.range) emit(c, y, v_.type, schema.object);
    }
    if (resource_rule_) emit(c, y, v_.type, v_.resource);
  }

 private:
  template <typename F>
  void for_each(Constant c, Constant s, Constant p, Constant o, F&& f) {
    std::span<const std::uint32_t> best = g_.by_context(c);
    auto consider = [&best](std::span<const std::uint32_t> span) {
      if (span.size() < best.size()) best = span;
    };
    if (s) consider(g_.by_subject(c, s));
    if (p) consider(g_.by_predicate(c, p));
    if (o) consider(g_.by_object(c, o));
    for (std::uint32_t i : best) {
      const Quad& q = g_.at(i);
      if ((s && q.subject != s) || (p && q.predicate != p) || (o && q.object != o)) continue;
      f(q);
    }
  }

  void emit(Constant c, Constant s, Constant p, Constant o) {
    Quad q{c, s, p, o};
    if (!g_.contains(q)) out_.push_back(q);
  }

  const QuadGraph& g_;
  const Vocabulary& v_;
  bool resource_rule_;
  std::vector<Quad>& out_;
};

}  // namespace

std::vector<Quad> LocalSemantics::close(QuadGraph& graph, std::span<const Quad> delta) const {
  std::vector<Quad> added;
  if (kind_ == Kind::kSimple) return added;
  std::vector<Quad> queue(delta.begin(), delta.end());
  std::vector<Quad> produced;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    produced.clear();
    RdfsStep(graph, resource_rule_, produced).run(queue[head]);
    for (const Quad& q : produced) {
      if (graph.insert(q)) {
        added.push_back(q);
        queue.push_back(q);
      }
    }
  }
  return added;
}

std::vector<Triple> lclosure_graph(std::span<const Triple> g, const LocalSemantics& sem) {
  static const Constant context = Constant::iri("urn:quadchase:local");
  QuadGraph q;
  for (const Triple& t : g) q.insert(Quad{context, t.subject, t.predicate, t.object});
  QuadGraph closed = lclosure_quadgraph(q, sem);
  return closed.graph_of(context);
}

QuadGraph lclosure_quadgraph(const QuadGraph& q, const LocalSemantics& sem) {
  QuadGraph out = q;
  std::vector<Quad> all(q.quads().begin(), q.quads().end());
  sem.close(out, all);
  return out;
}

}  // namespace quadchase
