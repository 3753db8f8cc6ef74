#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "quadchase/local_semantics.hpp"

using namespace quadchase;

namespace {

Constant ex(const char* s) { return Constant::iri(std::string("http://ex.org/") + s); }
Constant sco() { return Constant::iri(vocab::kRdfsSubClassOf); }
Constant type() { return Constant::iri(vocab::kRdfType); }

std::set<Triple> as_set(const std::vector<Triple>& v) { return {v.begin(), v.end()}; }

bool subset(const QuadGraph& a, const QuadGraph& b) {
  for (const Quad& q : a.quads())
    if (!b.contains(q)) return false;
  return true;
}

}  // namespace

TEST(Simple, IsTheIdentity) {
  gen::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    QuadGraph g = gen::rdfs_quadgraph(rng, 20, 3);
    EXPECT_EQ(lclosure_quadgraph(g, LocalSemantics::simple()), g);
  }
}

TEST(RdfsCore, SubclassInstantiation) {
  std::vector<Triple> g{{ex("A"), sco(), ex("B")}, {ex("x"), type(), ex("A")}};
  auto out = as_set(lclosure_graph(g, LocalSemantics::rdfs_core(false)));
  EXPECT_TRUE(out.count({ex("x"), type(), ex("B")}));
}

TEST(RdfsCore, SubclassTransitivity) {
  std::vector<Triple> g{{ex("A"), sco(), ex("B")}, {ex("B"), sco(), ex("C")}};
  auto out = as_set(lclosure_graph(g, LocalSemantics::rdfs_core(false)));
  EXPECT_TRUE(out.count({ex("A"), sco(), ex("C")}));
  EXPECT_EQ(out.size(), 3u);
}

TEST(RdfsCore, ResourceRuleTypesObjects) {
  std::vector<Triple> g{{ex("s"), ex("p"), ex("o")}};
  auto with = as_set(lclosure_graph(g, LocalSemantics::rdfs_core(true)));
  EXPECT_TRUE(with.count({ex("o"), type(), Constant::iri(vocab::kRdfsResource)}));
  auto without = as_set(lclosure_graph(g, LocalSemantics::rdfs_core(false)));
  EXPECT_EQ(without.size(), 1u);
}

TEST(RdfsCore, NoCrossContextInference) {
  QuadGraph q{{ex("c1"), ex("A"), sco(), ex("B")}, {ex("c2"), ex("x"), type(), ex("A")}};
  EXPECT_EQ(lclosure_quadgraph(q, LocalSemantics::rdfs_core(false)), q);
}

TEST(RdfsCore, SameContextInference) {
  QuadGraph q{{ex("c1"), ex("A"), sco(), ex("B")}, {ex("c1"), ex("x"), type(), ex("A")}};
  QuadGraph out = lclosure_quadgraph(q, LocalSemantics::rdfs_core(false));
  EXPECT_TRUE(out.contains(Quad{ex("c1"), ex("x"), type(), ex("B")}));
  EXPECT_EQ(out.size(), 3u);
}

TEST(RdfsCore, MatchesNaiveOracle) {
  gen::Rng rng(5);
  for (int i = 0; i < 400; ++i) {
    bool resource = i % 2 == 0;
    std::vector<Triple> g = gen::rdfs_triples(rng, 30);
    std::set<oracle::Triple3> in;
    for (const Triple& t : g) in.insert({t.subject.canonical(), t.predicate.canonical(), t.object.canonical()});
    std::set<oracle::Triple3> expected = oracle::rdfs_closure(in, resource);
    std::set<oracle::Triple3> actual;
    for (const Triple& t : lclosure_graph(g, LocalSemantics::rdfs_core(resource))) {
      actual.insert({t.subject.canonical(), t.predicate.canonical(), t.object.canonical()});
    }
    ASSERT_EQ(actual, expected) << "graph " << i;
  }
}

TEST(RdfsCore, IdempotentMonotoneIsolatedAndBounded) {
  gen::Rng rng(8);
  const LocalSemantics sems[] = {LocalSemantics::rdfs_core(true), LocalSemantics::rdfs_core(false)};
  for (int i = 0; i < 1000; ++i) {
    const LocalSemantics& sem = sems[i % 2];
    QuadGraph q = gen::rdfs_quadgraph(rng, 25, 3);
    QuadGraph closed = lclosure_quadgraph(q, sem);
    ASSERT_TRUE(subset(q, closed));
    ASSERT_EQ(lclosure_quadgraph(closed, sem), closed) << "idempotence, graph " << i;

    QuadGraph bigger = q;
    bigger.merge(gen::rdfs_quadgraph(rng, 10, 3));
    ASSERT_TRUE(subset(closed, lclosure_quadgraph(bigger, sem))) << "monotonicity, graph " << i;

    for (Constant c : closed.contexts()) {
      auto per_context = as_set(closed.graph_of(c));
      auto direct = as_set(lclosure_graph(q.graph_of(c), sem));
      ASSERT_EQ(per_context, direct) << "isolation, graph " << i;
      std::set<Constant> symbols{type(), sco(), Constant::iri(vocab::kRdfsResource)};
      for (const Triple& t : q.graph_of(c)) symbols.insert({t.subject, t.predicate, t.object});
      std::size_t n = symbols.size();
      ASSERT_LE(per_context.size(), n * n * n);
    }
  }
}

TEST(Semantics, NamesAndListing) {
  EXPECT_EQ(LocalSemantics::from_name("simple").name(), "simple");
  EXPECT_EQ(LocalSemantics::from_name("rdfs-core").name(), "rdfs-core");
  EXPECT_THROW(LocalSemantics::from_name("owl-horst"), std::exception);
  EXPECT_TRUE(LocalSemantics::simple().rules().empty());
  EXPECT_EQ(LocalSemantics::rdfs_core(true).rules().size(), 7u);
  EXPECT_EQ(LocalSemantics::rdfs_core(false).rules().size(), 6u);
}
