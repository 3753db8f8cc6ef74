#include <gtest/gtest.h>

#include <deque>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "quadchase/context_graph.hpp"
#include "quadchase/error.hpp"
#include "quadchase/syntax.hpp"

using namespace quadchase;

namespace {

Constant iri(const char* s) { return Constant::iri(s); }

QuadSystem load(const std::string& stem) {
  std::string base = std::string(QC_FIXTURES) + "/" + stem;
  return {parse_nquads(read_file(base + ".nq")), parse_rules(read_file(base + ".qrules")).rules};
}

QuadSystem from_rules(const char* rules) { return {QuadGraph{}, parse_rules(rules).rules}; }

// Length (in edges) of the shortest cycle through any TGC, by BFS.
std::size_t shortest_tgc_cycle(const oracle::GraphFacts& g) {
  std::size_t best = SIZE_MAX;
  for (const auto& t : g.tgcs) {
    std::map<std::string, std::size_t> dist;
    std::deque<std::string> todo{t};
    dist[t] = 0;
    while (!todo.empty()) {
      std::string u = todo.front();
      todo.pop_front();
      for (const auto& [a, b] : g.edges) {
        if (a != u) continue;
        if (b == t) best = std::min(best, dist[u] + 1);
        if (!dist.count(b)) {
          dist[b] = dist[u] + 1;
          todo.push_back(b);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST(DependencyGraph, RelaySystem) {
  auto g = ContextDependencyGraph::build(load("relay"));
  EXPECT_EQ(g.nodes(), (std::vector<Constant>{iri("c1"), iri("c2"), iri("c3")}));
  ASSERT_EQ(g.edges().size(), 4u);
  EXPECT_TRUE(g.has_edge(iri("c1"), iri("c2")));
  EXPECT_TRUE(g.has_edge(iri("c1"), iri("c3")));
  EXPECT_TRUE(g.has_edge(iri("c2"), iri("c1")));
  EXPECT_TRUE(g.has_edge(iri("c3"), iri("c1")));
  EXPECT_FALSE(g.has_edge(iri("c2"), iri("c3")));
  EXPECT_EQ(g.tgcs(), std::vector<Constant>{iri("c2")});
  EXPECT_EQ(g.edges()[0].rules, std::vector<std::string>{"r1"});

  AcyclicityVerdict v = check_context_acyclicity(g);
  EXPECT_FALSE(v.acyclic);
  EXPECT_EQ(format_cycle(v.witness), "(c1, c2, c1)");
  EXPECT_THROW(compute_levels(g), NotContextAcyclicError);
  try {
    compute_levels(g);
  } catch (const NotContextAcyclicError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotContextAcyclic);
    EXPECT_EQ(e.cycle(), (std::vector<std::string>{"c1", "c2", "c1"}));
  }
}

TEST(DependencyGraph, LayeredLevels) {
  auto g = ContextDependencyGraph::build(load("layered"));
  EXPECT_EQ(g.tgcs(), (std::vector<Constant>{iri("c1"), iri("c3")}));
  EXPECT_TRUE(check_context_acyclicity(g).acyclic);
  LevelMap lm = compute_levels(g);
  EXPECT_EQ(lm.at(iri("c2")), 0u);
  EXPECT_EQ(lm.at(iri("c4")), 0u);
  EXPECT_EQ(lm.at(iri("c1")), 1u);
  EXPECT_EQ(lm.at(iri("c3")), 2u);
  EXPECT_EQ(lm.max_level, 2u);
  EXPECT_EQ(predicted_generating_iterations(lm), 2u);
}

TEST(DependencyGraph, NoTgcMeansEveryLevelIsZero) {
  auto g = ContextDependencyGraph::build(
      from_rules("a: c1(?x, <p>, ?y) -> c2(?x, <p>, ?y) .\nb: c2(?x, <p>, ?y) -> c1(?y, <p>, ?x) ."));
  EXPECT_TRUE(g.tgcs().empty());
  EXPECT_TRUE(check_context_acyclicity(g).acyclic);
  LevelMap lm = compute_levels(g);
  EXPECT_EQ(lm.max_level, 0u);
  EXPECT_EQ(lm.at(iri("c1")), 0u);
}

TEST(DependencyGraph, ChainOfGeneratingContexts) {
  auto g = ContextDependencyGraph::build(from_rules(
      "a: c0(?x, <p>, ?y) -> c1(?x, <p>, ?z) .\n"
      "b: c1(?x, <p>, ?y) -> c2(?x, <p>, ?z) .\n"
      "c: c2(?x, <p>, ?y) -> c3(?x, <p>, ?z) .\n"
      "d: c3(?x, <p>, ?y) -> c4(?x, <p>, ?y) .\n"));
  LevelMap lm = compute_levels(g);
  EXPECT_EQ(lm.at(iri("c0")), 0u);
  EXPECT_EQ(lm.at(iri("c1")), 1u);
  EXPECT_EQ(lm.at(iri("c2")), 2u);
  EXPECT_EQ(lm.at(iri("c3")), 3u);
  EXPECT_EQ(lm.at(iri("c4")), 3u);
}

TEST(DependencyGraph, SelfLoopOnTgcIsCyclic) {
  auto g = ContextDependencyGraph::build(from_rules("a: c(?x, <p>, ?y) -> c(?y, <p>, ?z) ."));
  AcyclicityVerdict v = check_context_acyclicity(g);
  EXPECT_FALSE(v.acyclic);
  EXPECT_EQ(format_cycle(v.witness), "(c, c)");
}

TEST(DependencyGraph, MultiAtomRulesGiveAllPairs) {
  auto g = ContextDependencyGraph::build(
      from_rules("a: c1(?x, <p>, ?y), c2(?y, <p>, ?w) -> c3(?x, <p>, ?w), c4(?x, <q>, ?w) ."));
  for (const char* from : {"c1", "c2"})
    for (const char* to : {"c3", "c4"}) EXPECT_TRUE(g.has_edge(iri(from), iri(to)));
  EXPECT_EQ(g.edges().size(), 4u);
  EXPECT_TRUE(g.tgcs().empty());
}

TEST(DependencyGraph, IsolatedDataContextsAreNodes) {
  QuadSystem qs{QuadGraph{{iri("lonely"), iri("a"), iri("p"), iri("b")}}, {}};
  auto g = ContextDependencyGraph::build(qs);
  EXPECT_EQ(g.nodes(), std::vector<Constant>{iri("lonely")});
  EXPECT_EQ(compute_levels(g).at(iri("lonely")), 0u);
}

TEST(DependencyGraph, AgreesWithPathOracle) {
  gen::Rng rng(77);
  std::size_t acyclic_seen = 0, cyclic_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    QuadSystem qs = gen::random_system(rng, {5, 5, 6, 0.05});
    auto g = ContextDependencyGraph::build(qs);
    oracle::GraphFacts facts = oracle::graph_facts(qs);

    std::vector<std::string> nodes;
    for (Constant c : g.nodes()) nodes.push_back(c.value());
    ASSERT_EQ(nodes, facts.nodes);
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& e : g.edges()) edges.insert({e.from.value(), e.to.value()});
    ASSERT_EQ(edges, facts.edges);
    std::set<std::string> tgcs;
    for (Constant c : g.tgcs()) tgcs.insert(c.value());
    ASSERT_EQ(tgcs, facts.tgcs);

    AcyclicityVerdict v = check_context_acyclicity(g);
    ASSERT_EQ(v.acyclic, oracle::context_acyclic(facts)) << "system " << i;
    if (v.acyclic) {
      ++acyclic_seen;
      LevelMap lm = compute_levels(g);
      for (const auto& [name, level] : oracle::levels(facts)) {
        ASSERT_EQ(lm.at(Constant::iri(name)), level) << name << " in system " << i;
      }
    } else {
      ++cyclic_seen;
      ASSERT_GE(v.witness.size(), 2u);
      EXPECT_EQ(v.witness.front(), v.witness.back());
      bool has_tgc = false;
      for (std::size_t k = 0; k + 1 < v.witness.size(); ++k) {
        EXPECT_TRUE(g.has_edge(v.witness[k], v.witness[k + 1]));
        EXPECT_LE(v.witness.front(), v.witness[k]);
        has_tgc = has_tgc || g.is_tgc(v.witness[k]);
      }
      EXPECT_TRUE(has_tgc);
      EXPECT_EQ(v.witness.size() - 1, shortest_tgc_cycle(facts));
    }
  }
  EXPECT_GT(acyclic_seen, 100u);
  EXPECT_GT(cyclic_seen, 100u);
}

TEST(Rendering, DotMarksTgcs) {
  std::string dot = to_dot(ContextDependencyGraph::build(load("relay")));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"c2*\""), std::string::npos);
  EXPECT_NE(dot.find("\"c1\" -> \"c2\" [label=\"r1\"]"), std::string::npos);
}

TEST(Rendering, JsonCarriesVerdictAndLevels) {
  auto cyclic = nlohmann::json::parse(to_json(ContextDependencyGraph::build(load("relay"))));
  EXPECT_FALSE(cyclic["context_acyclic"].get<bool>());
  EXPECT_EQ(cyclic["witness"], nlohmann::json::array({"c1", "c2", "c1"}));
  EXPECT_EQ(cyclic["edges"].size(), 4u);

  auto acyclic = nlohmann::json::parse(to_json(ContextDependencyGraph::build(load("layered"))));
  EXPECT_TRUE(acyclic["context_acyclic"].get<bool>());
  EXPECT_EQ(acyclic["max_level"], 2);
  for (const auto& node : acyclic["nodes"]) {
    if (node["id"] == "c3") {
      EXPECT_EQ(node["level"], 2);
    }
  }
}
