#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "quadchase/ccq.hpp"
#include "quadchase/dchase.hpp"
#include "quadchase/error.hpp"
#include "quadchase/syntax.hpp"

using namespace quadchase;

namespace {

Constant iri(const char* s) { return Constant::iri(s); }

QuadSystem load(const std::string& stem) {
  std::string base = std::string(QC_FIXTURES) + "/" + stem;
  return {parse_nquads(read_file(base + ".nq")), parse_rules(read_file(base + ".qrules")).rules};
}

ChaseConfig with_semantics(LocalSemantics sem) {
  ChaseConfig cfg;
  cfg.semantics = std::move(sem);
  return cfg;
}

// Spells an engine skolem the way the naive chase names it.
std::string spell(Constant c, const std::map<std::string, const BridgeRule*>& rules) {
  const SkolemInfo* sk = c.skolem();
  if (!sk) return c.canonical();
  const BridgeRule& r = *rules.at(sk->rule_id);
  std::map<std::string, std::string> args;
  for (std::size_t k = 0; k < r.frontier().size(); ++k) args["?" + r.frontier()[k]] = spell(sk->args.at(k), rules);
  std::string out = "_:f(" + r.id() + ",?" + r.existentials().at(sk->fn_index);
  for (const auto& [var, value] : args) out += "|" + value;
  return out + ")";
}

std::set<oracle::Fact> spelled(const QuadGraph& g, const QuadSystem& qs) {
  std::map<std::string, const BridgeRule*> rules;
  for (const BridgeRule& r : qs.rules) rules[r.id()] = &r;
  std::set<oracle::Fact> out;
  for (const Quad& q : g.quads()) {
    out.insert({spell(q.context, rules), spell(q.subject, rules), spell(q.predicate, rules), spell(q.object, rules)});
  }
  return out;
}

const oracle::Semantics kOracleSems[] = {oracle::Semantics::kSimple, oracle::Semantics::kRdfs,
                                         oracle::Semantics::kRdfsResource};

LocalSemantics engine_semantics(oracle::Semantics s) {
  switch (s) {
    case oracle::Semantics::kSimple: return LocalSemantics::simple();
    case oracle::Semantics::kRdfs: return LocalSemantics::rdfs_core(false);
    default: return LocalSemantics::rdfs_core(true);
  }
}

QuadSystem random_acyclic(gen::Rng& rng, const gen::SystemShape& shape = {}) {
  for (;;) {
    QuadSystem qs = gen::random_system(rng, shape);
    if (check_context_acyclicity(ContextDependencyGraph::build(qs)).acyclic) return qs;
  }
}

}  // namespace

TEST(DChase, LayeredSchedule) {
  QuadSystem qs = load("layered");
  ChaseResult r = dchase(qs);
  EXPECT_EQ(r.status, ChaseStatus::kComplete);
  EXPECT_EQ(r.quads.size(), 6u);
  EXPECT_LE(r.generating_iterations, 3u);
  LevelMap lm = compute_levels(ContextDependencyGraph::build(qs));
  EXPECT_LE(r.generating_iterations, lm.max_level + 1);
  SaturationReport sat = saturation_report(r, lm);
  EXPECT_TRUE(sat.schedule_ok) << (sat.problems.empty() ? "" : sat.problems[0]);
  EXPECT_EQ(r.quads.graph_of(iri("c3")).size(), 1u);
  EXPECT_EQ(r.quads.graph_of(iri("c1")).size(), 1u);
  EXPECT_EQ(r.last_growth.at(iri("c2")), 1u);
}

TEST(DChase, CyclicSystemNeedsABudget) {
  QuadSystem qs = load("relay");
  try {
    dchase(qs);
    FAIL() << "expected a refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetRequired);
  }
}

TEST(DChase, RelayTerminatesUnderSimpleSemantics) {
  QuadSystem qs = load("relay");
  ChaseConfig cfg;
  cfg.force = true;
  ChaseResult r = dchase(qs, cfg);
  EXPECT_EQ(r.status, ChaseStatus::kComplete);
  EXPECT_EQ(r.quads.size(), 4u);
  EXPECT_TRUE(r.quads.contains(Quad{iri("c1"), iri("b"), Constant::iri(vocab::kRdfType),
                                    Constant::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#Property")}));
}

TEST(DChase, RelayUnderRdfsExhaustsGrowingBudgets) {
  QuadSystem qs = load("relay");
  std::size_t previous = 0;
  for (std::size_t budget : {10u, 50u, 100u}) {
    ChaseConfig cfg = with_semantics(LocalSemantics::rdfs_core(true));
    cfg.max_iterations = budget;
    ChaseResult r = dchase(qs, cfg);
    EXPECT_EQ(r.status, ChaseStatus::kBudgetExhausted);
    EXPECT_GT(r.quads.size(), previous);
    previous = r.quads.size();
  }
}

TEST(DChase, OtherBudgets) {
  QuadSystem qs = load("relay");
  ChaseConfig quads = with_semantics(LocalSemantics::rdfs_core(true));
  quads.max_quads = 40;
  ChaseResult r = dchase(qs, quads);
  EXPECT_EQ(r.status, ChaseStatus::kBudgetExhausted);
  EXPECT_GE(r.quads.size(), 40u);

  ChaseConfig gens = with_semantics(LocalSemantics::rdfs_core(true));
  gens.max_generating_iterations = 3;
  r = dchase(qs, gens);
  EXPECT_EQ(r.status, ChaseStatus::kBudgetExhausted);
  EXPECT_EQ(r.generating_iterations, 3u);
  EXPECT_FALSE(r.stop_reason.empty());
}

TEST(DChase, ConstraintMakesTheChaseInconsistent) {
  QuadSystem qs{parse_nquads("<a> <p> <b> <c1> .\n"),
                parse_rules("m: c1(?x, <p>, ?y) -> c2(?y, <p>, ?x) .\nk: c2(?x, <p>, ?y) -> .").rules};
  ChaseResult r = dchase(qs);
  EXPECT_EQ(r.status, ChaseStatus::kInconsistent);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rule_id, "k");
}

TEST(DChase, MatchesNaiveChaseUpToSkolemNames) {
  gen::Rng rng(101);
  std::size_t compared = 0;
  for (int i = 0; i < 1500; ++i) {
    QuadSystem qs = random_acyclic(rng);
    oracle::Semantics sem = kOracleSems[i % 3];
    ChaseResult r = dchase(qs, with_semantics(engine_semantics(sem)));
    oracle::ChaseOutcome naive = oracle::naive_chase(oracle::system_of(qs), sem, 64);
    ASSERT_TRUE(naive.terminated || naive.inconsistent) << "system " << i;
    if (r.status == ChaseStatus::kInconsistent) {
      ASSERT_TRUE(naive.inconsistent) << "system " << i;
      continue;
    }
    ASSERT_EQ(r.status, ChaseStatus::kComplete);
    ASSERT_FALSE(naive.inconsistent) << "system " << i;
    ASSERT_EQ(spelled(r.quads, qs), naive.model) << "system " << i;
    ++compared;
  }
  EXPECT_GT(compared, 1000u);
}

TEST(DChase, GrowthIsMonotoneAndDeltasPartitionTheResult) {
  gen::Rng rng(202);
  for (int i = 0; i < 300; ++i) {
    QuadSystem qs = gen::random_system(rng);
    ChaseConfig cfg = with_semantics(i % 2 ? LocalSemantics::rdfs_core(true) : LocalSemantics::simple());
    cfg.max_iterations = 12;
    cfg.record_deltas = true;
    ChaseResult r = dchase(qs, cfg);
    QuadGraph rebuilt;
    std::size_t previous = 0;
    for (const IterationRecord& rec : r.log) {
      EXPECT_GE(rec.total, previous);
      previous = rec.total;
      EXPECT_EQ(rec.delta.size(), rec.new_quads());
      for (const Quad& q : rec.delta) EXPECT_TRUE(rebuilt.insert(q)) << "quad derived twice";
      EXPECT_EQ(rebuilt.size(), rec.total);
    }
    EXPECT_EQ(rebuilt, r.quads);
    for (const Quad& q : qs.quads.quads()) EXPECT_TRUE(r.quads.contains(q));
  }
}

TEST(DChase, ScheduleHoldsOnRandomAcyclicSystems) {
  gen::Rng rng(303);
  for (int i = 0; i < 400; ++i) {
    QuadSystem qs = random_acyclic(rng);
    ChaseConfig cfg = with_semantics(i % 2 ? LocalSemantics::rdfs_core(false) : LocalSemantics::simple());
    ChaseResult r = dchase(qs, cfg);
    if (r.status != ChaseStatus::kComplete) continue;
    auto g = ContextDependencyGraph::build(qs);
    LevelMap lm = compute_levels(g);
    EXPECT_LE(r.generating_iterations, g.nodes().size()) << "system " << i;
    EXPECT_LE(r.generating_iterations, lm.max_level + 1) << "system " << i;
    SaturationReport sat = saturation_report(r, lm);
    EXPECT_TRUE(sat.schedule_ok) << "system " << i << ": " << (sat.problems.empty() ? "" : sat.problems[0]);
    EXPECT_TRUE(entailment_closure_check(r, qs));
    for (std::size_t k = 0; k < r.generating_indices.size(); ++k) {
      EXPECT_TRUE(r.log.at(r.generating_indices[k]).generating);
    }
  }
}

TEST(DChase, RuleIApplicationsComeFirst) {
  gen::Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    QuadSystem qs = random_acyclic(rng);
    std::vector<SkolemRule> rules = skolemize_all(qs.rules);
    std::vector<const SkolemRule*> plain;
    for (const SkolemRule& r : rules)
      if (!r.is_generating()) plain.push_back(&r);
    ChaseConfig cfg;
    cfg.record_deltas = true;
    ChaseResult r = dchase(qs, cfg);
    if (r.status != ChaseStatus::kComplete) continue;
    // Replay: before each generating iteration the non-generating rules
    // must have nothing left to add.
    QuadGraph state;
    for (const IterationRecord& rec : r.log) {
      if (rec.generating) {
        EXPECT_TRUE(derive_new(plain, state).empty()) << "system " << i;
      }
      for (const Quad& q : rec.delta) state.insert(q);
    }
  }
}

TEST(DChase, EntailmentCheckDetectsAMissingHead) {
  QuadSystem qs = load("layered");
  ChaseResult r = dchase(qs);
  ASSERT_TRUE(entailment_closure_check(r, qs));
  ChaseResult broken = r;
  broken.quads = QuadGraph{};
  for (const Quad& q : r.quads.quads())
    if (q.context != iri("c3")) broken.quads.insert(q);
  EXPECT_FALSE(entailment_closure_check(broken, qs));
}

TEST(DChase, DeterministicAcrossRunsAndThreads) {
  gen::Rng rng(505);
  for (int i = 0; i < 100; ++i) {
    QuadSystem qs = gen::random_system(rng);
    ChaseConfig cfg = with_semantics(LocalSemantics::rdfs_core(true));
    cfg.max_iterations = 8;
    ChaseResult a = dchase(qs, cfg);
    ChaseResult b = dchase(qs, cfg);
    cfg.jobs = 4;
    ChaseResult c = dchase(qs, cfg);
    std::string text = chase_header(a) + serialize_nquads(a.quads);
    EXPECT_EQ(text, chase_header(b) + serialize_nquads(b.quads));
    EXPECT_EQ(text, chase_header(c) + serialize_nquads(c.quads));
  }
}

TEST(DChase, HeaderAndReload) {
  ChaseResult r = dchase(load("layered"));
  std::string header = chase_header(r);
  EXPECT_EQ(header.rfind("# quadchase dchase status=complete", 0), 0u);
  EXPECT_EQ(header.back(), '\n');
  ChaseResult back = load_chase(header + serialize_nquads(r.quads));
  EXPECT_EQ(back.status, ChaseStatus::kComplete);
  EXPECT_EQ(back.quads, r.quads);

  ChaseConfig cfg = with_semantics(LocalSemantics::rdfs_core(true));
  cfg.max_iterations = 5;
  ChaseResult partial = dchase(load("relay"), cfg);
  EXPECT_EQ(load_chase(chase_header(partial) + serialize_nquads(partial.quads)).status,
            ChaseStatus::kBudgetExhausted);
  EXPECT_EQ(load_chase(serialize_nquads(partial.quads)).status, ChaseStatus::kComplete);
}

TEST(DChase, StatsDocument) {
  QuadSystem qs = load("layered");
  ChaseResult r = dchase(qs);
  LevelMap lm = compute_levels(ContextDependencyGraph::build(qs));
  auto doc = nlohmann::json::parse(chase_stats_json(r, &lm));
  EXPECT_EQ(doc["status"], "complete");
  EXPECT_EQ(doc["quads"], 6);
  EXPECT_EQ(doc["generating_iterations"], r.generating_iterations);
  EXPECT_EQ(doc["log"].size(), r.log.size());
  EXPECT_TRUE(doc["schedule_ok"].get<bool>());
}

TEST(DChase, StatusNames) {
  for (ChaseStatus s : {ChaseStatus::kComplete, ChaseStatus::kBudgetExhausted, ChaseStatus::kInconsistent}) {
    EXPECT_EQ(chase_status_from_string(to_string(s)), s);
  }
  EXPECT_THROW(chase_status_from_string("finished"), Error);
}
