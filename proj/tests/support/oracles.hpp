#pragma once

// Brute-force reference implementations for differential tests. They work
// on plain strings and share no code with the engine beyond reading its
// parsed inputs.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quadchase/reductions.hpp"
#include "quadchase/rules.hpp"

namespace oracle {

/// c, s, p, o as canonical N-Quads terms; in atoms a leading `?` marks a
/// variable.
using Fact = std::array<std::string, 4>;
using Atom = std::array<std::string, 4>;
using Triple3 = std::array<std::string, 3>;
using Binding = std::map<std::string, std::string>;

struct Rule {
  std::string id;
  std::vector<Atom> body;
  std::vector<Atom> head;
};

struct System {
  std::set<Fact> facts;
  std::vector<Rule> rules;
};

enum class Semantics { kSimple, kRdfs, kRdfsResource };

Fact fact_of(const quadchase::Quad& q);
std::set<Fact> facts_of(const quadchase::QuadGraph& g);
Atom atom_of(const quadchase::QuadPattern& p);
System system_of(const quadchase::QuadSystem& qs);

/// Fixpoint of the rdfs-core rules by repeated full scans.
std::set<Triple3> rdfs_closure(std::set<Triple3> g, bool resource_rule);
std::set<Fact> lclosure(const std::set<Fact>& facts, Semantics sem);

/// Every homomorphism of `atoms` into `facts` by plain nested enumeration.
/// The callback returns false to stop.
void for_each_match(const std::vector<Atom>& atoms, const std::set<Fact>& facts,
                    const std::function<bool(const Binding&)>& fn);
bool entails(const std::set<Fact>& facts, const std::vector<Atom>& atoms);

struct ChaseOutcome {
  std::set<Fact> model;
  bool terminated = false;
  bool inconsistent = false;
  std::size_t rounds = 0;
};

/// Oblivious skolem chase applying all rules (multi-head, unsplit) and the
/// closure in each round. Skolem values are spelled-out terms
/// `_:f(rule,var|args)`.
ChaseOutcome naive_chase(const System& sys, Semantics sem, std::size_t max_rounds);

/// Context-level analysis straight from the path definitions.
struct GraphFacts {
  std::vector<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  std::set<std::string> tgcs;
};
GraphFacts graph_facts(const quadchase::QuadSystem& qs);
/// reach[u][v]: a path of at least one edge from u to v.
std::map<std::string, std::set<std::string>> reachability(const GraphFacts& g);
bool context_acyclic(const GraphFacts& g);
/// Levels per the path definition; requires an acyclic graph.
std::map<std::string, std::size_t> levels(const GraphFacts& g);

/// Horn unsatisfiability by saturating the set of true variables.
bool horn_unsat(const quadchase::HornFormulaSet& phi);

/// Every non-empty terminal string of length <= max_len derivable in an
/// epsilon-free grammar, by breadth-first expansion of sentential forms.
std::set<std::vector<std::string>> cfg_language(const quadchase::Cfg& g, std::size_t max_len);

/// Runs the machine on a tape of `cells` cells for at most `cells - 1`
/// steps; false on timeout, a missing transition or leaving the tape.
bool dtm_accepts(const quadchase::Dtm& m, const std::vector<std::string>& w, std::size_t cells);

}  // namespace oracle
