#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadchase/rules.hpp"

namespace quadchase {

struct DependencyEdge {
  Constant from;
  Constant to;
  /// Ids of the rules with `from` in the body and `to` in the head.
  std::vector<std::string> rules;
};

/// Contexts of a quad-system with body-to-head edges per bridge rule and
/// the triple-generating-context (TGC) flags. Nodes are sorted
/// canonically; edges by (from, to).
class ContextDependencyGraph {
 public:
  static ContextDependencyGraph build(const QuadSystem& qs);

  const std::vector<Constant>& nodes() const { return nodes_; }
  const std::vector<DependencyEdge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(Constant c) const;

  bool is_tgc(Constant c) const;
  bool is_tgc(std::size_t node) const { return tgc_[node]; }
  std::vector<Constant> tgcs() const;

  /// Successor node indices, ascending.
  const std::vector<std::size_t>& successors(std::size_t node) const { return succ_[node]; }
  bool has_edge(Constant from, Constant to) const;

 private:
  std::vector<Constant> nodes_;
  std::vector<bool> tgc_;
  std::vector<DependencyEdge> edges_;
  std::vector<std::vector<std::size_t>> succ_;
};

struct AcyclicityVerdict {
  bool acyclic = true;
  /// A shortest directed cycle through a TGC, starting at its smallest node
  /// and repeating it at the end. Empty when acyclic.
  std::vector<Constant> witness;
};

/// Context acyclic iff no TGC lies on a directed cycle (a self-loop counts).
AcyclicityVerdict check_context_acyclicity(const ContextDependencyGraph& g);

/// `(c1, c2, c1)`, using IRI text without angle brackets.
std::string format_cycle(const std::vector<Constant>& cycle);

struct LevelMap {
  std::map<Constant, std::size_t> level;
  std::size_t max_level = 0;

  std::size_t at(Constant c) const;
};

/// Levels over the condensation: a TGC gets one more than the highest level
/// among contexts with a path into it, a non-TGC gets that maximum itself
/// (0 when no TGC reaches it). Throws NotContextAcyclicError on cyclic input.
LevelMap compute_levels(const ContextDependencyGraph& g);

/// The maximum level: the chase performs at most this many non-vacuous
/// generating iterations, plus one that derives nothing.
std::size_t predicted_generating_iterations(const LevelMap& lm);

/// DOT rendering; TGC labels carry a trailing `*`.
std::string to_dot(const ContextDependencyGraph& g);

/// Nodes, edges, TGC flags, verdict, witness and (when acyclic) levels.
std::string to_json(const ContextDependencyGraph& g);

}  // namespace quadchase
