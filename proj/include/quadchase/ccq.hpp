#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quadchase/dchase.hpp"
#include "quadchase/syntax.hpp"

namespace quadchase {

struct BooleanAnswer {
  bool entailed = false;
  /// False when the dChase is partial: `true` is still sound, `false` is
  /// inconclusive.
  bool complete = true;
  /// The dChase violated a constraint; every query is entailed.
  bool inconsistent = false;
  std::vector<std::string> warnings;
};

struct AnswerSet {
  std::vector<std::string> free_vars;
  /// Sorted, duplicate-free; never contains skolem blank nodes.
  std::vector<std::vector<Constant>> tuples;
  bool complete = true;
  /// Under an inconsistent dChase every tuple is an answer; `tuples` is then
  /// left empty and this flag is set instead.
  bool inconsistent = false;
  std::vector<std::string> warnings;
};

/// Throws kInvalidArgument if `q` has free variables.
BooleanAnswer entails_boolean(const ChaseResult& d, const QueryDocument& q);

/// Certain answers: bindings of the free variables to non-skolem constants
/// that extend to a match of every atom. Quantified variables may bind to
/// any constant.
AnswerSet answers(const ChaseResult& d, const QueryDocument& q);

/// Blank nodes in `quad` / `g` act as quantified variables (shared across
/// the quads of `g`).
BooleanAnswer entails_quad(const ChaseResult& d, const Quad& quad);
BooleanAnswer entails_quadgraph(const ChaseResult& d, const QuadGraph& g);

/// The boolean query whose atoms are the quads of `g`, blanks replaced by
/// variables `_:label`.
QueryDocument query_from_quadgraph(const QuadGraph& g);

/// Reads a serialized dChase. The status comes from the `chase_header` line
/// when present; a file without one is taken as complete.
ChaseResult load_chase(std::string_view nquads_text);

}  // namespace quadchase
