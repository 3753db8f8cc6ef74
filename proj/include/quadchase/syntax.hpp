#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quadchase/quad.hpp"
#include "quadchase/rules.hpp"

namespace quadchase {

struct NQuadsOptions {
  /// Reject generalized positions: literal subjects, non-IRI predicates.
  bool strict = false;
  /// When non-empty, plain blank labels `b` are read as `<scope>_b` so that
  /// several documents can be merged without capturing each other's blank
  /// nodes. Skolem labels are never renamed.
  std::string blank_scope;
};

/// Parses N-Quads (graph label last, required). `#` comments and blank lines
/// are skipped; duplicates collapse. Errors carry line and column.
QuadGraph parse_nquads(std::string_view text, const NQuadsOptions& options = {});

/// Adds the quads of `text` to `graph`; returns the number of new quads.
std::size_t parse_nquads_into(QuadGraph& graph, std::string_view text, const NQuadsOptions& options = {});

/// One line per quad, `s p o c .`, sorted by (context, s, p, o).
std::string serialize_nquads(const QuadGraph& q);

struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t end_line = 0;
};

struct RuleDocument {
  std::vector<BridgeRule> rules;
  std::vector<SourceSpan> spans;
  std::map<std::string, std::string> prefixes;
};

/// Parses a rule file:
///
///     @prefix ex: <http://example.org/> .
///     r1: c1(?x, ?p, <U1>) -> c2(?x, ?p, ?y), c3(?p, rdf:type, rdf:Property) .
///     exists ?y . c1(?x, ex:p, ?z) -> c1(?x, ex:q, ?y) .
///     never: c(?x, ex:a, ex:b) -> .
///
/// Contexts are `<iri>`, `prefix:name` or a bare name (`c1` is `<c1>`).
/// Terms additionally include literals and `?var`. A rule without an id
/// gets `r<position>`, skipping ids already taken.
RuleDocument parse_rules(std::string_view text);

/// Rule file text that parses back to the same rules.
std::string serialize_rules(const std::vector<BridgeRule>& rules);

/// A contextualized conjunctive query. Blank nodes written in the query are
/// quantified variables named `_:label`.
struct QueryDocument {
  std::vector<std::string> free_vars;
  std::vector<QuadPattern> atoms;

  bool is_boolean() const { return free_vars.empty(); }
  /// Variables of the atoms that are not free, in order of first occurrence.
  std::vector<std::string> quantified() const;
};

/// Parses `ask { atom, ... }` or `select ?x ?y where { atom, ... }`, after
/// optional `@prefix` lines. Atoms may be separated by `,` or `.`.
QueryDocument parse_query(std::string_view text);

std::string serialize_query(const QueryDocument& q);

/// Reads a whole file; throws kIo on failure.
std::string read_file(const std::string& path);

}  // namespace quadchase
