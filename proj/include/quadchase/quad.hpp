#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "quadchase/term.hpp"

namespace quadchase {

struct Triple {
  Constant subject;
  Constant predicate;
  Constant object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// A context-tagged triple `c:(s,p,o)`. The context is always an IRI; s, p
/// and o may be constants of any kind (generalized triples).
struct Quad {
  Constant context;
  Constant subject;
  Constant predicate;
  Constant object;

  Triple triple() const { return {subject, predicate, object}; }

  friend bool operator==(const Quad&, const Quad&) = default;
  /// Canonical order: context, subject, predicate, object.
  friend auto operator<=>(const Quad&, const Quad&) = default;
};

/// Compact rendering `c:(s, p, o)` used in diagnostics.
std::string to_string(const Quad& q);

/// A quad pattern `c:(s,p,o)` whose s, p, o positions may hold variables.
struct QuadPattern {
  Constant context;
  std::array<Term, 3> terms;

  QuadPattern(Constant c, Term s, Term p, Term o) : context(c), terms{std::move(s), std::move(p), std::move(o)} {}

  bool is_ground() const;
  /// Variables in order of first occurrence.
  std::vector<std::string> variables() const;
  std::optional<Quad> to_quad() const;

  friend bool operator==(const QuadPattern&, const QuadPattern&) = default;
};

/// Rule-file rendering `<c>(s, p, o)`.
std::string to_string(const QuadPattern& p);

/// A finite mapping from variable names to constants.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Constant>> init) : map_(init) {}

  void bind(const std::string& var, Constant value) { map_[var] = value; }
  std::optional<Constant> lookup(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Constant>& entries() const { return map_; }

  /// `(this ∘ inner)`: applies `inner` first, then this substitution to the
  /// variables `inner` leaves unbound.
  Substitution compose_after(const Substitution& inner) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Constant> map_;
};

/// Replaces every in-domain variable; constants are left untouched.
QuadPattern apply_substitution(const QuadPattern& pattern, const Substitution& mu);

struct QuadHash {
  std::size_t operator()(const Quad& q) const noexcept {
    std::hash<Constant> h;
    std::size_t seed = h(q.context);
    for (Constant c : {q.subject, q.predicate, q.object}) {
      seed ^= h(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

/// A set of quads with per-context secondary indexes.
///
/// Quads are stored in insertion order and never removed; index entries are
/// positions into that sequence. Spans returned by the index accessors are
/// invalidated by the next insertion.
class QuadGraph {
 public:
  QuadGraph() = default;
  QuadGraph(std::initializer_list<Quad> quads);

  /// Returns true if the quad was not already present. Non-IRI contexts are
  /// rejected with an invalid-context error.
  bool insert(const Quad& q);
  /// Inserts every quad of `other`; returns the number of new quads.
  std::size_t merge(const QuadGraph& other);

  bool contains(const Quad& q) const { return set_.count(q) != 0; }
  std::size_t size() const { return quads_.size(); }
  bool empty() const { return quads_.empty(); }

  std::span<const Quad> quads() const { return quads_; }
  const Quad& at(std::uint32_t index) const { return quads_[index]; }

  /// graph_Q(c): the triples tagged with context `c`.
  std::vector<Triple> graph_of(Constant context) const;

  /// Contexts in use, sorted.
  std::vector<Constant> contexts() const;
  /// Distinct constants in any position, sorted.
  std::vector<Constant> constants() const;
  /// All quads in canonical order.
  std::vector<Quad> sorted() const;

  std::span<const std::uint32_t> by_context(Constant c) const;
  std::span<const std::uint32_t> by_subject(Constant c, Constant s) const;
  std::span<const std::uint32_t> by_predicate(Constant c, Constant p) const;
  std::span<const std::uint32_t> by_object(Constant c, Constant o) const;

  /// Set equality (insertion order is irrelevant).
  friend bool operator==(const QuadGraph& a, const QuadGraph& b);

 private:
  struct PairKey {
    Constant context;
    Constant term;
    friend bool operator==(const PairKey&, const PairKey&) = default;
  };
  struct PairHash {
    std::size_t operator()(const PairKey& k) const noexcept {
      std::hash<Constant> h;
      return h(k.context) * 31 + h(k.term);
    }
  };
  using PairIndex = std::unordered_map<PairKey, std::vector<std::uint32_t>, PairHash>;

  static std::span<const std::uint32_t> lookup(const PairIndex& index, Constant c, Constant t);

  std::vector<Quad> quads_;
  std::unordered_set<Quad, QuadHash> set_;
  std::unordered_map<Constant, std::vector<std::uint32_t>> by_context_;
  PairIndex by_subject_;
  PairIndex by_predicate_;
  PairIndex by_object_;
};

QuadGraph graph_union(const QuadGraph& a, const QuadGraph& b);

/// Free-function form of QuadGraph::graph_of; rejects non-IRI contexts.
std::vector<Triple> graph_of(const QuadGraph& q, Constant context);

/// Symbol size: four symbols per quad.
std::size_t size_of(const QuadGraph& q);

}  // namespace quadchase
