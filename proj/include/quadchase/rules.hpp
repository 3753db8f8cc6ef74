#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadchase/matcher.hpp"
#include "quadchase/quad.hpp"

namespace quadchase {

/// A forall-existential bridge rule `body -> exists y. head`.
///
/// Variables are partitioned into frontier (body and head), existential
/// (head only) and body-only variables, each listed in order of first
/// occurrence scanning body then head left to right. An empty head makes the
/// rule a constraint: any match of its body is an inconsistency.
class BridgeRule {
 public:
  /// Validates and classifies. Throws kInvalidArgument on blank nodes in
  /// patterns, non-IRI contexts, an empty body or a malformed id.
  BridgeRule(std::string id, std::vector<QuadPattern> body, std::vector<QuadPattern> head);

  const std::string& id() const { return id_; }
  const std::vector<QuadPattern>& body() const { return body_; }
  const std::vector<QuadPattern>& head() const { return head_; }
  const std::vector<std::string>& frontier() const { return frontier_; }
  const std::vector<std::string>& existentials() const { return existentials_; }
  const std::vector<std::string>& body_only() const { return body_only_; }

  bool is_constraint() const { return head_.empty(); }

  /// Rule-file syntax, e.g. `r1: <c1>(?x, <p>, ?y) -> <c2>(?x, <q>, ?z) .`
  std::string to_string() const;

 private:
  std::string id_;
  std::vector<QuadPattern> body_;
  std::vector<QuadPattern> head_;
  std::vector<std::string> frontier_;
  std::vector<std::string> existentials_;
  std::vector<std::string> body_only_;
};

bool is_valid_rule_id(std::string_view id);

std::size_t size_of(const BridgeRule& r);

/// A quad-graph together with its bridge rules.
struct QuadSystem {
  QuadGraph quads;
  std::vector<BridgeRule> rules;
};

std::size_t size_of(const QuadSystem& qs);

/// One position of a skolemized head: a constant, a frontier variable or the
/// skolem function `f_i^r` applied to the full frontier vector.
struct HeadSlot {
  enum class Kind : std::uint8_t { kConstant, kVariable, kSkolem };
  Kind kind = Kind::kConstant;
  Constant value;
  std::uint32_t var = 0;
  std::size_t fn_index = 0;
};

/// A single-head skolemized rule, compiled for matching.
class SkolemRule {
 public:
  const std::string& id() const { return id_; }
  const std::string& origin() const { return origin_; }
  std::size_t head_index() const { return head_index_; }
  const std::vector<QuadPattern>& body() const { return body_; }
  const QuadPattern& head() const { return head_; }
  const std::vector<std::string>& frontier() const { return frontier_; }
  const std::vector<std::string>& existentials() const { return existentials_; }

  /// True when the head carries at least one skolem term (member of R_F).
  bool is_generating() const;

  std::span<const AtomPattern> body_atoms() const { return atoms_; }
  std::size_t var_count() const { return vars_.size(); }
  const std::array<HeadSlot, 3>& head_slots() const { return head_slots_; }

  /// Head instance for a complete body binding; skolem terms are evaluated
  /// with `skolem_constant`.
  Quad instantiate(std::span<const Constant> binding) const;

  /// Symbol size: 4 per body pattern, and for the head 1 per plain position
  /// plus `1 + |frontier|` per skolem term.
  std::size_t symbol_size() const;

  /// Display form with skolem terms written `sk_<rule>_<i>(?x1, ...)`.
  std::string to_string() const;

 private:
  friend std::vector<SkolemRule> skolemize(const BridgeRule& r);

  std::string id_;
  std::string origin_;
  std::size_t head_index_ = 0;
  std::vector<QuadPattern> body_;
  QuadPattern head_{Constant(), Term(Constant()), Term(Constant()), Term(Constant())};
  std::vector<std::string> frontier_;
  std::vector<std::string> existentials_;
  VariableTable vars_;
  std::vector<AtomPattern> atoms_;
  std::array<HeadSlot, 3> head_slots_{};
  std::vector<std::uint32_t> frontier_vars_;
};

/// sk(r) in single-head normal form: one SkolemRule per head atom, each
/// existential `y_i` replaced by `f_i^r(x)` over the whole frontier. Throws
/// kInvalidArgument for constraint rules, which are never skolemized.
std::vector<SkolemRule> skolemize(const BridgeRule& r);

/// Skolemizes every non-constraint rule, preserving rule order.
std::vector<SkolemRule> skolemize_all(std::span<const BridgeRule> rules);

/// FNV-1a 64 over the canonical forms of `args` joined by 0x1F.
std::uint64_t skolem_hash(std::span<const Constant> args);

/// The skolem blank node `_:sk_<rule-id>_<fn-index>_<hex64>`. Deterministic;
/// a label reused for a different argument vector raises an internal error.
Constant skolem_constant(const std::string& rule_id, std::size_t fn_index, std::span<const Constant> args);

/// r(Q): every head instance over all bindings of the body into `q`.
QuadGraph apply_rule(const SkolemRule& r, const QuadGraph& q);

/// R(Q) = union of r(Q) over the rules.
QuadGraph apply_ruleset(std::span<const SkolemRule> rules, const QuadGraph& q);

/// Head instances of `rules` over `q` that are not yet in `q`, deduplicated
/// and in deterministic order (rule order, then match order). With
/// `jobs > 1` rules are matched on worker threads and merged in rule order.
std::vector<Quad> derive_new(std::span<const SkolemRule* const> rules, const QuadGraph& q, unsigned jobs = 1);

struct Violation {
  std::string rule_id;
  Substitution binding;
};

/// Every grounding of a constraint body into `q`. Non-constraint rules in
/// the input are ignored. `limit` caps the number reported (0 = no cap).
std::vector<Violation> check_constraints(std::span<const BridgeRule> constraints, const QuadGraph& q,
                                         std::size_t limit = 0);

}  // namespace quadchase
