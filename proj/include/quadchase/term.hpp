#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quadchase {

enum class TermKind : std::uint8_t { kIri, kBlank, kSkolemBlank, kLiteral };

std::string_view to_string(TermKind kind);

class Constant;

namespace detail {
struct TermNode;
}

/// Skolem provenance of a skolem blank node. `args` is empty and
/// `args_known` false when the label was read back from a file rather than
/// produced by a rule application.
struct SkolemInfo {
  std::string rule_id;
  std::size_t fn_index = 0;
  std::uint64_t arg_hash = 0;
  std::vector<Constant> args;
  bool args_known = false;
};

/// An interned RDF constant (IRI, blank node, skolem blank node or literal).
///
/// Constants are handles into a process-wide, append-only intern table keyed
/// by the canonical N-Quads serialization, so two constants are equal exactly
/// when their canonical forms are byte-equal, and equality is a pointer
/// comparison. Ordering is the byte order of the canonical forms, which keeps
/// every sorted output independent of interning order.
///
/// Blank labels of the shape `sk_<rule>_<index>_<16 hex>` are reserved for
/// skolem blank nodes and are classified as such when parsed.
class Constant {
 public:
  Constant() = default;

  static Constant iri(std::string_view iri);
  static Constant blank(std::string_view label);
  static Constant literal(std::string_view lexical, std::string_view datatype = {},
                          std::string_view language = {});

  /// Parses exactly one term in N-Quads syntax (surrounding blanks allowed).
  static Constant parse(std::string_view text);

  explicit operator bool() const noexcept { return node_ != nullptr; }

  TermKind kind() const;
  bool is_iri() const { return kind() == TermKind::kIri; }
  bool is_literal() const { return kind() == TermKind::kLiteral; }
  /// True for plain and skolem blank nodes alike.
  bool is_blank() const {
    auto k = kind();
    return k == TermKind::kBlank || k == TermKind::kSkolemBlank;
  }
  bool is_skolem() const { return kind() == TermKind::kSkolemBlank; }

  /// Canonical N-Quads form, e.g. `<http://x>`, `_:b0`, `"v"^^<dt>`.
  const std::string& canonical() const;
  /// IRI text, blank label (without `_:`) or literal lexical form.
  const std::string& value() const;
  const std::string& datatype() const;
  const std::string& language() const;
  /// Non-null only for skolem blank nodes.
  const SkolemInfo* skolem() const;

  std::uint64_t id() const;

  friend bool operator==(Constant a, Constant b) noexcept { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Constant a, Constant b);

 private:
  friend struct detail::TermNode;
  friend Constant intern_skolem(const std::string& label, const std::string& rule_id,
                                std::size_t fn_index, std::uint64_t hash,
                                std::span<const Constant> args);
  explicit Constant(const detail::TermNode* node) : node_(node) {}

  const detail::TermNode* node_ = nullptr;
};

/// Interns a skolem blank node with full provenance. Raises an internal error
/// when `label` is already bound to a different argument vector (a hash
/// collision). Prefer `skolem_constant` from rules.hpp.
Constant intern_skolem(const std::string& label, const std::string& rule_id, std::size_t fn_index,
                       std::uint64_t hash, std::span<const Constant> args);

/// Number of distinct constants interned so far.
std::size_t interned_constant_count();

std::string escape_iri(std::string_view iri);
std::string escape_literal(std::string_view lexical);

struct Variable {
  std::string name;  // without the leading '?'

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// A pattern position: either a constant or a variable.
class Term {
 public:
  Term(Constant c) : value_(c) {}  // NOLINT(google-explicit-constructor)
  Term(Variable v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static Term var(std::string name) { return Term(Variable{std::move(name)}); }

  bool is_variable() const { return std::holds_alternative<Variable>(value_); }
  bool is_constant() const { return std::holds_alternative<Constant>(value_); }
  Constant constant() const { return std::get<Constant>(value_); }
  const Variable& variable() const { return std::get<Variable>(value_); }

  /// `?name` for variables, canonical form for constants.
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::variant<Constant, Variable> value_;
};

}  // namespace quadchase

template <>
struct std::hash<quadchase::Constant> {
  std::size_t operator()(quadchase::Constant c) const noexcept {
    std::uint64_t x = c.id() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};
