#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadchase/quad.hpp"

namespace quadchase {

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfProperty = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsSubPropertyOf = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kRdfsResource = "http://www.w3.org/2000/01/rdf-schema#Resource";
}  // namespace vocab

/// A triple-level inference rule, for listing.
struct LocalRule {
  std::string id;
  std::string premises;
  std::string conclusion;
};

/// The per-context closure operator `lclosure`.
///
/// `simple` is the identity. `rdfs-core` is the rho-df fragment:
/// subClassOf and subPropertyOf transitivity and instantiation, domain and
/// range typing, plus optionally `(s,p,o) -> (o, rdf:type, rdfs:Resource)`.
/// Both are finite and polynomial.
class LocalSemantics {
 public:
  enum class Kind { kSimple, kRdfsCore };

  static LocalSemantics simple() { return LocalSemantics(Kind::kSimple, false); }
  static LocalSemantics rdfs_core(bool resource_rule = true) { return LocalSemantics(Kind::kRdfsCore, resource_rule); }
  /// `simple` or `rdfs-core`; throws kInvalidArgument otherwise.
  static LocalSemantics from_name(std::string_view name, bool resource_rule = true);

  Kind kind() const { return kind_; }
  std::string name() const;
  bool resource_rule() const { return resource_rule_; }
  bool is_identity() const { return kind_ == Kind::kSimple; }

  std::vector<LocalRule> rules() const;

  /// Closes `graph` in place, context by context. `delta` lists quads
  /// already in `graph` that have not been closed against it yet; the
  /// rest of `graph` is assumed closed. Returns the quads added.
  std::vector<Quad> close(QuadGraph& graph, std::span<const Quad> delta) const;

 private:
  LocalSemantics(Kind kind, bool resource_rule) : kind_(kind), resource_rule_(resource_rule) {}

  Kind kind_;
  bool resource_rule_;
};

/// lclosure(G) for a single graph.
std::vector<Triple> lclosure_graph(std::span<const Triple> g, const LocalSemantics& sem);

/// lclosure(Q): the context-wise lift.
QuadGraph lclosure_quadgraph(const QuadGraph& q, const LocalSemantics& sem);

}  // namespace quadchase
