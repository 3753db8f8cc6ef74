#pragma once

// Small builders shared by the encoders. Internal to the library.

#include <string>
#include <string_view>
#include <vector>

#include "quadchase/local_semantics.hpp"
#include "quadchase/quad.hpp"

namespace quadchase::detail {

inline Constant iri(std::string_view name) { return Constant::iri(name); }
inline Term var(std::string name) { return Term::var(std::move(name)); }
inline Term rdf_type() { return Constant::iri(vocab::kRdfType); }

inline QuadPattern pat(Constant c, Term s, Term p, Term o) {
  return QuadPattern(c, std::move(s), std::move(p), std::move(o));
}

/// True for names made of ASCII letters, digits and '_'.
bool is_symbol_name(std::string_view name);

/// Splits on whitespace, dropping everything from `#` on.
std::vector<std::string> tokens(std::string_view line);

}  // namespace quadchase::detail
