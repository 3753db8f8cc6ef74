#pragma once

#include <random>
#include <string>
#include <vector>

#include "quadchase/rules.hpp"
#include "quadchase/syntax.hpp"

namespace gen {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

/// Arbitrary constants: IRIs needing escapes, blanks, literals with
/// datatypes, language tags and control characters.
quadchase::Constant any_constant(Rng& rng);
quadchase::QuadGraph any_quadgraph(Rng& rng, std::size_t max_quads);

/// Graphs over a small vocabulary rich in rdfs:subClassOf, subPropertyOf,
/// domain, range and rdf:type, spread over `contexts` contexts.
quadchase::QuadGraph rdfs_quadgraph(Rng& rng, std::size_t max_quads, std::size_t contexts);
std::vector<quadchase::Triple> rdfs_triples(Rng& rng, std::size_t max_triples);

struct SystemShape {
  std::size_t contexts = 4;
  std::size_t rules = 4;
  std::size_t quads = 12;
  double constraint_probability = 0.08;
};

/// A random quad-system of the given shape; not necessarily acyclic.
quadchase::QuadSystem random_system(Rng& rng, const SystemShape& shape = {});

/// Boolean query of 1..max_atoms atoms. Half the time it is cut out of
/// `model` (constants partly replaced by variables), otherwise drawn from
/// the vocabulary of random_system.
quadchase::QueryDocument random_boolean_query(Rng& rng, const quadchase::QuadGraph& model, std::size_t contexts,
                                              std::size_t max_atoms);

}  // namespace gen
