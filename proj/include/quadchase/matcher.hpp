#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "quadchase/quad.hpp"

namespace quadchase {

/// A compiled pattern position: a constant or a variable index.
struct Slot {
  Constant value;
  std::uint32_t var = 0;
  bool is_var = false;

  static Slot constant(Constant c) { return {c, 0, false}; }
  static Slot variable(std::uint32_t index) { return {Constant(), index, true}; }
};

struct AtomPattern {
  Constant context;
  std::array<Slot, 3> slots;
};

/// Assigns dense indices to variable names in order of first appearance.
class VariableTable {
 public:
  std::uint32_t index_of(const std::string& name);
  std::optional<std::uint32_t> find(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  AtomPattern compile(const QuadPattern& pattern);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Receives one complete binding (indexed by variable); return false to stop.
using MatchVisitor = std::function<bool(std::span<const Constant>)>;

/// Enumerates every assignment of the variables `[0, var_count)` that maps
/// all atoms into `graph`.
///
/// Backtracking join: at each depth the remaining atom with the fewest
/// candidate quads under the current bindings is expanded next, using the
/// narrowest of the subject/predicate/object indexes available. The set of
/// reported bindings does not depend on this ordering. Variables that occur
/// in no atom stay null. Returns false if the visitor stopped the search.
/// The visitor must not modify `graph` while the search runs.
bool for_each_match(const QuadGraph& graph, std::span<const AtomPattern> atoms, std::size_t var_count,
                    const MatchVisitor& visit);

/// True iff at least one match exists.
bool has_match(const QuadGraph& graph, std::span<const AtomPattern> atoms, std::size_t var_count);

}  // namespace quadchase
