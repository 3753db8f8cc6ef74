#include "quadchase/matcher.hpp"

#include <limits>

namespace quadchase {

std::uint32_t VariableTable::index_of(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  auto index = static_cast<std::uint32_t>(names_.size());
  names_.push_back(name);
  index_.emplace(name, index);
  return index;
}

std::optional<std::uint32_t> VariableTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomPattern VariableTable::compile(const QuadPattern& pattern) {
  AtomPattern atom;
  atom.context = pattern.context;
  for (std::size_t i = 0; i < 3; ++i) {
    const Term& t = pattern.terms[i];
    atom.slots[i] = t.is_variable() ? Slot::variable(index_of(t.variable().name)) : Slot::constant(t.constant());
  }
  return atom;
}

namespace {

class Search {
 public:
  Search(const QuadGraph& graph, std::span<const AtomPattern> atoms, std::size_t var_count,
         const MatchVisitor& visit)
      : graph_(graph), atoms_(atoms), binding_(var_count), done_(atoms.size(), false), visit_(visit) {}

  bool run() { return expand(0); }

 private:
  Constant resolve(const Slot& s) const { return s.is_var ? binding_[s.var] : s.value; }

  /// Narrowest candidate list for `atom`; `exact` is set when every position
  /// is fixed and the answer is a plain membership test.
  std::span<const std::uint32_t> candidates(const AtomPattern& atom, bool& exact, bool& present) const {
    Constant s = resolve(atom.slots[0]);
    Constant p = resolve(atom.slots[1]);
    Constant o = resolve(atom.slots[2]);
    exact = s && p && o;
    if (exact) {
      present = graph_.contains(Quad{atom.context, s, p, o});
      return {};
    }
    std::span<const std::uint32_t> best = graph_.by_context(atom.context);
    auto consider = [&best](std::span<const std::uint32_t> c) {
      if (c.size() < best.size()) best = c;
    };
    if (s) consider(graph_.by_subject(atom.context, s));
    if (p) consider(graph_.by_predicate(atom.context, p));
    if (o) consider(graph_.by_object(atom.context, o));
    return best;
  }

  bool expand(std::size_t depth) {
    if (depth == atoms_.size()) return visit_(binding_);

    std::size_t chosen = atoms_.size();
    std::size_t best_estimate = std::numeric_limits<std::size_t>::max();
    std::span<const std::uint32_t> chosen_candidates;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (done_[i]) continue;
      bool exact = false;
      bool present = false;
      auto c = candidates(atoms_[i], exact, present);
      std::size_t estimate = exact ? (present ? 1 : 0) : c.size();
      if (estimate == 0) return true;  // dead end
      if (exact) {
        // A satisfied ground atom constrains nothing further.
        done_[i] = true;
        bool keep_going = expand(depth + 1);
        done_[i] = false;
        return keep_going;
      }
      if (estimate < best_estimate) {
        best_estimate = estimate;
        chosen = i;
        chosen_candidates = c;
      }
    }

    const AtomPattern& atom = atoms_[chosen];
    done_[chosen] = true;
    for (std::uint32_t index : chosen_candidates) {
      const Quad& q = graph_.at(index);
      const Constant values[3] = {q.subject, q.predicate, q.object};
      std::uint32_t newly_bound[3];
      std::size_t bound_count = 0;
      bool ok = true;
      for (std::size_t k = 0; k < 3 && ok; ++k) {
        const Slot& slot = atom.slots[k];
        if (!slot.is_var) {
          ok = slot.value == values[k];
        } else if (binding_[slot.var]) {
          ok = binding_[slot.var] == values[k];
        } else {
          binding_[slot.var] = values[k];
          newly_bound[bound_count++] = slot.var;
        }
      }
      bool keep_going = true;
      if (ok) keep_going = expand(depth + 1);
      for (std::size_t k = 0; k < bound_count; ++k) binding_[newly_bound[k]] = Constant();
      if (!keep_going) {
        done_[chosen] = false;
        return false;
      }
    }
    done_[chosen] = false;
    return true;
  }

  const QuadGraph& graph_;
  std::span<const AtomPattern> atoms_;
  std::vector<Constant> binding_;
  std::vector<bool> done_;
  const MatchVisitor& visit_;
};

}  // namespace

bool for_each_match(const QuadGraph& graph, std::span<const AtomPattern> atoms, std::size_t var_count,
                    const MatchVisitor& visit) {
  Search search(graph, atoms, var_count, visit);
  return search.run();
}

bool has_match(const QuadGraph& graph, std::span<const AtomPattern> atoms, std::size_t var_count) {
  bool found = false;
  for_each_match(graph, atoms, var_count, [&found](std::span<const Constant>) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace quadchase
