#include "quadchase/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <unordered_set>

#include "quadchase/error.hpp"

namespace quadchase {

namespace {

void collect_vars(const std::vector<QuadPattern>& patterns, std::vector<std::string>& out) {
  for (const QuadPattern& p : patterns) {
    for (const std::string& v : p.variables()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void validate_pattern(const std::string& rule_id, const QuadPattern& p) {
  if (!p.context || !p.context.is_iri()) {
    throw Error(ErrorCode::kInvalidArgument,
                "rule " + rule_id + ": context must be an IRI, got " + p.context.canonical());
  }
  for (const Term& t : p.terms) {
    if (t.is_constant() && t.constant().is_blank()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rule " + rule_id + ": blank node " + t.constant().canonical() + " in pattern");
    }
    if (t.is_variable() && t.variable().name.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "rule " + rule_id + ": empty variable name");
    }
  }
}

std::string join_patterns(const std::vector<QuadPattern>& patterns) {
  std::string out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (i) out += ", ";
    out += quadchase::to_string(patterns[i]);
  }
  return out;
}

}  // namespace

bool is_valid_rule_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
           ch == '-';
  });
}

BridgeRule::BridgeRule(std::string id, std::vector<QuadPattern> body, std::vector<QuadPattern> head)
    : id_(std::move(id)), body_(std::move(body)), head_(std::move(head)) {
  if (!is_valid_rule_id(id_)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid rule id '" + id_ + "' (allowed: letters, digits, '_', '-')");
  }
  if (body_.empty()) throw Error(ErrorCode::kInvalidArgument, "rule " + id_ + ": empty body");
  for (const QuadPattern& p : body_) validate_pattern(id_, p);
  for (const QuadPattern& p : head_) validate_pattern(id_, p);

  std::vector<std::string> body_vars;
  std::vector<std::string> head_vars;
  collect_vars(body_, body_vars);
  collect_vars(head_, head_vars);
  for (const std::string& v : body_vars) {
    (contains(head_vars, v) ? frontier_ : body_only_).push_back(v);
  }
  for (const std::string& v : head_vars) {
    if (!contains(body_vars, v)) existentials_.push_back(v);
  }
}

std::string BridgeRule::to_string() const {
  std::string out = id_ + ": " + join_patterns(body_) + " ->";
  if (!head_.empty()) out += " " + join_patterns(head_);
  out += " .";
  return out;
}

std::size_t size_of(const BridgeRule& r) { return 4 * (r.body().size() + r.head().size()); }

std::size_t size_of(const QuadSystem& qs) {
  std::size_t total = size_of(qs.quads);
  for (const BridgeRule& r : qs.rules) total += size_of(r);
  return total;
}

// ---------------------------------------------------------------------------
// Skolemization

bool SkolemRule::is_generating() const {
  return std::any_of(head_slots_.begin(), head_slots_.end(),
                     [](const HeadSlot& s) { return s.kind == HeadSlot::Kind::kSkolem; });
}

Quad SkolemRule::instantiate(std::span<const Constant> binding) const {
  Constant values[3];
  std::vector<Constant> args;
  for (std::size_t k = 0; k < 3; ++k) {
    const HeadSlot& slot = head_slots_[k];
    switch (slot.kind) {
      case HeadSlot::Kind::kConstant: values[k] = slot.value; break;
      case HeadSlot::Kind::kVariable: values[k] = binding[slot.var]; break;
      case HeadSlot::Kind::kSkolem:
        if (args.empty() && !frontier_vars_.empty()) {
          args.reserve(frontier_vars_.size());
          for (std::uint32_t v : frontier_vars_) args.push_back(binding[v]);
        }
        values[k] = skolem_constant(origin_, slot.fn_index, args);
        break;
    }
  }
  return Quad{head_.context, values[0], values[1], values[2]};
}

std::size_t SkolemRule::symbol_size() const {
  std::size_t size = 4 * body_.size() + 1;
  for (const HeadSlot& s : head_slots_) size += s.kind == HeadSlot::Kind::kSkolem ? 1 + frontier_.size() : 1;
  return size;
}

std::string SkolemRule::to_string() const {
  std::string frontier_list;
  for (std::size_t i = 0; i < frontier_.size(); ++i) {
    if (i) frontier_list += ", ";
    frontier_list += "?" + frontier_[i];
  }
  std::string head = head_.context.canonical() + "(";
  for (std::size_t k = 0; k < 3; ++k) {
    if (k) head += ", ";
    const HeadSlot& s = head_slots_[k];
    if (s.kind == HeadSlot::Kind::kSkolem) {
      head += "sk_" + origin_ + "_" + std::to_string(s.fn_index) + "(" + frontier_list + ")";
    } else {
      head += head_.terms[k].to_string();
    }
  }
  head += ")";
  return id_ + ": " + join_patterns(body_) + " -> " + head + " .";
}

std::vector<SkolemRule> skolemize(const BridgeRule& r) {
  if (r.is_constraint()) {
    throw Error(ErrorCode::kInvalidArgument, "rule " + r.id() + " is a constraint and has no skolemization");
  }
  std::vector<SkolemRule> out;
  out.reserve(r.head().size());
  for (std::size_t h = 0; h < r.head().size(); ++h) {
    SkolemRule sr;
    sr.id_ = r.head().size() == 1 ? r.id() : r.id() + "/" + std::to_string(h);
    sr.origin_ = r.id();
    sr.head_index_ = h;
    sr.body_ = r.body();
    sr.head_ = r.head()[h];
    sr.frontier_ = r.frontier();
    sr.existentials_ = r.existentials();
    for (const QuadPattern& p : sr.body_) sr.atoms_.push_back(sr.vars_.compile(p));
    for (const std::string& x : sr.frontier_) sr.frontier_vars_.push_back(*sr.vars_.find(x));
    for (std::size_t k = 0; k < 3; ++k) {
      const Term& t = sr.head_.terms[k];
      HeadSlot& slot = sr.head_slots_[k];
      if (t.is_constant()) {
        slot.kind = HeadSlot::Kind::kConstant;
        slot.value = t.constant();
        continue;
      }
      const std::string& name = t.variable().name;
      auto ex = std::find(sr.existentials_.begin(), sr.existentials_.end(), name);
      if (ex != sr.existentials_.end()) {
        slot.kind = HeadSlot::Kind::kSkolem;
        slot.fn_index = static_cast<std::size_t>(ex - sr.existentials_.begin());
      } else {
        slot.kind = HeadSlot::Kind::kVariable;
        slot.var = *sr.vars_.find(name);
      }
    }
    out.push_back(std::move(sr));
  }
  return out;
}

std::vector<SkolemRule> skolemize_all(std::span<const BridgeRule> rules) {
  std::vector<SkolemRule> out;
  for (const BridgeRule& r : rules) {
    if (r.is_constraint()) continue;
    for (SkolemRule& sr : skolemize(r)) out.push_back(std::move(sr));
  }
  return out;
}

std::uint64_t skolem_hash(std::span<const Constant> args) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](unsigned char byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) mix(0x1F);
    for (char ch : args[i].canonical()) mix(static_cast<unsigned char>(ch));
  }
  return hash;
}

Constant skolem_constant(const std::string& rule_id, std::size_t fn_index, std::span<const Constant> args) {
  std::uint64_t hash = skolem_hash(args);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  std::string label = "sk_" + rule_id + "_" + std::to_string(fn_index) + "_" + hex;
  return intern_skolem(label, rule_id, fn_index, hash, args);
}

// ---------------------------------------------------------------------------
// Application

QuadGraph apply_rule(const SkolemRule& r, const QuadGraph& q) {
  std::vector<Quad> produced;
  for_each_match(q, r.body_atoms(), r.var_count(), [&](std::span<const Constant> binding) {
    produced.push_back(r.instantiate(binding));
    return true;
  });
  QuadGraph out;
  for (const Quad& quad : produced) out.insert(quad);
  return out;
}

QuadGraph apply_ruleset(std::span<const SkolemRule> rules, const QuadGraph& q) {
  QuadGraph out;
  for (const SkolemRule& r : rules) out.merge(apply_rule(r, q));
  return out;
}

namespace {

std::vector<Quad> derive_one(const SkolemRule& r, const QuadGraph& q) {
  std::vector<Quad> out;
  std::unordered_set<Quad, QuadHash> seen;
  for_each_match(q, r.body_atoms(), r.var_count(), [&](std::span<const Constant> binding) {
    Quad head = r.instantiate(binding);
    if (!q.contains(head) && seen.insert(head).second) out.push_back(head);
    return true;
  });
  return out;
}

}  // namespace

std::vector<Quad> derive_new(std::span<const SkolemRule* const> rules, const QuadGraph& q, unsigned jobs) {
  std::vector<std::vector<Quad>> per_rule(rules.size());
  if (jobs <= 1 || rules.size() <= 1) {
    for (std::size_t i = 0; i < rules.size(); ++i) per_rule[i] = derive_one(*rules[i], q);
  } else {
    std::size_t workers = std::min<std::size_t>(jobs, rules.size());
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < rules.size(); i += workers) per_rule[i] = derive_one(*rules[i], q);
      }));
    }
    for (auto& t : tasks) t.get();
  }
  std::vector<Quad> merged;
  std::unordered_set<Quad, QuadHash> seen;
  for (auto& batch : per_rule) {
    for (const Quad& quad : batch) {
      if (seen.insert(quad).second) merged.push_back(quad);
    }
  }
  return merged;
}

std::vector<Violation> check_constraints(std::span<const BridgeRule> constraints, const QuadGraph& q,
                                         std::size_t limit) {
  std::vector<Violation> out;
  for (const BridgeRule& c : constraints) {
    if (!c.is_constraint()) continue;
    VariableTable vars;
    std::vector<AtomPattern> atoms;
    for (const QuadPattern& p : c.body()) atoms.push_back(vars.compile(p));
    bool keep = for_each_match(q, atoms, vars.size(), [&](std::span<const Constant> binding) {
      Violation v{c.id(), {}};
      for (std::size_t i = 0; i < vars.size(); ++i) v.binding.bind(vars.names()[i], binding[i]);
      out.push_back(std::move(v));
      return limit == 0 || out.size() < limit;
    });
    if (!keep) break;
  }
  return out;
}

}  // namespace quadchase
