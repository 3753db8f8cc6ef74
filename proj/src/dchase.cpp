#include "quadchase/dchase.hpp"

#include <chrono>

#include <json.hpp>

#include "quadchase/error.hpp"

namespace quadchase {

std::string to_string(ChaseStatus status) {
  switch (status) {
    case ChaseStatus::kComplete: return "complete";
    case ChaseStatus::kBudgetExhausted: return "budget-exhausted";
    case ChaseStatus::kInconsistent: return "inconsistent";
  }
  return "unknown";
}

ChaseStatus chase_status_from_string(std::string_view text) {
  if (text == "complete") return ChaseStatus::kComplete;
  if (text == "budget-exhausted") return ChaseStatus::kBudgetExhausted;
  if (text == "inconsistent") return ChaseStatus::kInconsistent;
  throw Error(ErrorCode::kInvalidArgument, "unknown chase status '" + std::string(text) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

class Driver {
 public:
  Driver(const QuadSystem& qs, const ChaseConfig& cfg) : qs_(qs), cfg_(cfg), skolem_(skolemize_all(qs.rules)) {
    for (const SkolemRule& r : skolem_) (r.is_generating() ? generating_ : plain_).push_back(&r);
    for (const BridgeRule& r : qs.rules) {
      if (r.is_constraint()) constraints_.push_back(r);
    }
  }

  ChaseResult run() {
    auto start = Clock::now();
    ChaseResult& res = result_;

    auto t0 = Clock::now();
    res.quads = qs_.quads;
    std::vector<Quad> initial(qs_.quads.quads().begin(), qs_.quads.quads().end());
    std::vector<Quad> closed = cfg_.semantics.close(res.quads, initial);
    IterationRecord zero;
    zero.rule_quads = initial.size();
    zero.closure_quads = closed.size();
    account(zero, initial);
    account(zero, closed);
    finish(zero, t0);

    if (check_violations()) return finalize(start);
    while (true) {
      auto t = Clock::now();
      std::vector<Quad> derived = derive_new(plain_, res.quads, cfg_.jobs);
      bool generating = false;
      if (derived.empty()) {
        derived = derive_new(generating_, res.quads, cfg_.jobs);
        generating = true;
      }
      if (derived.empty()) {
        // R_F adds nothing either: fixpoint. Record the vacuous generating
        // iteration; it is part of the schedule.
        IterationRecord vacuous;
        vacuous.index = res.iterations + 1;
        vacuous.generating = true;
        vacuous.total = res.quads.size();
        ++res.iterations;
        ++res.generating_iterations;
        res.generating_indices.push_back(vacuous.index);
        if (cfg_.record_log) res.log.push_back(std::move(vacuous));
        break;
      }
      if (cfg_.max_iterations && res.iterations >= *cfg_.max_iterations) {
        exhaust("iteration budget of " + std::to_string(*cfg_.max_iterations) + " reached");
        break;
      }
      if (generating && cfg_.max_generating_iterations &&
          res.generating_iterations >= *cfg_.max_generating_iterations) {
        exhaust("generating-iteration budget of " + std::to_string(*cfg_.max_generating_iterations) + " reached");
        break;
      }

      IterationRecord rec;
      rec.index = res.iterations + 1;
      rec.generating = generating;
      for (const Quad& q : derived) res.quads.insert(q);
      std::vector<Quad> extra = cfg_.semantics.close(res.quads, derived);
      rec.rule_quads = derived.size();
      rec.closure_quads = extra.size();
      account(rec, derived);
      account(rec, extra);
      ++res.iterations;
      if (generating) {
        ++res.generating_iterations;
        res.generating_indices.push_back(rec.index);
      }
      finish(rec, t);

      if (check_violations()) break;
      if (cfg_.max_quads && res.quads.size() > *cfg_.max_quads) {
        exhaust("quad budget of " + std::to_string(*cfg_.max_quads) + " exceeded (" +
                std::to_string(res.quads.size()) + " quads)");
        break;
      }
    }
    return finalize(start);
  }

 private:
  ChaseResult finalize(Clock::time_point start) {
    result_.seconds = elapsed(start);
    return std::move(result_);
  }

  void account(IterationRecord& rec, const std::vector<Quad>& quads) {
    for (const Quad& q : quads) {
      ++rec.per_context[q.context];
      result_.last_growth[q.context] = rec.index;
    }
    if (cfg_.record_deltas) rec.delta.insert(rec.delta.end(), quads.begin(), quads.end());
  }

  void finish(IterationRecord& rec, Clock::time_point t) {
    rec.total = result_.quads.size();
    rec.seconds = elapsed(t);
    if (cfg_.record_log) result_.log.push_back(std::move(rec));
  }

  void exhaust(std::string reason) {
    result_.status = ChaseStatus::kBudgetExhausted;
    result_.stop_reason = std::move(reason);
  }

  /// Returns true and marks the result inconsistent if a constraint fires.
  bool check_violations() {
    if (constraints_.empty()) return false;
    result_.violations = check_constraints(constraints_, result_.quads, cfg_.max_violations);
    if (result_.violations.empty()) return false;
    result_.status = ChaseStatus::kInconsistent;
    result_.stop_reason = "constraint " + result_.violations.front().rule_id + " violated";
    return true;
  }

  const QuadSystem& qs_;
  const ChaseConfig& cfg_;
  std::vector<SkolemRule> skolem_;
  std::vector<const SkolemRule*> plain_;
  std::vector<const SkolemRule*> generating_;
  std::vector<BridgeRule> constraints_;
  ChaseResult result_;
};

}  // namespace

ChaseResult dchase(const QuadSystem& qs, const ChaseConfig& cfg) {
  if (!cfg.has_budget() && !cfg.force) {
    AcyclicityVerdict verdict = check_context_acyclicity(ContextDependencyGraph::build(qs));
    if (!verdict.acyclic) {
      std::vector<std::string> cycle;
      for (Constant c : verdict.witness) cycle.push_back(c.is_iri() ? c.value() : c.canonical());
      throw NotContextAcyclicError(ErrorCode::kBudgetRequired,
                                   "the system is not context acyclic (cycle " + format_cycle(verdict.witness) +
                                       " passes through a TGC); the chase may not terminate. Set an iteration "
                                       "or quad budget, or force an unrestricted run",
                                   std::move(cycle));
    }
  }
  return Driver(qs, cfg).run();
}

bool entailment_closure_check(const ChaseResult& result, const QuadSystem& qs) {
  for (const SkolemRule& r : skolemize_all(qs.rules)) {
    bool satisfied = for_each_match(result.quads, r.body_atoms(), r.var_count(),
                                    [&](std::span<const Constant> binding) {
                                      return result.quads.contains(r.instantiate(binding));
                                    });
    if (!satisfied) return false;
  }
  return true;
}

SaturationReport saturation_report(const ChaseResult& result, const LevelMap& lm) {
  SaturationReport report;
  for (const auto& [context, level] : lm.level) {
    SaturationEntry e;
    e.context = context;
    e.level = level;
    auto growth = result.last_growth.find(context);
    e.last_growth = growth == result.last_growth.end() ? 0 : growth->second;
    if (level < result.generating_indices.size()) e.deadline = result.generating_indices[level];
    e.ok = !e.deadline || e.last_growth < *e.deadline;
    if (!e.ok) {
      report.schedule_ok = false;
      report.problems.push_back("level-" + std::to_string(level) + " context " + context.canonical() +
                                " grew in iteration " + std::to_string(e.last_growth) + ", not before generating " +
                                "iteration " + std::to_string(level + 1) + " (iteration " +
                                std::to_string(*e.deadline) + ")");
    }
    report.entries.push_back(e);
  }
  return report;
}

std::string chase_stats_json(const ChaseResult& result, const LevelMap* levels) {
  using nlohmann::ordered_json;
  auto name = [](Constant c) { return c.is_iri() ? c.value() : c.canonical(); };
  ordered_json doc;
  doc["status"] = to_string(result.status);
  if (!result.stop_reason.empty()) doc["stop_reason"] = result.stop_reason;
  doc["quads"] = result.quads.size();
  doc["iterations"] = result.iterations;
  doc["generating_iterations"] = result.generating_iterations;
  doc["seconds"] = result.seconds;
  doc["log"] = ordered_json::array();
  for (const IterationRecord& rec : result.log) {
    ordered_json entry;
    entry["index"] = rec.index;
    entry["kind"] = rec.index == 0 ? "initial" : (rec.generating ? "generating" : "non-generating");
    entry["rule_quads"] = rec.rule_quads;
    entry["closure_quads"] = rec.closure_quads;
    entry["new_quads"] = rec.new_quads();
    entry["total"] = rec.total;
    entry["seconds"] = rec.seconds;
    ordered_json per_context = ordered_json::object();
    for (const auto& [c, n] : rec.per_context) per_context[name(c)] = n;
    entry["per_context"] = per_context;
    doc["log"].push_back(entry);
  }
  ordered_json growth = ordered_json::object();
  for (const auto& [c, i] : result.last_growth) growth[name(c)] = i;
  doc["last_growth"] = growth;
  doc["violations"] = ordered_json::array();
  for (const Violation& v : result.violations) {
    ordered_json binding = ordered_json::object();
    for (const auto& [var, value] : v.binding.entries()) binding[var] = value.canonical();
    doc["violations"].push_back({{"rule", v.rule_id}, {"binding", binding}});
  }
  if (levels) {
    SaturationReport report = saturation_report(result, *levels);
    ordered_json sat = ordered_json::array();
    for (const SaturationEntry& e : report.entries) {
      ordered_json entry;
      entry["context"] = name(e.context);
      entry["level"] = e.level;
      entry["last_growth"] = e.last_growth;
      entry["deadline"] = e.deadline ? ordered_json(*e.deadline) : ordered_json(nullptr);
      entry["ok"] = e.ok;
      sat.push_back(entry);
    }
    doc["saturation"] = sat;
    doc["schedule_ok"] = report.schedule_ok;
    doc["predicted_generating_iterations"] = predicted_generating_iterations(*levels);
  }
  return doc.dump(2) + "\n";
}

std::string chase_header(const ChaseResult& result) {
  return "# quadchase dchase status=" + to_string(result.status) + " iterations=" + std::to_string(result.iterations) +
         " generating=" + std::to_string(result.generating_iterations) +
         " quads=" + std::to_string(result.quads.size()) + "\n";
}

}  // namespace quadchase
