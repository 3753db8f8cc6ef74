#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadchase/context_graph.hpp"
#include "quadchase/local_semantics.hpp"
#include "quadchase/rules.hpp"

namespace quadchase {

struct ChaseConfig {
  LocalSemantics semantics = LocalSemantics::simple();
  /// Bounds on non-vacuous iterations, on the dChase size and on the number
  /// of generating iterations that derive something.
  std::optional<std::size_t> max_iterations;
  std::optional<std::size_t> max_quads;
  std::optional<std::size_t> max_generating_iterations;
  /// Run a non-context-acyclic system without any budget.
  bool force = false;
  bool record_log = true;
  /// Keep the quads added by each iteration in the log.
  bool record_deltas = false;
  /// Worker threads for rule matching within an iteration.
  unsigned jobs = 1;
  /// Stop collecting violations after this many (0 = all).
  std::size_t max_violations = 16;

  bool has_budget() const { return max_iterations || max_quads || max_generating_iterations; }
};

enum class ChaseStatus { kComplete, kBudgetExhausted, kInconsistent };

std::string to_string(ChaseStatus status);
/// Inverse of to_string; throws kInvalidArgument.
ChaseStatus chase_status_from_string(std::string_view text);

struct IterationRecord {
  /// 0 is dChase_0 = lclosure(Q); i >= 1 produces dChase_i.
  std::size_t index = 0;
  bool generating = false;
  /// Quads contributed by the rule application and by the closure after it.
  std::size_t rule_quads = 0;
  std::size_t closure_quads = 0;
  std::size_t total = 0;
  double seconds = 0;
  /// New quads per context.
  std::map<Constant, std::size_t> per_context;
  std::vector<Quad> delta;  // only with record_deltas

  std::size_t new_quads() const { return rule_quads + closure_quads; }
};

struct ChaseResult {
  QuadGraph quads;
  ChaseStatus status = ChaseStatus::kComplete;
  std::string stop_reason;
  std::vector<IterationRecord> log;
  /// Iterations after dChase_0, including a final vacuous generating one.
  std::size_t iterations = 0;
  /// Generating iterations, including the final vacuous one.
  std::size_t generating_iterations = 0;
  std::vector<Violation> violations;
  /// Last iteration in which each context gained quads (0 = dChase_0).
  std::map<Constant, std::size_t> last_growth;
  /// Iteration index of the k-th generating iteration (k = 1, 2, ...).
  std::vector<std::size_t> generating_indices;
  double seconds = 0;
};

/// Runs the distributed chase.
///
/// dChase_0 = lclosure(Q). Each following iteration applies the
/// non-generating rules R_I if they add anything, otherwise the generating
/// rules R_F, and closes the result under the local semantics. Constraints
/// are checked after every closure. Stops at the fixpoint, on a budget, or
/// on the first violated constraint.
///
/// A system that is not context acyclic is refused with kBudgetRequired
/// unless a budget or `force` is set.
ChaseResult dchase(const QuadSystem& qs, const ChaseConfig& cfg = {});

/// True iff every skolemized rule is satisfied by `result.quads`: every
/// grounding of its body has its head instance present.
bool entailment_closure_check(const ChaseResult& result, const QuadSystem& qs);

struct SaturationEntry {
  Constant context;
  std::size_t level = 0;
  std::size_t last_growth = 0;
  /// Iteration index of the (level+1)-th generating iteration, if any.
  std::optional<std::size_t> deadline;
  bool ok = true;
};

struct SaturationReport {
  std::vector<SaturationEntry> entries;
  bool schedule_ok = true;
  std::vector<std::string> problems;
};

/// Checks that each level-k context stopped growing before the (k+1)-th
/// generating iteration.
SaturationReport saturation_report(const ChaseResult& result, const LevelMap& lm);

/// Stats document: status, counts, iteration log and, when `levels` is
/// given, per-context saturation.
std::string chase_stats_json(const ChaseResult& result, const LevelMap* levels = nullptr);

/// One-line comment written at the top of a serialized dChase, e.g.
/// `# quadchase dchase status=complete iterations=3 generating=1 quads=12`.
std::string chase_header(const ChaseResult& result);

}  // namespace quadchase
