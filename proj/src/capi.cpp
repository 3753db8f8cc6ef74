#include "quadchase/quadchase.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>

#include <json.hpp>

#include "quadchase/ccq.hpp"
#include "quadchase/context_graph.hpp"
#include "quadchase/dchase.hpp"
#include "quadchase/error.hpp"
#include "quadchase/reductions.hpp"
#include "quadchase/syntax.hpp"

using namespace quadchase;

struct qc_system {
  QuadSystem qs;
};

struct qc_chase {
  ChaseResult result;
  std::optional<LevelMap> levels;
};

struct qc_query {
  QueryDocument doc;
};

namespace {

thread_local std::string g_last_error;

qc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return QC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return QC_ERR_PARSE;
    case ErrorCode::kInvalidContext: return QC_ERR_INVALID_CONTEXT;
    case ErrorCode::kIo: return QC_ERR_IO;
    case ErrorCode::kBudgetRequired: return QC_ERR_BUDGET_REQUIRED;
    case ErrorCode::kNotContextAcyclic: return QC_ERR_NOT_CONTEXT_ACYCLIC;
    case ErrorCode::kLimitExceeded: return QC_ERR_LIMIT_EXCEEDED;
    case ErrorCode::kInternal: return QC_ERR_INTERNAL;
  }
  return QC_ERR_INTERNAL;
}

template <typename F>
qc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QC_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::string plain(Constant c) { return c.is_iri() ? c.value() : c.canonical(); }

std::string join_names(const std::vector<Constant>& cs) {
  if (cs.empty()) return "none";
  std::string out;
  for (Constant c : cs) out += (out.empty() ? "" : ", ") + plain(c);
  return out;
}

void add_rules(QuadSystem& qs, std::string_view text) {
  RuleDocument doc = parse_rules(text);
  for (const BridgeRule& r : qs.rules) {
    for (const BridgeRule& added : doc.rules) {
      if (r.id() == added.id()) throw Error(ErrorCode::kParse, "duplicate rule id '" + r.id() + "'");
    }
  }
  qs.rules.insert(qs.rules.end(), doc.rules.begin(), doc.rules.end());
}

}  // namespace

extern "C" {

const char* qc_version(void) { return "0.1.0"; }

const char* qc_last_error(void) { return g_last_error.c_str(); }

const char* qc_status_name(qc_status status) {
  switch (status) {
    case QC_OK: return "ok";
    case QC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QC_ERR_PARSE: return "parse error";
    case QC_ERR_INVALID_CONTEXT: return "invalid context";
    case QC_ERR_IO: return "i/o error";
    case QC_ERR_BUDGET_REQUIRED: return "budget required";
    case QC_ERR_NOT_CONTEXT_ACYCLIC: return "not context acyclic";
    case QC_ERR_LIMIT_EXCEEDED: return "limit exceeded";
    case QC_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void qc_string_free(char* s) { std::free(s); }

qc_status qc_system_new(qc_system** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qc_system();
  });
}

void qc_system_free(qc_system* sys) { delete sys; }

qc_status qc_system_load_quads(qc_system* sys, const char* path, int strict) {
  return guarded([&] {
    require(sys, "sys");
    require(path, "path");
    NQuadsOptions opts;
    opts.strict = strict != 0;
    parse_nquads_into(sys->qs.quads, read_file(path), opts);
  });
}

qc_status qc_system_add_quads_text(qc_system* sys, const char* text, int strict) {
  return guarded([&] {
    require(sys, "sys");
    require(text, "text");
    NQuadsOptions opts;
    opts.strict = strict != 0;
    parse_nquads_into(sys->qs.quads, text, opts);
  });
}

qc_status qc_system_load_rules(qc_system* sys, const char* path) {
  return guarded([&] {
    require(sys, "sys");
    require(path, "path");
    add_rules(sys->qs, read_file(path));
  });
}

qc_status qc_system_add_rules_text(qc_system* sys, const char* text) {
  return guarded([&] {
    require(sys, "sys");
    require(text, "text");
    add_rules(sys->qs, text);
  });
}

qc_status qc_system_counts(const qc_system* sys, size_t* quads, size_t* rules, size_t* contexts) {
  return guarded([&] {
    require(sys, "sys");
    if (quads) *quads = sys->qs.quads.size();
    if (rules) *rules = sys->qs.rules.size();
    if (contexts) *contexts = ContextDependencyGraph::build(sys->qs).nodes().size();
  });
}

qc_status qc_system_rules_text(const qc_system* sys, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = dup(serialize_rules(sys->qs.rules));
  });
}

qc_status qc_system_deps_json(const qc_system* sys, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = dup(to_json(ContextDependencyGraph::build(sys->qs)));
  });
}

qc_status qc_system_deps_dot(const qc_system* sys, char** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    *out = dup(to_dot(ContextDependencyGraph::build(sys->qs)));
  });
}

qc_status qc_system_check(const qc_system* sys, int* acyclic, char** report) {
  return guarded([&] {
    require(sys, "sys");
    require(acyclic, "acyclic");
    ContextDependencyGraph g = ContextDependencyGraph::build(sys->qs);
    AcyclicityVerdict v = check_context_acyclicity(g);
    *acyclic = v.acyclic ? 1 : 0;
    if (!report) return;
    std::string text = std::string("context acyclic: ") + (v.acyclic ? "yes" : "no") + "\n";
    text += "TGCs: " + join_names(g.tgcs()) + "\n";
    if (!v.acyclic) {
      text += "witness: " + format_cycle(v.witness) + "\n";
    } else {
      LevelMap lm = compute_levels(g);
      text += "levels:";
      for (const auto& [c, level] : lm.level) text += " " + plain(c) + "=" + std::to_string(level);
      text += "\nmax level: " + std::to_string(lm.max_level) + "\n";
    }
    *report = dup(text);
  });
}

void qc_chase_options_init(qc_chase_options* opts) {
  if (opts == nullptr) return;
  opts->semantics = "simple";
  opts->rdfs_resource_rule = 1;
  opts->max_iterations = -1;
  opts->max_quads = -1;
  opts->max_generating_iterations = -1;
  opts->force = 0;
  opts->jobs = 1;
}

qc_status qc_chase_run(const qc_system* sys, const qc_chase_options* opts, qc_chase** out) {
  return guarded([&] {
    require(sys, "sys");
    require(out, "out");
    qc_chase_options defaults;
    qc_chase_options_init(&defaults);
    const qc_chase_options& o = opts ? *opts : defaults;

    ChaseConfig cfg;
    cfg.semantics = LocalSemantics::from_name(o.semantics ? o.semantics : "simple", o.rdfs_resource_rule != 0);
    if (o.max_iterations >= 0) cfg.max_iterations = static_cast<std::size_t>(o.max_iterations);
    if (o.max_quads >= 0) cfg.max_quads = static_cast<std::size_t>(o.max_quads);
    if (o.max_generating_iterations >= 0) {
      cfg.max_generating_iterations = static_cast<std::size_t>(o.max_generating_iterations);
    }
    cfg.force = o.force != 0;
    cfg.jobs = o.jobs == 0 ? 1 : o.jobs;

    auto chase = std::make_unique<qc_chase>();
    chase->result = dchase(sys->qs, cfg);
    ContextDependencyGraph g = ContextDependencyGraph::build(sys->qs);
    if (check_context_acyclicity(g).acyclic) chase->levels = compute_levels(g);
    *out = chase.release();
  });
}

qc_status qc_chase_load(const char* path, qc_chase** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto chase = std::make_unique<qc_chase>();
    chase->result = load_chase(read_file(path));
    *out = chase.release();
  });
}

void qc_chase_free(qc_chase* chase) { delete chase; }

qc_chase_status qc_chase_get_status(const qc_chase* chase) {
  if (chase == nullptr) return QC_CHASE_COMPLETE;
  switch (chase->result.status) {
    case ChaseStatus::kComplete: return QC_CHASE_COMPLETE;
    case ChaseStatus::kBudgetExhausted: return QC_CHASE_BUDGET_EXHAUSTED;
    case ChaseStatus::kInconsistent: return QC_CHASE_INCONSISTENT;
  }
  return QC_CHASE_COMPLETE;
}

qc_status qc_chase_counts(const qc_chase* chase, size_t* quads, size_t* iterations, size_t* generating) {
  return guarded([&] {
    require(chase, "chase");
    if (quads) *quads = chase->result.quads.size();
    if (iterations) *iterations = chase->result.iterations;
    if (generating) *generating = chase->result.generating_iterations;
  });
}

qc_status qc_chase_stop_reason(const qc_chase* chase, char** out) {
  return guarded([&] {
    require(chase, "chase");
    require(out, "out");
    *out = dup(chase->result.stop_reason);
  });
}

qc_status qc_chase_nquads(const qc_chase* chase, char** out) {
  return guarded([&] {
    require(chase, "chase");
    require(out, "out");
    *out = dup(chase_header(chase->result) + serialize_nquads(chase->result.quads));
  });
}

qc_status qc_chase_stats_json(const qc_chase* chase, char** out) {
  return guarded([&] {
    require(chase, "chase");
    require(out, "out");
    *out = dup(chase_stats_json(chase->result, chase->levels ? &*chase->levels : nullptr));
  });
}

qc_status qc_chase_violations(const qc_chase* chase, char** out) {
  return guarded([&] {
    require(chase, "chase");
    require(out, "out");
    std::string text;
    for (const Violation& v : chase->result.violations) {
      text += v.rule_id;
      for (const auto& [name, value] : v.binding.entries()) text += " ?" + name + "=" + value.canonical();
      text += "\n";
    }
    *out = dup(text);
  });
}

qc_status qc_query_parse(const char* text, qc_query** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new qc_query{parse_query(text)};
  });
}

qc_status qc_query_load(const char* path, qc_query** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new qc_query{parse_query(read_file(path))};
  });
}

void qc_query_free(qc_query* q) { delete q; }

int qc_query_is_boolean(const qc_query* q) { return q != nullptr && q->doc.is_boolean() ? 1 : 0; }

qc_status qc_query_eval(const qc_chase* chase, const qc_query* q, qc_format format, qc_answer_info* info,
                        char** out, char** warnings) {
  return guarded([&] {
    require(chase, "chase");
    require(q, "query");
    using nlohmann::ordered_json;
    qc_answer_info local{};
    std::string text;
    std::vector<std::string> notes;

    if (q->doc.is_boolean()) {
      BooleanAnswer a = entails_boolean(chase->result, q->doc);
      local = {1, a.entailed ? 1 : 0, 0, a.complete ? 1 : 0, a.inconsistent ? 1 : 0};
      notes = a.warnings;
      if (format == QC_FORMAT_JSON) {
        ordered_json doc{{"entailed", a.entailed}, {"complete", a.complete}, {"inconsistent", a.inconsistent},
                         {"warnings", a.warnings}};
        text = doc.dump(2) + "\n";
      } else {
        text = a.entailed ? "true\n" : "false\n";
      }
    } else {
      AnswerSet a = answers(chase->result, q->doc);
      local = {0, 0, a.tuples.size(), a.complete ? 1 : 0, a.inconsistent ? 1 : 0};
      notes = a.warnings;
      if (format == QC_FORMAT_JSON) {
        ordered_json vars = ordered_json::array();
        for (const std::string& v : a.free_vars) vars.push_back("?" + v);
        ordered_json rows = ordered_json::array();
        for (const auto& tuple : a.tuples) {
          ordered_json row = ordered_json::array();
          for (Constant c : tuple) row.push_back(c.canonical());
          rows.push_back(std::move(row));
        }
        ordered_json doc{{"vars", vars},          {"tuples", rows},         {"complete", a.complete},
                         {"inconsistent", a.inconsistent}, {"warnings", a.warnings}};
        text = doc.dump(2) + "\n";
      } else {
        for (std::size_t i = 0; i < a.free_vars.size(); ++i) text += (i ? "\t?" : "?") + a.free_vars[i];
        text += "\n";
        for (const auto& tuple : a.tuples) {
          for (std::size_t i = 0; i < tuple.size(); ++i) text += (i ? "\t" : "") + tuple[i].canonical();
          text += "\n";
        }
      }
    }
    if (info) *info = local;
    if (out) *out = dup(text);
    if (warnings) {
      std::string joined;
      for (const std::string& n : notes) joined += n + "\n";
      *warnings = dup(joined);
    }
  });
}

qc_status qc_encode_cfg(const char* g1_path, const char* g2_path, const char* dir) {
  return guarded([&] {
    require(g1_path, "g1_path");
    require(g2_path, "g2_path");
    require(dir, "dir");
    write_encoding(encode_cfg_pair(parse_cfg(read_file(g1_path)), parse_cfg(read_file(g2_path))), dir);
  });
}

qc_status qc_encode_horn(const char* path, const char* dir) {
  return guarded([&] {
    require(path, "path");
    require(dir, "dir");
    write_encoding(encode_horn(parse_horn(read_file(path))), dir);
  });
}

qc_status qc_encode_dtm(const char* path, const char* input, unsigned n, const char* dir) {
  return guarded([&] {
    require(path, "path");
    require(dir, "dir");
    Dtm m = parse_dtm(read_file(path));
    write_encoding(encode_dtm(m, parse_dtm_input(m, input ? input : ""), n), dir);
  });
}

qc_status qc_explain_semantics(const char* name, int rdfs_resource_rule, char** out) {
  return guarded([&] {
    require(out, "out");
    LocalSemantics sem = LocalSemantics::from_name(name ? name : "simple", rdfs_resource_rule != 0);
    std::string text = sem.name() + "\n";
    std::vector<LocalRule> rules = sem.rules();
    if (rules.empty()) text += "  (no rules: lclosure is the identity)\n";
    for (const LocalRule& r : rules) text += "  " + r.id + ": " + r.premises + " => " + r.conclusion + "\n";
    *out = dup(text);
  });
}

}  // extern "C"
