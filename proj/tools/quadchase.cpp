// quadchase command-line front end. Talks to the engine only through the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadchase/quadchase.h"

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kBudget = 3, kInconsistent = 4, kInternal = 5 };

struct Failure {
  int code;
};

/// Prints the last error and aborts the subcommand unless `s` is QC_OK.
void check(qc_status s, const std::string& what) {
  if (s == QC_OK) return;
  std::cerr << "quadchase: " << what << ": " << qc_last_error() << "\n";
  throw Failure{s == QC_ERR_INTERNAL ? kInternal : kUsage};
}

struct CString {
  char* p = nullptr;
  ~CString() { qc_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using System = std::unique_ptr<qc_system, decltype(&qc_system_free)>;
using Chase = std::unique_ptr<qc_chase, decltype(&qc_chase_free)>;
using Query = std::unique_ptr<qc_query, decltype(&qc_query_free)>;

System load_system(const std::string& quads, const std::string& rules, bool strict) {
  qc_system* raw = nullptr;
  check(qc_system_new(&raw), "cannot allocate system");
  System sys(raw, qc_system_free);
  check(qc_system_load_quads(sys.get(), quads.c_str(), strict ? 1 : 0), quads);
  if (!rules.empty()) check(qc_system_load_rules(sys.get(), rules.c_str()), rules);
  return sys;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "quadchase: cannot write " << path << "\n";
    throw Failure{kUsage};
  }
}

struct ChaseArgs {
  std::string quads, rules, out, stats;
  std::string semantics = "simple";
  bool resource_rule = true;
  long long max_iterations = -1, max_quads = -1, max_generating = -1;
  bool force = false;
  unsigned jobs = 1;
};

int run_chase(const ChaseArgs& a) {
  System sys = load_system(a.quads, a.rules, false);
  qc_chase_options opts;
  qc_chase_options_init(&opts);
  opts.semantics = a.semantics.c_str();
  opts.rdfs_resource_rule = a.resource_rule ? 1 : 0;
  opts.max_iterations = a.max_iterations;
  opts.max_quads = a.max_quads;
  opts.max_generating_iterations = a.max_generating;
  opts.force = a.force ? 1 : 0;
  opts.jobs = a.jobs;

  auto start = std::chrono::steady_clock::now();
  qc_chase* raw = nullptr;
  check(qc_chase_run(sys.get(), &opts, &raw), "chase refused");
  Chase chase(raw, qc_chase_free);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  CString text;
  check(qc_chase_nquads(chase.get(), &text.p), "serialize");
  write_text(a.out, text.str());

  std::size_t quads = 0, iterations = 0, generating = 0;
  check(qc_chase_counts(chase.get(), &quads, &iterations, &generating), "counts");
  CString reason;
  check(qc_chase_stop_reason(chase.get(), &reason.p), "stop reason");
  qc_chase_status status = qc_chase_get_status(chase.get());
  static const char* const kNames[] = {"complete", "budget-exhausted", "inconsistent"};
  std::cerr << "dchase: " << kNames[status] << ", " << quads << " quads, " << iterations << " iterations ("
            << generating << " generating)";
  if (!reason.str().empty()) std::cerr << ": " << reason.str();
  std::cerr << "\n";
  if (status == QC_CHASE_INCONSISTENT) {
    CString violations;
    check(qc_chase_violations(chase.get(), &violations.p), "violations");
    std::cerr << "violated constraints:\n" << violations.str();
  }

  if (!a.stats.empty()) {
    CString stats;
    check(qc_chase_stats_json(chase.get(), &stats.p), "stats");
    auto opt = [](long long v) { return v < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); };
    nlohmann::ordered_json manifest;
    manifest["tool"] = "quadchase";
    manifest["version"] = qc_version();
    manifest["command"] = "chase";
    manifest["inputs"] = {a.quads, a.rules};
    manifest["config"] = {{"semantics", a.semantics},
                          {"rdfs_resource_rule", a.resource_rule},
                          {"max_iterations", opt(a.max_iterations)},
                          {"max_quads", opt(a.max_quads)},
                          {"max_generating_iterations", opt(a.max_generating)},
                          {"force", a.force},
                          {"jobs", a.jobs}};
    manifest["seconds"] = seconds;
    manifest["status"] = kNames[status];
    manifest["chase"] = nlohmann::ordered_json::parse(stats.str());
    write_text(a.stats, manifest.dump(2) + "\n");
  }

  if (status == QC_CHASE_BUDGET_EXHAUSTED) return kBudget;
  if (status == QC_CHASE_INCONSISTENT) return kInconsistent;
  return kOk;
}

struct QueryArgs {
  std::string chase, query, format = "tsv", stats;
};

int run_query(const QueryArgs& a) {
  auto start = std::chrono::steady_clock::now();
  qc_chase* raw_chase = nullptr;
  check(qc_chase_load(a.chase.c_str(), &raw_chase), a.chase);
  Chase chase(raw_chase, qc_chase_free);
  qc_query* raw_query = nullptr;
  check(qc_query_load(a.query.c_str(), &raw_query), a.query);
  Query query(raw_query, qc_query_free);

  qc_answer_info info{};
  CString out, warnings;
  qc_format fmt = a.format == "json" ? QC_FORMAT_JSON : QC_FORMAT_TSV;
  check(qc_query_eval(chase.get(), query.get(), fmt, &info, &out.p, &warnings.p), "query");
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << out.str();
  if (!warnings.str().empty()) std::cerr << "warning: " << warnings.str();

  int code = kOk;
  if (info.inconsistent) {
    code = kInconsistent;
  } else if (info.boolean && !info.entailed) {
    code = info.complete ? kFalse : kBudget;
  }

  if (!a.stats.empty()) {
    nlohmann::ordered_json manifest;
    manifest["tool"] = "quadchase";
    manifest["version"] = qc_version();
    manifest["command"] = "query";
    manifest["inputs"] = {a.chase, a.query};
    manifest["config"] = {{"format", a.format}};
    manifest["seconds"] = seconds;
    manifest["status"] = info.inconsistent ? "inconsistent" : info.complete ? "complete" : "budget-exhausted";
    manifest["boolean"] = info.boolean != 0;
    if (info.boolean) {
      manifest["entailed"] = info.entailed != 0;
    } else {
      manifest["tuples"] = info.tuples;
    }
    write_text(a.stats, manifest.dump(2) + "\n");
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Materializes quad-systems with bridge rules and answers contextualized conjunctive queries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qc_version()));

  int result = kOk;

  // validate
  std::string v_quads, v_rules, v_query;
  bool v_strict = false;
  auto* validate = app.add_subcommand("validate", "Parse the inputs and report their sizes");
  validate->add_option("quads", v_quads, "N-Quads file")->required()->check(CLI::ExistingFile);
  validate->add_option("rules", v_rules, "Bridge rule file")->check(CLI::ExistingFile);
  validate->add_option("--query", v_query, "Query file to parse as well")->check(CLI::ExistingFile);
  validate->add_flag("--strict", v_strict, "Reject literal subjects and non-IRI predicates");
  validate->callback([&] {
    System sys = load_system(v_quads, v_rules, v_strict);
    std::size_t quads = 0, rules = 0, contexts = 0;
    check(qc_system_counts(sys.get(), &quads, &rules, &contexts), "counts");
    std::cout << "quads: " << quads << "\nrules: " << rules << "\ncontexts: " << contexts << "\n";
    if (!v_query.empty()) {
      qc_query* q = nullptr;
      check(qc_query_load(v_query.c_str(), &q), v_query);
      std::cout << "query: " << (qc_query_is_boolean(q) ? "boolean" : "select") << "\n";
      qc_query_free(q);
    }
  });

  // deps
  std::string d_quads, d_rules;
  bool d_dot = false, d_json = false;
  auto* deps = app.add_subcommand("deps", "Print the context dependency graph");
  deps->add_option("quads", d_quads, "N-Quads file")->required()->check(CLI::ExistingFile);
  deps->add_option("rules", d_rules, "Bridge rule file")->required()->check(CLI::ExistingFile);
  auto* dot_flag = deps->add_flag("--dot", d_dot, "Graphviz output");
  deps->add_flag("--json", d_json, "JSON output (default)")->excludes(dot_flag);
  deps->callback([&] {
    System sys = load_system(d_quads, d_rules, false);
    CString text;
    check(d_dot ? qc_system_deps_dot(sys.get(), &text.p) : qc_system_deps_json(sys.get(), &text.p), "deps");
    std::cout << text.str();
    if (!text.str().empty() && text.str().back() != '\n') std::cout << "\n";
  });

  // check
  std::string k_quads, k_rules;
  auto* check_cmd = app.add_subcommand("check", "Decide context acyclicity; exit 1 when cyclic");
  check_cmd->add_option("quads", k_quads, "N-Quads file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("rules", k_rules, "Bridge rule file")->required()->check(CLI::ExistingFile);
  check_cmd->callback([&] {
    System sys = load_system(k_quads, k_rules, false);
    int acyclic = 0;
    CString report;
    check(qc_system_check(sys.get(), &acyclic, &report.p), "check");
    std::cout << report.str();
    if (!acyclic) result = kFalse;
  });

  // chase
  ChaseArgs c;
  auto* chase = app.add_subcommand("chase", "Compute the dChase and write it as N-Quads");
  chase->add_option("quads", c.quads, "N-Quads file")->required()->check(CLI::ExistingFile);
  chase->add_option("rules", c.rules, "Bridge rule file")->required()->check(CLI::ExistingFile);
  chase->add_option("-o,--output", c.out, "Output file (default: stdout)");
  chase->add_option("--stats", c.stats, "Write a JSON run manifest to this file");
  chase->add_option("--max-iterations", c.max_iterations, "Iteration budget")->check(CLI::NonNegativeNumber);
  chase->add_option("--max-quads", c.max_quads, "Stop once the dChase holds this many quads")
      ->check(CLI::NonNegativeNumber);
  chase->add_option("--max-generating", c.max_generating, "Generating-iteration budget")
      ->check(CLI::NonNegativeNumber);
  chase->add_flag("--force", c.force, "Run a non-context-acyclic system without a budget");
  chase->add_option("--jobs", c.jobs, "Matching threads per iteration")->check(CLI::PositiveNumber);
  chase->add_option("--local-semantics", c.semantics, "simple or rdfs-core")
      ->envname("QUADCHASE_SEMANTICS")
      ->check(CLI::IsMember({"simple", "rdfs-core"}));
  chase->add_flag("--rdfs-resource-rule,!--no-rdfs-resource-rule", c.resource_rule,
                  "Include (s,p,o) => (o, rdf:type, rdfs:Resource) under rdfs-core");
  chase->callback([&] { result = run_chase(c); });

  // query
  QueryArgs q;
  auto* query = app.add_subcommand("query", "Evaluate a query over a dChase file");
  query->add_option("chase", q.chase, "dChase N-Quads file")->required()->check(CLI::ExistingFile);
  query->add_option("query", q.query, "Query file")->required()->check(CLI::ExistingFile);
  query->add_option("--format", q.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  query->add_option("--stats", q.stats, "Write a JSON run manifest to this file");
  query->callback([&] { result = run_query(q); });

  // encode
  auto* encode = app.add_subcommand("encode", "Write a reduction as system.nq, rules.qrules and query.ccq");
  encode->require_subcommand(1);
  std::string e_out, e_g1, e_g2, e_horn, e_dtm, e_input;
  unsigned e_n = 1;
  auto* cfg = encode->add_subcommand("cfg", "Intersection of two context-free grammars");
  cfg->add_option("g1", e_g1, "First grammar")->required()->check(CLI::ExistingFile);
  cfg->add_option("g2", e_g2, "Second grammar")->required()->check(CLI::ExistingFile);
  cfg->add_option("-o,--output", e_out, "Output directory")->required();
  cfg->callback([&] { check(qc_encode_cfg(e_g1.c_str(), e_g2.c_str(), e_out.c_str()), "encode cfg"); });
  auto* horn = encode->add_subcommand("horn", "3Horn satisfiability");
  horn->add_option("phi", e_horn, "Clause file")->required()->check(CLI::ExistingFile);
  horn->add_option("-o,--output", e_out, "Output directory")->required();
  horn->callback([&] { check(qc_encode_horn(e_horn.c_str(), e_out.c_str()), "encode horn"); });
  auto* dtm = encode->add_subcommand("dtm", "Word problem of a deterministic Turing machine");
  dtm->add_option("machine", e_dtm, "Machine file")->required()->check(CLI::ExistingFile);
  dtm->add_option("--input", e_input, "Input word");
  dtm->add_option("--n", e_n, "Counter depth (tape of 2^(2^n) cells)")->check(CLI::Range(1, 2));
  dtm->add_option("-o,--output", e_out, "Output directory")->required();
  dtm->callback([&] { check(qc_encode_dtm(e_dtm.c_str(), e_input.c_str(), e_n, e_out.c_str()), "encode dtm"); });

  // explain-semantics
  std::string s_name = "simple";
  bool s_resource = true;
  auto* explain = app.add_subcommand("explain-semantics", "List the rules of a local semantics");
  explain->add_option("--local-semantics,name", s_name, "simple or rdfs-core")
      ->envname("QUADCHASE_SEMANTICS")
      ->check(CLI::IsMember({"simple", "rdfs-core"}));
  explain->add_flag("--rdfs-resource-rule,!--no-rdfs-resource-rule", s_resource, "Include the resource rule");
  explain->callback([&] {
    CString text;
    check(qc_explain_semantics(s_name.c_str(), s_resource ? 1 : 0, &text.p), "explain-semantics");
    std::cout << text.str();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "quadchase: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return result;
}
