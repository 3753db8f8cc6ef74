#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quadchase/rules.hpp"
#include "quadchase/syntax.hpp"

namespace quadchase {

/// A quad-system with the query that decides the encoded problem.
struct Encoding {
  QuadSystem system;
  QueryDocument query;
};

/// Writes `system.nq`, `rules.qrules` and `query.ccq` into `dir`, creating it
/// if needed.
void write_encoding(const Encoding& e, const std::string& dir);

// ---------------------------------------------------------------------------
// Context-free grammars

struct Production {
  std::string lhs;
  std::vector<std::string> rhs;  // empty for an epsilon production
};

/// Variables are the left-hand sides; every other symbol is a terminal.
struct Cfg {
  std::string start;
  std::vector<Production> productions;

  std::set<std::string> variables() const;
  std::set<std::string> terminals() const;
};

/// Line-oriented grammar text:
///
///     start S            # optional, defaults to the first left-hand side
///     S -> a S b | a b
///     B -> eps           # epsilon
Cfg parse_cfg(std::string_view text);
std::string serialize_cfg(const Cfg& g);

/// One context `<c>`; a rule per production and per terminal; the seed
/// `c:(a, rdf:type, C)`; query `exists y. c:(a,S1,y), c:(a,S2,y)`.
/// Epsilon productions are dropped, so the encoding covers non-empty strings.
/// Throws kInvalidArgument when V1, V2 and the terminals overlap.
Encoding encode_cfg_pair(const Cfg& g1, const Cfg& g2);

struct CfgOracleResult {
  bool nonempty = false;
  /// Shortest common string (lexicographically first among the shortest).
  std::vector<std::string> witness;
};

/// CYK over the Chomsky normal forms of both grammars for every string of
/// length 1..max_len over their joint terminals.
CfgOracleResult cfg_intersection_oracle(const Cfg& g1, const Cfg& g2, std::size_t max_len);

/// CYK membership of a non-empty string.
bool cfg_accepts(const Cfg& g, const std::vector<std::string>& word);

struct RandomCfgOptions {
  std::size_t max_variables = 3;
  std::size_t max_productions_per_variable = 3;
  std::size_t max_rhs = 3;
};

/// A random epsilon-free grammar whose variables are `<prefix>0`, `<prefix>1`,
/// ... (start `<prefix>0`) over the terminals given.
Cfg random_cfg(std::mt19937_64& rng, const std::string& prefix, const std::vector<std::string>& terminals,
               const RandomCfgOptions& options = {});

// ---------------------------------------------------------------------------
// 3Horn formulas

/// `body[0] ∧ body[1] -> head`; the constants are spelled `t` and `f`.
struct HornClause {
  std::string body[2];
  std::string head;
};

struct HornFormulaSet {
  std::vector<HornClause> clauses;
};

/// One clause per line, `p q -> r`. Bodies with fewer than two literals are
/// padded with `t`; more than two is an error.
HornFormulaSet parse_horn(std::string_view text);
std::string serialize_horn(const HornFormulaSet& phi);

/// Brings a clause with 0..2 body literals to pure form by appending `t`.
HornClause pad_to_pure(const std::vector<std::string>& body, const std::string& head);

/// Contexts `c_t`, `c_f`; one `c_f:(P1,P2,P3)` per clause, the seed
/// `c_t:(t, rdf:type, T)`, a single fixed rule, and the query
/// `c_t:(f, rdf:type, T)`.
Encoding encode_horn(const HornFormulaSet& phi);

struct HornOracleResult {
  bool sat = true;
  /// Variables forced true (excluding `t`).
  std::set<std::string> model;
};

/// Unit propagation from {t}; unsatisfiable iff `f` is derived.
HornOracleResult horn_sat_oracle(const HornFormulaSet& phi);

HornFormulaSet random_horn(std::mt19937_64& rng, std::size_t max_vars = 12, std::size_t max_clauses = 20);

// ---------------------------------------------------------------------------
// Deterministic Turing machines

enum class Move { kLeft, kRight };

struct Transition {
  std::string next;
  std::string write;
  Move move = Move::kRight;
};

struct Dtm {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;  // includes the blank
  std::string blank;
  std::string start;
  std::string accept;
  std::map<std::pair<std::string, std::string>, Transition> delta;
};

/// Text format:
///
///     states q0 q1 qA
///     alphabet a b _
///     blank _
///     start q0
///     accept qA
///     q0 a -> q1 b R
///
/// The accepting state must have no outgoing transitions.
Dtm parse_dtm(std::string_view text);
std::string serialize_dtm(const Dtm& m);

/// Whitespace-separated symbols. Text without whitespace is a single symbol
/// when it names one, otherwise one symbol per character.
std::vector<std::string> parse_dtm_input(const Dtm& m, std::string_view text);

/// Largest supported counter depth.
inline constexpr std::size_t kMaxDtmDepth = 2;

/// Number of tape cells (and of configurations) for counter depth n: 2^(2^n).
std::size_t dtm_cells(std::size_t n);

/// Counter contexts c_0..c_n, with generation contexts g_1..g_n that alone
/// receive fresh cells; the machine rules live in c_n. The query asks
/// whether the initial configuration accepts. Throws kLimitExceeded for
/// n > max_depth and kInvalidArgument if |w| + 1 exceeds the tape.
Encoding encode_dtm(const Dtm& m, const std::vector<std::string>& w, std::size_t n,
                    std::size_t max_depth = kMaxDtmDepth);

enum class DtmVerdict { kAccept, kReject, kTimeout };
std::string to_string(DtmVerdict v);

/// Direct simulation for at most `max_steps` steps. With `tape_cells`,
/// moving off either end rejects; without it the tape grows to the right
/// and moving left of cell 0 rejects.
DtmVerdict dtm_oracle(const Dtm& m, const std::vector<std::string>& w, std::size_t max_steps,
                      std::optional<std::size_t> tape_cells = std::nullopt);

}  // namespace quadchase
