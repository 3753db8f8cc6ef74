#include "quadchase/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "quadchase/error.hpp"
#include "term_scanner.hpp"

namespace quadchase {

// ---------------------------------------------------------------------------
// N-Quads

namespace {

Constant rescope(Constant c, const std::string& scope) {
  if (scope.empty() || c.kind() != TermKind::kBlank) return c;
  return Constant::blank(scope + "_" + c.value());
}

}  // namespace

std::size_t parse_nquads_into(QuadGraph& graph, std::string_view text, const NQuadsOptions& options) {
  std::size_t added = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    detail::Cursor c{text.substr(start, end - start), 0, line_no, 0};
    start = end + 1;

    c.skip_blanks();
    if (c.done() || c.peek() == '#') continue;

    Constant s = detail::scan_constant(c);
    c.skip_blanks();
    std::size_t p_column = c.column();
    Constant p = detail::scan_constant(c);
    c.skip_blanks();
    Constant o = detail::scan_constant(c);
    c.skip_blanks();
    if (c.peek() == '.' || c.done()) c.fail("missing graph label (the context of the quad)");
    std::size_t g_column = c.column();
    Constant g = detail::scan_constant(c);
    c.skip_blanks();
    if (c.peek() != '.') c.fail("expected '.' after the graph label");
    ++c.pos;
    c.skip_blanks();
    if (!c.done() && c.peek() != '#') c.fail("unexpected characters after '.'");

    if (!g.is_iri()) {
      throw ParseError(line_no, g_column, "graph label must be an IRI, got " + g.canonical());
    }
    if (options.strict) {
      if (s.is_literal()) throw ParseError(line_no, 1, "strict mode: literal in subject position");
      if (!p.is_iri()) throw ParseError(line_no, p_column, "strict mode: predicate must be an IRI");
    }
    Quad q{g, rescope(s, options.blank_scope), rescope(p, options.blank_scope), rescope(o, options.blank_scope)};
    added += graph.insert(q) ? 1 : 0;
  }
  return added;
}

QuadGraph parse_nquads(std::string_view text, const NQuadsOptions& options) {
  QuadGraph graph;
  parse_nquads_into(graph, text, options);
  return graph;
}

std::string serialize_nquads(const QuadGraph& q) {
  std::string out;
  for (const Quad& quad : q.sorted()) {
    out += quad.subject.canonical();
    out += ' ';
    out += quad.predicate.canonical();
    out += ' ';
    out += quad.object.canonical();
    out += ' ';
    out += quad.context.canonical();
    out += " .\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule and query lexer

namespace {

enum class Tok {
  kIri,
  kLiteral,
  kVar,
  kBlank,
  kPName,
  kName,
  kRuleId,
  kPrefix,
  kLParen,
  kRParen,
  kComma,
  kDot,
  kArrow,
  kLBrace,
  kRBrace,
  kEnd,
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::kIri: return "IRI";
    case Tok::kLiteral: return "literal";
    case Tok::kVar: return "variable";
    case Tok::kBlank: return "blank node";
    case Tok::kPName: return "prefixed name";
    case Tok::kName: return "name";
    case Tok::kRuleId: return "rule id";
    case Tok::kPrefix: return "'@prefix'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kDot: return "'.'";
    case Tok::kArrow: return "'->'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string text;   // IRI, variable, label, name, prefix
  std::string local;  // local part of a prefixed name
  std::string lexical;
  std::string language;
  std::string datatype;
  std::string dt_prefix;
  bool dt_pname = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = pos_ - line_start_ + 1;
    if (pos_ >= text_.size()) return t;
    char ch = text_[pos_];
    switch (ch) {
      case '(': return punct(t, Tok::kLParen);
      case ')': return punct(t, Tok::kRParen);
      case ',': return punct(t, Tok::kComma);
      case '.': return punct(t, Tok::kDot);
      case '{': return punct(t, Tok::kLBrace);
      case '}': return punct(t, Tok::kRBrace);
      case '-':
        if (peek(1) == '>') {
          pos_ += 2;
          t.kind = Tok::kArrow;
          return t;
        }
        break;
      case '<': {
        detail::Cursor c = cursor();
        t.text = detail::scan_iri_ref(c);
        advance(c);
        t.kind = Tok::kIri;
        return t;
      }
      case '"': return literal(t);
      case '?': {
        std::size_t start = ++pos_;
        while (pos_ < text_.size() && is_var_char(text_[pos_])) ++pos_;
        if (pos_ == start) fail(t, "expected a variable name after '?'");
        t.kind = Tok::kVar;
        t.text = std::string(text_.substr(start, pos_ - start));
        return t;
      }
      case '@': {
        std::size_t start = ++pos_;
        while (pos_ < text_.size() && detail::is_name_char(text_[pos_])) ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        if (word != "prefix") fail(t, "unknown directive '@" + std::string(word) + "'");
        t.kind = Tok::kPrefix;
        return t;
      }
      case '_':
        if (peek(1) == ':') {
          detail::Cursor c = cursor();
          t.text = detail::scan_blank_label(c);
          advance(c);
          t.kind = Tok::kBlank;
          return t;
        }
        break;
      case ':': return name(t, pos_);
      default: break;
    }
    if (detail::is_name_start(ch)) return name(t, pos_);
    fail(t, std::string("unexpected character '") + ch + "'");
  }

 private:
  static bool is_var_char(char ch) {
    return detail::is_name_start(ch) || (ch >= '0' && ch <= '9');
  }
  static bool is_local_char(char ch) { return detail::is_name_char(ch) || (ch >= '0' && ch <= '9') || ch == '.'; }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  Token punct(Token& t, Tok kind) {
    ++pos_;
    t.kind = kind;
    return t;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++pos_;
      } else if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Cursor over the current line, positioned at `pos_`.
  detail::Cursor cursor() const {
    std::size_t end = text_.find('\n', line_start_);
    if (end == std::string_view::npos) end = text_.size();
    return detail::Cursor{text_.substr(line_start_, end - line_start_), pos_ - line_start_, line_, 0};
  }
  void advance(const detail::Cursor& c) { pos_ = line_start_ + c.pos; }

  Token literal(Token& t) {
    detail::Cursor c = cursor();
    t.lexical = detail::scan_quoted(c);
    if (c.peek() == '@') {
      t.language = detail::scan_language(c);
    } else if (c.peek() == '^' && c.peek(1) == '^') {
      c.pos += 2;
      if (c.peek() == '<') {
        t.datatype = detail::scan_iri_ref(c);
      } else {
        advance(c);
        Token dt;
        dt.line = line_;
        dt.column = pos_ - line_start_ + 1;
        std::size_t start = pos_;
        while (pos_ < text_.size() && detail::is_name_char(text_[pos_])) ++pos_;
        if (peek(0) != ':') fail(dt, "expected a datatype IRI or prefixed name after '^^'");
        t.dt_prefix = std::string(text_.substr(start, pos_ - start));
        ++pos_;
        t.datatype = scan_local();
        t.dt_pname = true;
        t.kind = Tok::kLiteral;
        return t;
      }
    }
    advance(c);
    t.kind = Tok::kLiteral;
    return t;
  }

  std::string scan_local() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_local_char(text_[pos_])) ++pos_;
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  /// A bare name, a rule id `name:` followed by whitespace, or a prefixed
  /// name `prefix:local` (prefix and local may be empty).
  Token name(Token& t, std::size_t start) {
    if (text_[pos_] != ':') {
      while (pos_ < text_.size() && detail::is_name_char(text_[pos_])) {
        if (text_[pos_] == '-' && peek(1) == '>') break;
        ++pos_;
      }
    }
    std::string word(text_.substr(start, pos_ - start));
    if (peek(0) != ':') {
      t.kind = Tok::kName;
      t.text = std::move(word);
      return t;
    }
    char after = peek(1);
    bool spaced = after == '\0' || after == ' ' || after == '\t' || after == '\r' || after == '\n';
    if (spaced && !word.empty()) {
      pos_ += 1;
      t.kind = Tok::kRuleId;
      t.text = std::move(word);
      return t;
    }
    ++pos_;
    t.kind = Tok::kPName;
    t.text = std::move(word);
    t.local = scan_local();
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

// ---------------------------------------------------------------------------
// Shared parser machinery

const std::map<std::string, std::string>& default_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
  };
  return prefixes;
}

class Parser {
 public:
  enum class BlankPolicy { kReject, kAsVariable };

  Parser(std::string_view text, BlankPolicy blanks) : lexer_(text), blanks_(blanks) {
    prefixes_ = default_prefixes();
    lookahead_ = lexer_.next();
  }

  const Token& peek() const { return lookahead_; }
  Token take() {
    Token t = std::move(lookahead_);
    lookahead_ = lexer_.next();
    return t;
  }
  bool at(Tok kind) const { return lookahead_.kind == kind; }
  bool at_word(std::string_view word) const { return lookahead_.kind == Tok::kName && lookahead_.text == word; }

  Token expect(Tok kind, std::string_view what = {}) {
    if (!at(kind)) {
      std::string wanted = what.empty() ? std::string(describe(kind)) : std::string(what);
      fail(lookahead_, "expected " + wanted + ", found " + std::string(describe(lookahead_.kind)));
    }
    return take();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
  }

  /// `@prefix p: <iri> .`
  void prefix_declaration() {
    expect(Tok::kPrefix);
    Token name = take();
    std::string prefix;
    if (name.kind == Tok::kRuleId) {
      prefix = name.text;
    } else if (name.kind == Tok::kPName && name.local.empty()) {
      prefix = name.text;
    } else {
      fail(name, "expected a prefix name such as 'ex:'");
    }
    Token iri = expect(Tok::kIri, "the namespace IRI");
    prefixes_[prefix] = iri.text;
    expect(Tok::kDot);
  }

  std::string resolve(const Token& t, const std::string& prefix, const std::string& local) const {
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail(t, "unknown prefix '" + prefix + ":'");
    return it->second + local;
  }

  Constant context() {
    Token t = take();
    switch (t.kind) {
      case Tok::kIri: return Constant::iri(t.text);
      case Tok::kPName: return Constant::iri(resolve(t, t.text, t.local));
      case Tok::kName: return Constant::iri(t.text);
      case Tok::kVar: fail(t, "context must be an IRI, not a variable");
      default: fail(t, "context must be an IRI, found " + std::string(describe(t.kind)));
    }
  }

  Term term() {
    Token t = take();
    switch (t.kind) {
      case Tok::kIri: return Constant::iri(t.text);
      case Tok::kPName: return Constant::iri(resolve(t, t.text, t.local));
      case Tok::kName: return Constant::iri(t.text);
      case Tok::kVar: return Term::var(t.text);
      case Tok::kBlank:
        if (blanks_ == BlankPolicy::kReject) fail(t, "blank node _:" + t.text + " in pattern");
        return Term::var("_:" + t.text);
      case Tok::kLiteral: {
        std::string datatype = t.dt_pname ? resolve(t, t.dt_prefix, t.datatype) : t.datatype;
        return Constant::literal(t.lexical, datatype, t.language);
      }
      default: fail(t, "expected a term, found " + std::string(describe(t.kind)));
    }
  }

  QuadPattern atom() {
    Constant c = context();
    expect(Tok::kLParen);
    Term s = term();
    expect(Tok::kComma);
    Term p = term();
    expect(Tok::kComma);
    Term o = term();
    expect(Tok::kRParen);
    return QuadPattern(c, std::move(s), std::move(p), std::move(o));
  }

  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

 private:
  Lexer lexer_;
  BlankPolicy blanks_;
  Token lookahead_;
  std::map<std::string, std::string> prefixes_;
};

struct RawRule {
  std::optional<std::string> id;
  Token start;
  std::size_t end_line = 0;
  std::vector<QuadPattern> body;
  std::vector<QuadPattern> head;
  std::vector<std::pair<Token, std::string>> declared;
};

void exists_clause(Parser& p, RawRule& rule) {
  p.take();  // exists
  do {
    Token v = p.expect(Tok::kVar, "an existential variable");
    rule.declared.emplace_back(v, v.text);
    if (p.at(Tok::kComma)) p.take();
  } while (p.at(Tok::kVar));
  p.expect(Tok::kDot, "'.' after the exists list");
}

RawRule raw_rule(Parser& p) {
  RawRule rule;
  rule.start = p.peek();
  if (p.at(Tok::kRuleId)) rule.id = p.take().text;
  if (p.at_word("exists")) exists_clause(p, rule);
  rule.body.push_back(p.atom());
  while (p.at(Tok::kComma)) {
    p.take();
    rule.body.push_back(p.atom());
  }
  p.expect(Tok::kArrow);
  if (p.at_word("exists")) exists_clause(p, rule);
  if (!p.at(Tok::kDot)) {
    rule.head.push_back(p.atom());
    while (p.at(Tok::kComma)) {
      p.take();
      rule.head.push_back(p.atom());
    }
  }
  rule.end_line = p.expect(Tok::kDot, "'.' at the end of the rule").line;
  return rule;
}

}  // namespace

RuleDocument parse_rules(std::string_view text) {
  Parser p(text, Parser::BlankPolicy::kReject);
  std::vector<RawRule> raw;
  while (!p.at(Tok::kEnd)) {
    if (p.at(Tok::kPrefix)) {
      p.prefix_declaration();
    } else {
      raw.push_back(raw_rule(p));
    }
  }

  std::set<std::string> taken;
  for (const RawRule& r : raw) {
    if (!r.id) continue;
    if (!is_valid_rule_id(*r.id)) {
      Parser::fail(r.start, "invalid rule id '" + *r.id + "' (allowed: letters, digits, '_', '-')");
    }
    if (!taken.insert(*r.id).second) Parser::fail(r.start, "duplicate rule id '" + *r.id + "'");
  }

  RuleDocument doc;
  doc.prefixes = p.prefixes();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    RawRule& r = raw[i];
    std::string id;
    if (r.id) {
      id = *r.id;
    } else {
      std::size_t k = i + 1;
      while (taken.count("r" + std::to_string(k))) ++k;
      id = "r" + std::to_string(k);
      taken.insert(id);
    }
    try {
      BridgeRule rule(id, std::move(r.body), std::move(r.head));
      for (const auto& [token, name] : r.declared) {
        const auto& ex = rule.existentials();
        if (std::find(ex.begin(), ex.end(), name) == ex.end()) {
          Parser::fail(token, "?" + name + " is declared existential but occurs in the body or not in the head");
        }
      }
      doc.rules.push_back(std::move(rule));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      Parser::fail(r.start, e.what());
    }
    doc.spans.push_back({r.start.line, r.start.column, r.end_line});
  }
  return doc;
}

namespace {

/// `rdf:type` style for the predeclared namespaces, canonical form otherwise.
std::string compact(const Term& t) {
  if (t.is_variable()) {
    const std::string& name = t.variable().name;
    return name.rfind("_:", 0) == 0 ? name : "?" + name;
  }
  Constant c = t.constant();
  if (c.is_iri()) {
    for (const auto& [prefix, ns] : default_prefixes()) {
      const std::string& iri = c.value();
      if (iri.size() <= ns.size() || iri.compare(0, ns.size(), ns) != 0) continue;
      std::string_view local = std::string_view(iri).substr(ns.size());
      bool plain = detail::is_name_start(local.front()) &&
                   std::all_of(local.begin(), local.end(), [](char ch) {
                     return detail::is_name_char(ch) || (ch >= '0' && ch <= '9');
                   });
      if (plain) return prefix + ":" + std::string(local);
    }
  }
  return c.canonical();
}

std::string compact(const QuadPattern& p) {
  return compact(Term(p.context)) + "(" + compact(p.terms[0]) + ", " + compact(p.terms[1]) + ", " +
         compact(p.terms[2]) + ")";
}

std::string compact(const std::vector<QuadPattern>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += compact(atoms[i]);
  }
  return out;
}

}  // namespace

std::string serialize_rules(const std::vector<BridgeRule>& rules) {
  std::string out;
  for (const BridgeRule& r : rules) {
    out += r.id() + ": " + compact(r.body()) + " ->";
    if (!r.head().empty()) out += " " + compact(r.head());
    out += " .\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Queries

std::vector<std::string> QueryDocument::quantified() const {
  std::vector<std::string> out;
  for (const QuadPattern& a : atoms) {
    for (const std::string& v : a.variables()) {
      bool is_free = std::find(free_vars.begin(), free_vars.end(), v) != free_vars.end();
      if (!is_free && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

QueryDocument parse_query(std::string_view text) {
  Parser p(text, Parser::BlankPolicy::kAsVariable);
  while (p.at(Tok::kPrefix)) p.prefix_declaration();

  QueryDocument q;
  std::vector<Token> free_tokens;
  Token head = p.peek();
  if (p.at_word("ask")) {
    p.take();
  } else if (p.at_word("select")) {
    p.take();
    while (p.at(Tok::kVar)) {
      Token v = p.take();
      if (std::find(q.free_vars.begin(), q.free_vars.end(), v.text) != q.free_vars.end()) {
        Parser::fail(v, "duplicate free variable ?" + v.text);
      }
      q.free_vars.push_back(v.text);
      free_tokens.push_back(v);
    }
    if (q.free_vars.empty()) Parser::fail(p.peek(), "select needs at least one variable (use 'ask' for boolean queries)");
    if (!p.at_word("where")) Parser::fail(p.peek(), "expected 'where'");
    p.take();
  } else {
    Parser::fail(head, "expected 'ask' or 'select'");
  }

  Token open = p.expect(Tok::kLBrace);
  while (!p.at(Tok::kRBrace)) {
    q.atoms.push_back(p.atom());
    if (p.at(Tok::kComma) || p.at(Tok::kDot)) {
      p.take();
    } else if (!p.at(Tok::kRBrace)) {
      Parser::fail(p.peek(), "expected ',' or '}' after a query atom");
    }
  }
  p.take();
  if (!p.at(Tok::kEnd)) Parser::fail(p.peek(), "unexpected input after the query");
  if (q.atoms.empty()) Parser::fail(open, "empty query body");

  for (std::size_t i = 0; i < q.free_vars.size(); ++i) {
    const std::string& v = q.free_vars[i];
    bool used = std::any_of(q.atoms.begin(), q.atoms.end(), [&](const QuadPattern& a) {
      auto vars = a.variables();
      return std::find(vars.begin(), vars.end(), v) != vars.end();
    });
    if (!used) Parser::fail(free_tokens[i], "free variable ?" + v + " does not occur in any atom");
  }
  return q;
}

std::string serialize_query(const QueryDocument& q) {
  std::string out;
  if (q.is_boolean()) {
    out = "ask {\n";
  } else {
    out = "select";
    for (const std::string& v : q.free_vars) out += " ?" + v;
    out += " where {\n";
  }
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    out += "  " + compact(q.atoms[i]);
    out += i + 1 < q.atoms.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return buffer.str();
}

}  // namespace quadchase
