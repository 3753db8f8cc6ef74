#include "quadchase/term.hpp"

#include <cstdio>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "quadchase/error.hpp"
#include "term_scanner.hpp"

namespace quadchase {

namespace detail {

struct TermNode {
  TermKind kind = TermKind::kIri;
  std::uint64_t id = 0;
  std::string canonical;
  std::string value;
  std::string datatype;
  std::string language;
  std::unique_ptr<SkolemInfo> skolem;
};

namespace {

class InternTable {
 public:
  static InternTable& instance() {
    static InternTable table;
    return table;
  }

  const TermNode* find(const std::string& canonical) const {
    std::shared_lock lock(mutex_);
    auto it = index_.find(canonical);
    return it == index_.end() ? nullptr : it->second;
  }

  /// Inserts `node` unless its canonical form is present; returns the
  /// resident node either way.
  const TermNode* insert(TermNode&& node) {
    if (const TermNode* hit = find(node.canonical)) return hit;
    std::unique_lock lock(mutex_);
    auto it = index_.find(node.canonical);
    if (it != index_.end()) return it->second;
    node.id = nodes_.size() + 1;
    nodes_.push_back(std::move(node));
    TermNode* stored = &nodes_.back();
    index_.emplace(stored->canonical, stored);
    return stored;
  }

  const TermNode* insert_skolem(const std::string& label, const std::string& rule_id,
                                std::size_t fn_index, std::uint64_t hash,
                                std::span<const Constant> args) {
    std::string canonical = "_:" + label;
    std::unique_lock lock(mutex_);
    auto it = index_.find(canonical);
    if (it != index_.end()) {
      TermNode* node = it->second;
      SkolemInfo* info = node->skolem.get();
      if (info == nullptr) {
        throw Error(ErrorCode::kInternal, "blank node " + canonical + " clashes with a skolem label");
      }
      if (!info->args_known) {
        info->args.assign(args.begin(), args.end());
        info->args_known = true;
      } else if (!std::equal(info->args.begin(), info->args.end(), args.begin(), args.end())) {
        throw Error(ErrorCode::kInternal,
                    "skolem hash collision on " + canonical + " (rule " + rule_id + ")");
      }
      return node;
    }
    TermNode node;
    node.kind = TermKind::kSkolemBlank;
    node.canonical = std::move(canonical);
    node.value = label;
    node.skolem = std::make_unique<SkolemInfo>();
    node.skolem->rule_id = rule_id;
    node.skolem->fn_index = fn_index;
    node.skolem->arg_hash = hash;
    node.skolem->args.assign(args.begin(), args.end());
    node.skolem->args_known = true;
    node.id = nodes_.size() + 1;
    nodes_.push_back(std::move(node));
    TermNode* stored = &nodes_.back();
    index_.emplace(stored->canonical, stored);
    return stored;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return nodes_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<TermNode> nodes_;
  std::unordered_map<std::string_view, TermNode*> index_;
};

bool is_lower_hex(char ch) { return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f'); }

/// Recognizes `sk_<rule>_<index>_<16 hex>` labels.
std::optional<SkolemInfo> parse_skolem_label(std::string_view label) {
  constexpr std::string_view kPrefix = "sk_";
  if (label.size() < kPrefix.size() + 1 + 2 + 1 + 16 || label.substr(0, 3) != kPrefix) {
    return std::nullopt;
  }
  std::string_view hex = label.substr(label.size() - 16);
  for (char ch : hex) {
    if (!is_lower_hex(ch)) return std::nullopt;
  }
  std::string_view rest = label.substr(kPrefix.size(), label.size() - kPrefix.size() - 16);
  if (rest.empty() || rest.back() != '_') return std::nullopt;
  rest.remove_suffix(1);
  auto sep = rest.rfind('_');
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  std::string_view index = rest.substr(sep + 1);
  if (index.empty()) return std::nullopt;
  std::size_t fn_index = 0;
  for (char ch : index) {
    if (ch < '0' || ch > '9') return std::nullopt;
    fn_index = fn_index * 10 + static_cast<std::size_t>(ch - '0');
  }
  SkolemInfo info;
  info.rule_id = std::string(rest.substr(0, sep));
  info.fn_index = fn_index;
  info.arg_hash = std::stoull(std::string(hex), nullptr, 16);
  return info;
}

}  // namespace
}  // namespace detail

using detail::InternTable;
using detail::TermNode;

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::kIri: return "iri";
    case TermKind::kBlank: return "blank";
    case TermKind::kSkolemBlank: return "skolem-blank";
    case TermKind::kLiteral: return "literal";
  }
  return "unknown";
}

std::string escape_iri(std::string_view iri) {
  static constexpr std::string_view kForbidden = "<>\"{}|^`\\";
  std::string out;
  out.reserve(iri.size());
  for (char ch : iri) {
    auto u = static_cast<unsigned char>(ch);
    if (u <= 0x20 || kForbidden.find(ch) != std::string_view::npos) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", u);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out;
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char ch : lexical) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: {
        auto u = static_cast<unsigned char>(ch);
        if (u < 0x20 || u == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", u);
          out += buf;
        } else {
          out += ch;
        }
      }
    }
  }
  return out;
}

Constant Constant::iri(std::string_view iri) {
  TermNode node;
  node.kind = TermKind::kIri;
  node.value = std::string(iri);
  node.canonical = "<" + escape_iri(iri) + ">";
  return Constant(InternTable::instance().insert(std::move(node)));
}

Constant Constant::blank(std::string_view label) {
  if (label.empty()) throw Error(ErrorCode::kInvalidArgument, "empty blank node label");
  TermNode node;
  node.value = std::string(label);
  node.canonical = "_:" + node.value;
  if (auto info = detail::parse_skolem_label(label)) {
    node.kind = TermKind::kSkolemBlank;
    node.skolem = std::make_unique<SkolemInfo>(std::move(*info));
  } else {
    node.kind = TermKind::kBlank;
  }
  return Constant(InternTable::instance().insert(std::move(node)));
}

Constant Constant::literal(std::string_view lexical, std::string_view datatype,
                           std::string_view language) {
  if (!datatype.empty() && !language.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "literal cannot carry both a datatype and a language");
  }
  TermNode node;
  node.kind = TermKind::kLiteral;
  node.value = std::string(lexical);
  node.datatype = std::string(datatype);
  node.language = std::string(language);
  node.canonical = "\"" + escape_literal(lexical) + "\"";
  if (!language.empty()) node.canonical += "@" + node.language;
  if (!datatype.empty()) node.canonical += "^^<" + escape_iri(datatype) + ">";
  return Constant(InternTable::instance().insert(std::move(node)));
}

Constant Constant::parse(std::string_view text) {
  detail::Cursor cursor{text};
  cursor.skip_blanks();
  Constant c = detail::scan_constant(cursor);
  cursor.skip_blanks();
  if (!cursor.done()) cursor.fail("trailing characters after term");
  return c;
}

TermKind Constant::kind() const {
  if (node_ == nullptr) throw Error(ErrorCode::kInvalidArgument, "null constant");
  return node_->kind;
}

namespace {
const std::string& empty_string() {
  static const std::string kEmpty;
  return kEmpty;
}
}  // namespace

const std::string& Constant::canonical() const { return node_ ? node_->canonical : empty_string(); }
const std::string& Constant::value() const { return node_ ? node_->value : empty_string(); }
const std::string& Constant::datatype() const { return node_ ? node_->datatype : empty_string(); }
const std::string& Constant::language() const { return node_ ? node_->language : empty_string(); }
const SkolemInfo* Constant::skolem() const { return node_ ? node_->skolem.get() : nullptr; }
std::uint64_t Constant::id() const { return node_ ? node_->id : 0; }

std::strong_ordering operator<=>(Constant a, Constant b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  int cmp = a.canonical().compare(b.canonical());
  if (cmp < 0) return std::strong_ordering::less;
  if (cmp > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Constant intern_skolem(const std::string& label, const std::string& rule_id, std::size_t fn_index,
                       std::uint64_t hash, std::span<const Constant> args) {
  return Constant(InternTable::instance().insert_skolem(label, rule_id, fn_index, hash, args));
}

std::size_t interned_constant_count() { return InternTable::instance().size(); }

std::string Term::to_string() const {
  if (is_variable()) return "?" + variable().name;
  return constant().canonical();
}

// ---------------------------------------------------------------------------
// Scanner

namespace detail {

void Cursor::fail(const std::string& message) const { throw ParseError(line, column(), message); }

void Cursor::skip_blanks() {
  while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

namespace {

char32_t scan_uchar(Cursor& c) {
  // positioned on 'u' or 'U'
  std::size_t digits = c.peek() == 'u' ? 4 : 8;
  ++c.pos;
  char32_t cp = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    char ch = c.peek();
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else c.fail("malformed unicode escape");
    cp = cp * 16 + static_cast<char32_t>(v);
    ++c.pos;
  }
  if (cp > 0x10FFFF) c.fail("unicode escape out of range");
  return cp;
}

bool is_label_char(char ch) {
  auto u = static_cast<unsigned char>(ch);
  return u >= 0x80 || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
         (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '.';
}

}  // namespace

bool is_name_start(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_' ||
         static_cast<unsigned char>(ch) >= 0x80;
}

bool is_name_char(char ch) { return is_name_start(ch) || (ch >= '0' && ch <= '9') || ch == '-'; }

std::string scan_iri_ref(Cursor& c) {
  if (c.peek() != '<') c.fail("expected '<'");
  ++c.pos;
  std::string out;
  while (true) {
    if (c.done()) c.fail("unterminated IRI");
    char ch = c.peek();
    if (ch == '>') {
      ++c.pos;
      return out;
    }
    if (ch == '\\') {
      ++c.pos;
      if (c.peek() != 'u' && c.peek() != 'U') c.fail("only \\u and \\U escapes are allowed in IRIs");
      append_utf8(out, scan_uchar(c));
      continue;
    }
    auto u = static_cast<unsigned char>(ch);
    if (u <= 0x20 || ch == '<' || ch == '"' || ch == '{' || ch == '}' || ch == '|' || ch == '^' ||
        ch == '`') {
      c.fail(std::string("character not allowed in IRI: '") + (u < 0x20 ? '?' : ch) + "'");
    }
    out += ch;
    ++c.pos;
  }
}

std::string scan_blank_label(Cursor& c) {
  if (c.peek() != '_' || c.peek(1) != ':') c.fail("expected '_:'");
  c.pos += 2;
  std::size_t start = c.pos;
  char first = c.peek();
  if (!(is_label_char(first) && first != '.' && first != '-')) c.fail("malformed blank node label");
  while (!c.done() && is_label_char(c.peek())) ++c.pos;
  while (c.pos > start && c.text[c.pos - 1] == '.') --c.pos;
  return std::string(c.text.substr(start, c.pos - start));
}

std::string scan_quoted(Cursor& c) {
  if (c.peek() != '"') c.fail("expected '\"'");
  ++c.pos;
  std::string lexical;
  while (true) {
    if (c.done()) c.fail("unterminated literal");
    char ch = c.peek();
    if (ch == '"') {
      ++c.pos;
      return lexical;
    }
    if (ch == '\n') c.fail("newline inside literal");
    if (ch == '\\') {
      ++c.pos;
      char e = c.peek();
      switch (e) {
        case 't': lexical += '\t'; ++c.pos; break;
        case 'b': lexical += '\b'; ++c.pos; break;
        case 'n': lexical += '\n'; ++c.pos; break;
        case 'r': lexical += '\r'; ++c.pos; break;
        case 'f': lexical += '\f'; ++c.pos; break;
        case '"': lexical += '"'; ++c.pos; break;
        case '\'': lexical += '\''; ++c.pos; break;
        case '\\': lexical += '\\'; ++c.pos; break;
        case 'u':
        case 'U': append_utf8(lexical, scan_uchar(c)); break;
        default: c.fail("unknown escape sequence in literal");
      }
      continue;
    }
    lexical += ch;
    ++c.pos;
  }
}

std::string scan_language(Cursor& c) {
  if (c.peek() != '@') c.fail("expected '@'");
  ++c.pos;
  std::size_t start = c.pos;
  while (!c.done()) {
    char ch = c.peek();
    bool alpha = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
    bool digit = ch >= '0' && ch <= '9';
    if (alpha || (c.pos > start && (digit || ch == '-'))) {
      ++c.pos;
    } else {
      break;
    }
  }
  if (c.pos == start) c.fail("empty language tag");
  return std::string(c.text.substr(start, c.pos - start));
}

Constant scan_literal(Cursor& c) {
  std::string lexical = scan_quoted(c);
  if (c.peek() == '@') {
    std::string language = scan_language(c);
    return Constant::literal(lexical, {}, language);
  }
  if (c.peek() == '^' && c.peek(1) == '^') {
    c.pos += 2;
    std::string datatype = scan_iri_ref(c);
    return Constant::literal(lexical, datatype);
  }
  return Constant::literal(lexical);
}

Constant scan_constant(Cursor& c) {
  switch (c.peek()) {
    case '<': return Constant::iri(scan_iri_ref(c));
    case '_': return Constant::blank(scan_blank_label(c));
    case '"': return scan_literal(c);
    default: c.fail("expected an IRI, blank node or literal");
  }
}

}  // namespace detail
}  // namespace quadchase
