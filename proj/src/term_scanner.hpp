#pragma once

// Lexical scanning of N-Quads terms, shared by the N-Quads reader and
// Constant::parse. Internal to the library.

#include <cstddef>
#include <string>
#include <string_view>

#include "quadchase/term.hpp"

namespace quadchase::detail {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  /// Offset of `text[0]` within its line, so columns stay correct when the
  /// cursor runs over a slice.
  std::size_t column_base = 0;

  bool done() const { return pos >= text.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < text.size() ? text[pos + ahead] : '\0';
  }
  std::size_t column() const { return column_base + pos + 1; }
  [[noreturn]] void fail(const std::string& message) const;
  void skip_blanks();
};

void append_utf8(std::string& out, char32_t cp);

std::string scan_iri_ref(Cursor& c);
std::string scan_blank_label(Cursor& c);
/// Scans `"..."` and returns the unescaped lexical form.
std::string scan_quoted(Cursor& c);
/// Scans `@tag`; returns the tag without `@`.
std::string scan_language(Cursor& c);
/// Scans `"..."` plus an optional language tag or `^^<datatype>`.
Constant scan_literal(Cursor& c);
/// Dispatches on the first character: `<`, `_:` or `"`.
Constant scan_constant(Cursor& c);

bool is_name_start(char ch);
bool is_name_char(char ch);

}  // namespace quadchase::detail
