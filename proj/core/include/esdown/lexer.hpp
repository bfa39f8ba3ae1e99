#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esdown/diagnostics.hpp"

namespace esdown {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  Number,    // text is the canonical (shortest round-trip) spelling
  String,    // text is the cooked value, quotes and escapes resolved
  Template,  // text is the raw content between the backticks
  Punct,
  Eof,
};

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
};

struct LexResult {
  std::vector<Token> tokens;  // ends with Eof on success
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

LexResult lex(std::string_view source);

bool is_keyword(std::string_view word);

/// Keywords for constructs MiniES deliberately lacks (switch, break, ...).
/// The parser turns these into UNSUPPORTED_CONSTRUCT instead of misparsing.
bool is_reserved_unsupported(std::string_view word);

/// Resolve string/template escapes. Returns the cooked text, or nullopt with
/// `err_offset` pointing at the offending backslash.
std::optional<std::string> cook_escapes(std::string_view raw, std::size_t* err_offset);

// One piece of a template literal: either raw text or the source of a
// substitution expression. `offset` indexes into the raw template content.
struct TemplateSegment {
  bool is_expr;
  std::string_view text;
  std::size_t offset;
};

/// Split raw template content into text chunks and `${...}` expression
/// sources. The content was already brace/quote-matched by the lexer, so this
/// cannot fail on lexer-produced input.
std::vector<TemplateSegment> split_template(std::string_view raw);

/// Advance a span across `text` (tracks newlines).
Span advance_span(Span start, std::string_view text);

/// Canonical MiniES numeric spelling: shortest text that round-trips the
/// double, with "-0" folded to "0". Empty optional if `text` is not a number.
std::optional<std::string> canonical_number(std::string_view text);

}  // namespace esdown
