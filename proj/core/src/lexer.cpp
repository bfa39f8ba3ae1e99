#include "esdown/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace esdown {

namespace {

constexpr std::array<std::string_view, 25> kKeywords = {
    "var",   "let",    "const",     "function", "class", "extends", "super",
    "this",  "true",   "false",     "null",     "undefined", "typeof", "void",
    "new",   "return", "if",        "else",     "while", "for",     "async",
    "await", "yield",  "static",    "throw",
};

// try/catch are keywords too; kept separate above only to keep rows aligned.
constexpr std::array<std::string_view, 2> kKeywords2 = {"try", "catch"};

constexpr std::array<std::string_view, 15> kReservedUnsupported = {
    "switch", "case",   "default",    "break", "continue", "do",   "finally", "import",
    "export", "delete", "instanceof", "in",    "of",       "with", "debugger",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_part(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool digit(char c) { return c >= '0' && c <= '9'; }

struct Scanner {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool at_end() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  Span here() const { return {line, col, pos}; }

  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  bool match(std::string_view text) {
    if (src.substr(pos, text.size()) != text) return false;
    for (std::size_t i = 0; i < text.size(); ++i) advance();
    return true;
  }
};

const std::array<std::string_view, 4> kPunct3 = {"**=", "===", "!==", "..."};
const std::array<std::string_view, 15> kPunct2 = {"**", "==", "!=", "<=", ">=", "+=", "-=",
                                                  "*=", "/=", "%=", "&&", "||", "??", "?.",
                                                  "=>"};
constexpr std::string_view kPunct1 = "()[]{},;:.?+-*/%<>=!";

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  for (auto k : kKeywords2)
    if (k == word) return true;
  return false;
}

bool is_reserved_unsupported(std::string_view word) {
  for (auto k : kReservedUnsupported)
    if (k == word) return true;
  return false;
}

std::optional<std::string> cook_escapes(std::string_view raw, std::size_t* err_offset) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 >= raw.size()) {
      if (err_offset) *err_offset = i;
      return std::nullopt;
    }
    char e = raw[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '0': out += '\0'; break;
      case '\\': out += '\\'; break;
      case '\'': out += '\''; break;
      case '"': out += '"'; break;
      case '`': out += '`'; break;
      case '$': out += '$'; break;
      case '\n': break;  // line continuation
      default:
        if (err_offset) *err_offset = i - 1;
        return std::nullopt;
    }
  }
  return out;
}

std::optional<std::string> canonical_number(std::string_view text) {
  std::string buf(text);
  const char* begin = buf.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + buf.size()) return std::nullopt;
  if (value == 0) return std::string("0");
  std::array<char, 64> out{};
  auto res = std::to_chars(out.data(), out.data() + out.size(), value);
  if (res.ec != std::errc()) return std::nullopt;
  return std::string(out.data(), res.ptr);
}

Span advance_span(Span start, std::string_view text) {
  for (char c : text) {
    ++start.offset;
    if (c == '\n') {
      ++start.line;
      start.column = 1;
    } else {
      ++start.column;
    }
  }
  return start;
}

namespace {

// Scans balanced `${`-expression content inside a template: counts braces,
// skips strings and nested templates. Returns false on EOF.
bool scan_template_body(Scanner& s, std::vector<Diagnostic>& diags);

bool scan_expr_in_template(Scanner& s, std::vector<Diagnostic>& diags) {
  int depth = 1;
  while (!s.at_end()) {
    char c = s.peek();
    if (c == '{') {
      ++depth;
      s.advance();
    } else if (c == '}') {
      --depth;
      s.advance();
      if (depth == 0) return true;
    } else if (c == '\'' || c == '"') {
      char quote = c;
      s.advance();
      while (!s.at_end() && s.peek() != quote && s.peek() != '\n') {
        if (s.peek() == '\\') s.advance();
        if (!s.at_end()) s.advance();
      }
      if (s.at_end() || s.peek() == '\n') {
        diags.push_back({DiagCode::UnterminatedString, "unterminated string literal", s.here()});
        return false;
      }
      s.advance();
    } else if (c == '`') {
      s.advance();
      if (!scan_template_body(s, diags)) return false;
    } else {
      s.advance();
    }
  }
  diags.push_back({DiagCode::UnterminatedTemplate, "unterminated template literal", s.here()});
  return false;
}

bool scan_template_body(Scanner& s, std::vector<Diagnostic>& diags) {
  while (!s.at_end()) {
    char c = s.peek();
    if (c == '`') {
      s.advance();
      return true;
    }
    if (c == '\\') {
      s.advance();
      if (!s.at_end()) s.advance();
      continue;
    }
    if (c == '$' && s.peek(1) == '{') {
      s.advance();
      s.advance();
      if (!scan_expr_in_template(s, diags)) return false;
      continue;
    }
    s.advance();
  }
  diags.push_back({DiagCode::UnterminatedTemplate, "unterminated template literal", s.here()});
  return false;
}

}  // namespace

std::vector<TemplateSegment> split_template(std::string_view raw) {
  std::vector<TemplateSegment> segments;
  std::size_t chunk_start = 0;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '\\') {
      i += 2;
      continue;
    }
    if (raw[i] == '$' && i + 1 < raw.size() && raw[i + 1] == '{') {
      segments.push_back({false, raw.substr(chunk_start, i - chunk_start), chunk_start});
      std::size_t expr_start = i + 2;
      int depth = 1;
      std::size_t j = expr_start;
      while (j < raw.size() && depth > 0) {
        char c = raw[j];
        if (c == '{') {
          ++depth;
        } else if (c == '}') {
          --depth;
        } else if (c == '\'' || c == '"') {
          char quote = c;
          ++j;
          while (j < raw.size() && raw[j] != quote) {
            if (raw[j] == '\\') ++j;
            ++j;
          }
        } else if (c == '`') {
          // nested template: skip to its matching backtick, honoring nesting
          int tdepth = 1;
          ++j;
          while (j < raw.size() && tdepth > 0) {
            if (raw[j] == '\\') {
              ++j;
            } else if (raw[j] == '`') {
              --tdepth;
            }
            ++j;
          }
          continue;
        }
        ++j;
      }
      segments.push_back({true, raw.substr(expr_start, j - expr_start - 1), expr_start});
      chunk_start = j;
      i = j;
      continue;
    }
    ++i;
  }
  segments.push_back({false, raw.substr(chunk_start), chunk_start});
  return segments;
}

LexResult lex(std::string_view source) {
  LexResult result;
  Scanner s{source};

  auto fail = [&](DiagCode code, std::string message, Span at) {
    result.diagnostics.push_back({code, std::move(message), at});
  };

  while (true) {
    // whitespace / comments
    while (!s.at_end()) {
      char c = s.peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        s.advance();
      } else if (c == '/' && s.peek(1) == '/') {
        while (!s.at_end() && s.peek() != '\n') s.advance();
      } else if (c == '/' && s.peek(1) == '*') {
        Span start = s.here();
        s.advance();
        s.advance();
        while (!s.at_end() && !(s.peek() == '*' && s.peek(1) == '/')) s.advance();
        if (s.at_end()) {
          fail(DiagCode::SyntaxError, "unterminated block comment", start);
          return result;
        }
        s.advance();
        s.advance();
      } else {
        break;
      }
    }

    if (s.at_end()) {
      result.tokens.push_back({TokenKind::Eof, "", s.here()});
      return result;
    }

    Span start = s.here();
    char c = s.peek();

    if (ident_start(c)) {
      std::size_t begin = s.pos;
      while (!s.at_end() && ident_part(s.peek())) s.advance();
      std::string word(source.substr(begin, s.pos - begin));
      TokenKind kind = (is_keyword(word) || is_reserved_unsupported(word)) ? TokenKind::Keyword
                                                                           : TokenKind::Identifier;
      result.tokens.push_back({kind, std::move(word), start});
      continue;
    }

    if (digit(c) || (c == '.' && digit(s.peek(1)))) {
      std::size_t begin = s.pos;
      while (!s.at_end() && digit(s.peek())) s.advance();
      if (!s.at_end() && s.peek() == '.') {
        s.advance();
        while (!s.at_end() && digit(s.peek())) s.advance();
      }
      if (!s.at_end() && (s.peek() == 'e' || s.peek() == 'E')) {
        s.advance();
        if (!s.at_end() && (s.peek() == '+' || s.peek() == '-')) s.advance();
        if (s.at_end() || !digit(s.peek())) {
          fail(DiagCode::SyntaxError, "malformed exponent in numeric literal", start);
          return result;
        }
        while (!s.at_end() && digit(s.peek())) s.advance();
      }
      if (!s.at_end() && ident_start(s.peek())) {
        fail(DiagCode::SyntaxError, "identifier character after numeric literal", s.here());
        return result;
      }
      auto canon = canonical_number(source.substr(begin, s.pos - begin));
      if (!canon) {
        fail(DiagCode::SyntaxError, "malformed numeric literal", start);
        return result;
      }
      result.tokens.push_back({TokenKind::Number, *canon, start});
      continue;
    }

    if (c == '\'' || c == '"') {
      char quote = c;
      s.advance();
      std::size_t begin = s.pos;
      while (!s.at_end() && s.peek() != quote && s.peek() != '\n') {
        if (s.peek() == '\\') s.advance();
        if (!s.at_end()) s.advance();
      }
      if (s.at_end() || s.peek() == '\n') {
        fail(DiagCode::UnterminatedString, "unterminated string literal", start);
        return result;
      }
      std::string_view raw = source.substr(begin, s.pos - begin);
      s.advance();  // closing quote
      std::size_t err_off = 0;
      auto cooked = cook_escapes(raw, &err_off);
      if (!cooked) {
        fail(DiagCode::SyntaxError, "invalid escape sequence",
             advance_span(Span{start.line, start.column + 1, begin}, raw.substr(0, err_off)));
        return result;
      }
      result.tokens.push_back({TokenKind::String, std::move(*cooked), start});
      continue;
    }

    if (c == '`') {
      s.advance();
      std::size_t begin = s.pos;
      if (!scan_template_body(s, result.diagnostics)) return result;
      std::string_view raw = source.substr(begin, s.pos - begin - 1);  // minus closing backtick
      result.tokens.push_back({TokenKind::Template, std::string(raw), start});
      continue;
    }

    // `?.` followed by a digit is a conditional before a fractional literal
    if (c == '?' && s.peek(1) == '.' && digit(s.peek(2))) {
      s.advance();
      result.tokens.push_back({TokenKind::Punct, "?", start});
      continue;
    }

    // `--a` would otherwise lex as double negation — reject it loudly
    if ((c == '+' && s.peek(1) == '+') || (c == '-' && s.peek(1) == '-')) {
      fail(DiagCode::UnsupportedConstruct,
           std::string("'") + c + c + "' increment/decrement is not supported", start);
      return result;
    }

    bool matched = false;
    for (auto p : kPunct3) {
      if (s.match(p)) {
        result.tokens.push_back({TokenKind::Punct, std::string(p), start});
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (auto p : kPunct2) {
      if (s.match(p)) {
        result.tokens.push_back({TokenKind::Punct, std::string(p), start});
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kPunct1.find(c) != std::string_view::npos) {
      s.advance();
      result.tokens.push_back({TokenKind::Punct, std::string(1, c), start});
      continue;
    }

    fail(DiagCode::UnknownCharacter, std::string("unexpected character '") + c + "'", start);
    return result;
  }
}

}  // namespace esdown
