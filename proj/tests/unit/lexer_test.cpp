#include <doctest.h>

#include "esdown/lexer.hpp"

using namespace esdown;

namespace {

std::vector<Token> lex_ok(std::string_view src) {
  auto r = lex(src);
  REQUIRE_MESSAGE(r.ok(), "lex failed: ", r.diagnostics.empty() ? "?" : r.diagnostics.front().message);
  return std::move(r.tokens);
}

}  // namespace

TEST_CASE("maximal munch on multi-char operators") {
  auto toks = lex_ok("a?.b");
  REQUIRE(toks.size() == 4);  // ident ?. ident eof
  CHECK(toks[0].kind == TokenKind::Identifier);
  CHECK(toks[1].text == "?.");
  CHECK(toks[2].text == "b");

  toks = lex_ok("x ** y");
  REQUIRE(toks.size() == 4);
  CHECK(toks[1].text == "**");

  toks = lex_ok("x **= 2");
  CHECK(toks[1].text == "**=");

  toks = lex_ok("a === b !== c");
  CHECK(toks[1].text == "===");
  CHECK(toks[3].text == "!==");
}

TEST_CASE("?. followed by a digit lexes as conditional then number") {
  auto toks = lex_ok("a ? .5 : 0");
  REQUIRE(toks.size() == 6);
  CHECK(toks[1].text == "?");
  CHECK(toks[2].kind == TokenKind::Number);
  CHECK(toks[2].text == "0.5");
  CHECK(toks[3].text == ":");
  CHECK(toks[4].text == "0");
}

TEST_CASE("numbers canonicalize to shortest round-trip form") {
  CHECK(lex_ok("1e3")[0].text == "1000");
  CHECK(lex_ok(".5")[0].text == "0.5");
  CHECK(lex_ok("2.50")[0].text == "2.5");
  CHECK(lex_ok("0")[0].text == "0");
  CHECK(lex_ok("0.1")[0].text == "0.1");
  CHECK(lex_ok("3")[0].text == "3");
}

TEST_CASE("strings cook escapes; templates stay raw") {
  auto toks = lex_ok("\"a\\n\\\"b\"");
  CHECK(toks[0].kind == TokenKind::String);
  CHECK(toks[0].text == "a\n\"b");

  toks = lex_ok("`x${a + 1}y`");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].kind == TokenKind::Template);
  CHECK(toks[0].text == "x${a + 1}y");
}

TEST_CASE("template splitting handles nesting and escapes") {
  auto segs = split_template("x${a + `q${b}`}y");
  REQUIRE(segs.size() == 3);
  CHECK(!segs[0].is_expr);
  CHECK(segs[0].text == "x");
  CHECK(segs[1].is_expr);
  CHECK(segs[1].text == "a + `q${b}`");
  CHECK(!segs[2].is_expr);
  CHECK(segs[2].text == "y");

  segs = split_template("a\\${not}b");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].text == "a\\${not}b");

  segs = split_template("${x}${y}");
  REQUIRE(segs.size() == 5);  // "", x, "", y, ""
  CHECK(segs[0].text.empty());
  CHECK(segs[1].text == "x");
  CHECK(segs[2].text.empty());
  CHECK(segs[3].text == "y");
  CHECK(segs[4].text.empty());
}

TEST_CASE("lex errors carry codes and positions") {
  auto r = lex("var s = \"abc");
  REQUIRE(!r.ok());
  CHECK(r.diagnostics[0].code == DiagCode::UnterminatedString);

  r = lex("var t = `abc${x}");
  REQUIRE(!r.ok());
  CHECK(r.diagnostics[0].code == DiagCode::UnterminatedTemplate);

  r = lex("a # b");
  REQUIRE(!r.ok());
  CHECK(r.diagnostics[0].code == DiagCode::UnknownCharacter);
  CHECK(r.diagnostics[0].span.line == 1);
  CHECK(r.diagnostics[0].span.column == 3);
}

TEST_CASE("comments are skipped; spans track lines") {
  auto toks = lex_ok("// lead\nvar /* mid */ x = 1; /* tail */");
  REQUIRE(toks.size() == 6);
  CHECK(toks[0].text == "var");
  CHECK(toks[0].span.line == 2);
  CHECK(toks[1].text == "x");
  CHECK(toks[1].span.column == 15);
}

TEST_CASE("keywords vs identifiers") {
  auto toks = lex_ok("async awaits classic let letter");
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[1].kind == TokenKind::Identifier);  // 'awaits' is not 'await'
  CHECK(toks[2].kind == TokenKind::Identifier);
  CHECK(toks[3].kind == TokenKind::Keyword);
  CHECK(toks[4].kind == TokenKind::Identifier);
  CHECK(is_reserved_unsupported("switch"));
  CHECK(is_reserved_unsupported("instanceof"));
  CHECK(!is_reserved_unsupported("await"));
}
