#include <doctest.h>

#include "esdown/codegen.hpp"
#include "esdown/parser.hpp"

using namespace esdown;

namespace {

ScriptNode parse_ok(std::string_view src) {
  auto r = parse(src, "test.js", ParseOptions{.allow_reserved = true});
  REQUIRE_MESSAGE(r.ok(), "parse failed: ",
                  r.diagnostics.empty() ? "?" : r.diagnostics.front().message);
  return std::move(*r.script);
}

std::string reprint(std::string_view src) { return print_script(parse_ok(src)); }

// print ∘ parse must be a fixpoint after one application, and the reparse
// must agree structurally and in features.
void check_roundtrip(std::string_view src) {
  auto first = parse_ok(src);
  std::string printed = print_script(first);
  auto second_result = parse(printed, "test.js", ParseOptions{.allow_reserved = true});
  REQUIRE_MESSAGE(second_result.ok(), "reparse failed on:\n", printed, "\nerror: ",
                  second_result.diagnostics.empty() ? "?"
                                                    : second_result.diagnostics.front().message);
  auto& second = *second_result.script;
  CHECK_MESSAGE(equal(*first.root, *second.root), "tree changed across print/parse:\n", printed);
  CHECK(first.features == second.features);
  CHECK(print_script(second) == printed);
}

}  // namespace

TEST_CASE("canonical fixpoints") {
  CHECK(reprint("var x = 1;") == "var x = 1;\n");
  CHECK(reprint("var   x=1 ;") == "var x = 1;\n");
  CHECK(reprint("f ( a,b ) ;") == "f(a, b);\n");
}

TEST_CASE("precedence-minimal parentheses") {
  CHECK(reprint("var v = a == null ? void 0 : a.b;") == "var v = a == null ? void 0 : a.b;\n");
  CHECK(reprint("var v = (a + b) * c;") == "var v = (a + b) * c;\n");
  CHECK(reprint("var v = a + b * c;") == "var v = a + b * c;\n");
  CHECK(reprint("var v = (a ** b) ** c;") == "var v = (a ** b) ** c;\n");
  CHECK(reprint("var v = a ** b ** c;") == "var v = a ** b ** c;\n");
  CHECK(reprint("var v = (-a) ** b;") == "var v = (-a) ** b;\n");
  CHECK(reprint("var v = a ?? b ?? c;") == "var v = a ?? b ?? c;\n");
  CHECK(reprint("var v = (a && b) ?? c;") == "var v = (a && b) ?? c;\n");
  CHECK(reprint("var v = a ?? (b || c);") == "var v = a ?? (b || c);\n");
  CHECK(reprint("var v = a && b || c && d;") == "var v = a && b || c && d;\n");
  CHECK(reprint("var v = a && (b || c);") == "var v = a && (b || c);\n");
  CHECK(reprint("var v = (a ? b : c) ? d : e;") == "var v = (a ? b : c) ? d : e;\n");
  CHECK(reprint("var v = a ? b : c ? d : e;") == "var v = a ? b : c ? d : e;\n");
  CHECK(reprint("var v = -(a + b);") == "var v = -(a + b);\n");
  CHECK(reprint("var v = - -a;") == "var v = - -a;\n");
  CHECK(reprint("var v = !!a;") == "var v = !!a;\n");
  CHECK(reprint("var v = typeof f();") == "var v = typeof f();\n");
  CHECK(reprint("var v = (x = 1) ? a : b;") == "var v = (x = 1) ? a : b;\n");
  CHECK(reprint("(function() {\n})();") == "(function() {\n}());\n");
  CHECK(reprint("var v = (1).toFixed(2);") == "var v = (1).toFixed(2);\n");
  CHECK(reprint("new (f())(1);") == "new (f())(1);\n");
  CHECK(reprint("var v = new a.B(1).c;") == "var v = new a.B(1).c;\n");
}

TEST_CASE("statement-position ambiguity guards") {
  CHECK(reprint("({ a: 1 }).m();") == "({ a: 1 }.m());\n");
  auto s = parse_ok("var f = function() {\n  return 1;\n};\nf();");
  CHECK(print_script(s) == "var f = function() {\n  return 1;\n};\nf();\n");
}

TEST_CASE("string and number canonicalization") {
  CHECK(reprint("var s = 'a\\n\"b';") == "var s = \"a\\n\\\"b\";\n");
  CHECK(reprint("var n = 1e3;") == "var n = 1000;\n");
  CHECK(reprint("var n = .5;") == "var n = 0.5;\n");
  CHECK(reprint("var n = 010.50;") == "var n = 10.5;\n");
}

TEST_CASE("template printing with escapes and nesting") {
  CHECK(reprint("var t = `a${x}b`;") == "var t = `a${x}b`;\n");
  CHECK(reprint("var t = `\\`${x}\\${y`;") == "var t = `\\`${x}\\${y`;\n");
  check_roundtrip("var t = `a${`b${c}d`}e`;");
  check_roundtrip("var t = `multi\nline ${a + b} text`;");
}

TEST_CASE("round-trip across the construct zoo") {
  const char* sources[] = {
      "var x = 1;",
      "let x = 1;",
      "const k = { a: 1, \"b c\": 2, 3: [1, 2, ...rest] };",
      "function f(a, b = a + 1, ...r) {\n  return r;\n}",
      "var g = async (u) => (await u) ** 2;",
      "var h = (x) => ({ v: x });",
      "var i = (x) => x + 1;",
      "class A extends mix(B) {\n  constructor(x) {\n    super(x);\n    this.x = x;\n  }\n"
      "  m() {\n    return super.m() + 1;\n  }\n  static s() {\n    return 2;\n  }\n"
      "  *gen() {\n    yield 1;\n  }\n  async a() {\n    return await p;\n  }\n}",
      "function* g() {\n  var x = yield 1;\n  yield x;\n}",
      "if (a) {\n  f();\n} else if (b) {\n  g();\n} else {\n  h();\n}",
      "while (a < 10) {\n  a = a + 1;\n}",
      "for (var i = 0; i < n; i = i + 1) {\n  total = total + i;\n}",
      "for (;;) {\n  f();\n}",
      "try {\n  risky();\n} catch (e) {\n  report(e);\n}",
      "throw new Error(\"x\");",
      "var t = `a${x}${y}b`;",
      "var opt = a?.b?.[i]?.(c);",
      "var nn = a.b ?? c[0] ?? 0;",
      "var neg = -x;",
      "var obj = { nested: { deep: [1, [2, 3]] } };",
      "f(function() {\n  return 1;\n}, () => 2);",
      "x.y.z[0].w = f(g(h(1)));",
      "var cmp = a < b === c > d;",
      "var m = a % b * c / d;",
      "var u = void 0;",
      "var tn = typeof null;",
      "a = b = c;",
      "x += 1;",
      "x **= 2;",
      "this.k = 1;",
  };
  for (const char* src : sources) check_roundtrip(src);
}

TEST_CASE("print is deterministic and pure") {
  auto s = parse_ok("class A {\n  m() {\n    return `x${this.v ?? 0}`;\n  }\n}");
  auto before = clone(*s.root);
  auto a = print_script(s);
  auto b = print_script(s);
  CHECK(a == b);
  CHECK(equal(*before, *s.root));
}

TEST_CASE("helper prelude precedes the body") {
  auto s = parse_ok("var x = 1;");
  std::string helper = "function $id(v) { return v; }";
  auto out = print_script_with_prelude(s, {helper});
  CHECK(out == "function $id(v) {\n  return v;\n}\nvar x = 1;\n");
}

TEST_CASE("indentation nests correctly") {
  auto s = parse_ok("function outer() { function inner() { if (a) { return 1; } } }");
  CHECK(print_script(s) ==
        "function outer() {\n"
        "  function inner() {\n"
        "    if (a) {\n"
        "      return 1;\n"
        "    }\n"
        "  }\n"
        "}\n");
}
