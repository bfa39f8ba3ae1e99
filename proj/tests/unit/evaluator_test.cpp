#include "evaluator.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using esdown::testing::EvalOutcome;
using esdown::testing::evaluate;

namespace {

std::vector<std::string> run_log(const std::string& src) {
  EvalOutcome out = evaluate(src);
  CAPTURE(out.error);
  REQUIRE(out.ok());
  return out.log;
}

}  // namespace

TEST_CASE("evaluator: arithmetic and coercion") {
  CHECK(run_log("log(1 + 2);") == std::vector<std::string>{"3"});
  CHECK(run_log("log(\"a\" + 1);") == std::vector<std::string>{"a1"});
  CHECK(run_log("log(1 + \"2\");") == std::vector<std::string>{"12"});
  CHECK(run_log("log(true + 1);") == std::vector<std::string>{"2"});
  CHECK(run_log("log(7 % 3, -7 % 3);") == std::vector<std::string>{"1 -1"});
  CHECK(run_log("log(2 ** 10);") == std::vector<std::string>{"1024"});
  CHECK(run_log("log(2 ** 3 ** 2);") == std::vector<std::string>{"512"});
  CHECK(run_log("log(1 / 0, -1 / 0);") == std::vector<std::string>{"Infinity -Infinity"});
  CHECK(run_log("log(0 / 0);") == std::vector<std::string>{"NaN"});
  CHECK(run_log("log(\"10\" < \"9\", 10 < 9);") == std::vector<std::string>{"true false"});
  CHECK(run_log("log(-0);") == std::vector<std::string>{"0"});
}

TEST_CASE("evaluator: equality and the x == null idiom") {
  CHECK(run_log("log(null == undefined, null === undefined);") ==
        std::vector<std::string>{"true false"});
  // the nullish/optional lowering leans on `x == null` matching exactly
  // undefined and null, and nothing else falsy
  CHECK(run_log("log(undefined == null, null == null);") ==
        std::vector<std::string>{"true true"});
  CHECK(run_log("log(0 == null, \"\" == null, false == null);") ==
        std::vector<std::string>{"false false false"});
  CHECK(run_log("var o = {}; log(o == null);") == std::vector<std::string>{"false"});
  CHECK(run_log("log(1 == \"1\", 1 === \"1\");") == std::vector<std::string>{"true false"});
  CHECK(run_log("log(NaN === NaN);") == std::vector<std::string>{"false"});
}

TEST_CASE("evaluator: truthiness, logical operators, typeof") {
  CHECK(run_log("log(0 || \"fallback\", 1 || \"x\");") ==
        std::vector<std::string>{"fallback 1"});
  CHECK(run_log("log(0 && 1, 2 && 3);") == std::vector<std::string>{"0 3"});
  CHECK(run_log("log(0 ?? 5, null ?? 5, undefined ?? 5);") ==
        std::vector<std::string>{"0 5 5"});
  CHECK(run_log("log(typeof 1, typeof \"s\", typeof undefined);") ==
        std::vector<std::string>{"number string undefined"});
  CHECK(run_log("log(typeof null, typeof {}, typeof log);") ==
        std::vector<std::string>{"object object function"});
  CHECK(run_log("log(typeof nothere);") == std::vector<std::string>{"undefined"});
  CHECK(run_log("log(void 0);") == std::vector<std::string>{"undefined"});
}

TEST_CASE("evaluator: var hoisting and function declarations") {
  CHECK(run_log("log(x); var x = 1; log(x);") == std::vector<std::string>{"undefined", "1"});
  CHECK(run_log("log(f()); function f() { return 4; }") == std::vector<std::string>{"4"});
  // `var` is function-scoped, so a block does not create a new binding
  CHECK(run_log("var x = 1; { var x = 2; } log(x);") == std::vector<std::string>{"2"});
}

TEST_CASE("evaluator: let and const are block scoped") {
  CHECK(run_log("let x = 1; { let x = 2; log(x); } log(x);") ==
        std::vector<std::string>{"2", "1"});
  CHECK(run_log("const a = 1; { const a = 2; log(a); } log(a);") ==
        std::vector<std::string>{"2", "1"});
  CHECK(run_log("let i = \"outer\"; for (let i = 0; i < 2; i = i + 1) { log(i); } log(i);") ==
        std::vector<std::string>{"0", "1", "outer"});
}

TEST_CASE("evaluator: closures and recursion") {
  CHECK(run_log("function counter() {\n"
                "  var n = 0;\n"
                "  return function() { n = n + 1; return n; };\n"
                "}\n"
                "var c = counter();\n"
                "c();\n"
                "log(c(), c());") == std::vector<std::string>{"2 3"});
  CHECK(run_log("function fact(n) { if (n <= 1) { return 1; } return n * fact(n - 1); }\n"
                "log(fact(6));") == std::vector<std::string>{"720"});
  // named function expressions can refer to themselves
  CHECK(run_log("var f = function go(n) { return n <= 0 ? \"done\" : go(n - 1); };\n"
                "log(f(3));") == std::vector<std::string>{"done"});
}

TEST_CASE("evaluator: objects and arrays") {
  CHECK(run_log("var o = { a: 1, \"b c\": 2 }; log(o.a, o[\"b c\"]);") ==
        std::vector<std::string>{"1 2"});
  CHECK(run_log("var o = {}; o.x = 5; o[\"y\"] = 6; log(o.x + o.y);") ==
        std::vector<std::string>{"11"});
  CHECK(run_log("var a = [1, 2, 3]; log(a[0], a[2], a[3], a.length);") ==
        std::vector<std::string>{"1 3 undefined 3"});
  CHECK(run_log("var a = [1]; a[3] = 9; log(a.length, a);") ==
        std::vector<std::string>{"4 1,,,9"});
  CHECK(run_log("var a = [1, 2, 3, 4]; log(a.slice(1), a.slice(1, 3), a.slice(-2));") ==
        std::vector<std::string>{"2,3,4 2,3 3,4"});
  CHECK(run_log("var a = [1]; log(a.push(2, 3), a);") == std::vector<std::string>{"3 1,2,3"});
  CHECK(run_log("var a = [1].concat([2, 3], 4); log(a, a.length);") ==
        std::vector<std::string>{"1,2,3,4 4"});
  CHECK(run_log("log([1, 2].join(\"-\"));") == std::vector<std::string>{"1-2"});
  CHECK(run_log("log([1, [2, 3]] + \"\");") == std::vector<std::string>{"1,2,3"});
  CHECK(run_log("log(Array.isArray([]), Array.isArray({}));") ==
        std::vector<std::string>{"true false"});
}

TEST_CASE("evaluator: functions, arguments, call and apply") {
  CHECK(run_log("function f(a, b) { return arguments.length; } log(f(1, 2, 3));") ==
        std::vector<std::string>{"3"});
  CHECK(run_log("function f() { return Array.prototype.slice.call(arguments, 1); }\n"
                "log(f(1, 2, 3));") == std::vector<std::string>{"2,3"});
  CHECK(run_log("function f(a, b) { return this.base + a + b; }\n"
                "log(f.call({ base: 10 }, 1, 2), f.apply({ base: 20 }, [1, 2]));") ==
        std::vector<std::string>{"13 23"});
  CHECK(run_log("var o = { v: 7, get: function() { return this.v; } }; log(o.get());") ==
        std::vector<std::string>{"7"});
  // a plain call leaves `this` undefined
  CHECK(run_log("function f() { return this === undefined; } log(f());") ==
        std::vector<std::string>{"true"});
}

TEST_CASE("evaluator: default, rest, spread") {
  CHECK(run_log("function f(a, b = a + 1) { return a + b; } log(f(1), f(1, 10), f(1, undefined));") ==
        std::vector<std::string>{"3 11 3"});
  CHECK(run_log("function f(a, ...rest) { return rest.length + \":\" + rest.join(\",\"); }\n"
                "log(f(1), f(1, 2, 3));") == std::vector<std::string>{"0: 2:2,3"});
  CHECK(run_log("function add3(a, b, c) { return a + b + c; }\n"
                "var args = [1, 2, 3];\n"
                "log(add3(...args));") == std::vector<std::string>{"6"});
  CHECK(run_log("var a = [2, 3]; log([1, ...a, 4]);") == std::vector<std::string>{"1,2,3,4"});
}

TEST_CASE("evaluator: arrow functions capture this lexically") {
  CHECK(run_log("var o = {\n"
                "  v: 3,\n"
                "  mk: function() { return () => this.v; }\n"
                "};\n"
                "log(o.mk()());") == std::vector<std::string>{"3"});
  CHECK(run_log("var f = (a, b) => a * b; log(f(3, 4));") == std::vector<std::string>{"12"});
  CHECK(run_log("var f = x => x + 1; log(f(1));") == std::vector<std::string>{"2"});
}

TEST_CASE("evaluator: template literals") {
  CHECK(run_log("var x = 2; log(`a${x}b${x + 1}c`);") == std::vector<std::string>{"a2b3c"});
  CHECK(run_log("log(`v=${[1, 2]} u=${undefined} n=${null}`);") ==
        std::vector<std::string>{"v=1,2 u=undefined n=null"});
}

TEST_CASE("evaluator: optional chaining and nullish semantics") {
  CHECK(run_log("var a = null; log(a?.b);") == std::vector<std::string>{"undefined"});
  CHECK(run_log("var a = { b: { c: 5 } }; log(a?.b.c);") == std::vector<std::string>{"5"});
  // the cut skips the whole tail of the chain
  CHECK(run_log("var a = null; log(a?.b.c);") == std::vector<std::string>{"undefined"});
  CHECK(run_log("var o = { m: function() { return this.v; }, v: 9 }; log(o.m?.());") ==
        std::vector<std::string>{"9"});
  CHECK(run_log("var o = {}; log(o.m?.());") == std::vector<std::string>{"undefined"});
  CHECK(run_log("var f = null; log(f?.(1));") == std::vector<std::string>{"undefined"});
  CHECK(run_log("var a = null; log(a?.[0]);") == std::vector<std::string>{"undefined"});
  CHECK(run_log("var xs = [[7]]; log(xs?.[0][0]);") == std::vector<std::string>{"7"});
  // short-circuit must not evaluate the rest of the chain
  CHECK(run_log("var n = 0;\n"
                "function bump() { n = n + 1; return 0; }\n"
                "var a = null;\n"
                "log(a?.[bump()], n);") == std::vector<std::string>{"undefined 0"});
  EvalOutcome bad = evaluate("var o = undefined; o.m?.();");
  CHECK(bad.threw);
  CHECK(bad.error.find("TypeError") != std::string::npos);
}

TEST_CASE("evaluator: classes") {
  CHECK(run_log("class P {\n"
                "  constructor(x) { this.x = x; }\n"
                "  show() { return \"P\" + this.x; }\n"
                "}\n"
                "log(new P(1).show());") == std::vector<std::string>{"P1"});
  CHECK(run_log("class A {\n"
                "  constructor(x) { this.x = x; }\n"
                "  name() { return \"A\" + this.x; }\n"
                "}\n"
                "class B extends A {\n"
                "  constructor(x) { super(x * 2); }\n"
                "  name() { return \"B/\" + super.name(); }\n"
                "}\n"
                "log(new B(3).name());") == std::vector<std::string>{"B/A6"});
  // a derived class without a constructor forwards its arguments
  CHECK(run_log("class A { constructor(x) { this.x = x; } }\n"
                "class B extends A { }\n"
                "log(new B(5).x);") == std::vector<std::string>{"5"});
  CHECK(run_log("class C { static make() { return new C(); } tag() { return \"c\"; } }\n"
                "log(C.make().tag());") == std::vector<std::string>{"c"});
  CHECK(run_log("class A { m() { return 1; } }\n"
                "var a = new A();\n"
                "log(a.m === A.prototype.m, a.constructor === A);") ==
        std::vector<std::string>{"true true"});
}

TEST_CASE("evaluator: prototypes via plain functions") {
  // the ES5 shape that the class lowering produces must work as-is
  CHECK(run_log("function Animal(name) { this.name = name; }\n"
                "Animal.prototype.speak = function() { return this.name + \" speaks\"; };\n"
                "function Dog(name) { Animal.call(this, name); }\n"
                "function Hop() { }\n"
                "Hop.prototype = Animal.prototype;\n"
                "Dog.prototype = new Hop();\n"
                "Dog.prototype.constructor = Dog;\n"
                "log(new Dog(\"rex\").speak());") == std::vector<std::string>{"rex speaks"});
}

TEST_CASE("evaluator: exceptions") {
  CHECK(run_log("try { throw new Error(\"boom\"); } catch (e) { log(e.message); }") ==
        std::vector<std::string>{"boom"});
  CHECK(run_log("function f() { throw \"plain\"; }\n"
                "try { f(); } catch (e) { log(e); }\n"
                "log(\"after\");") == std::vector<std::string>{"plain", "after"});
  EvalOutcome out = evaluate("throw new Error(\"unhandled\");");
  CHECK(out.threw);
  CHECK(out.error == "Error: unhandled");
  EvalOutcome ref = evaluate("missing();");
  CHECK(ref.threw);
  CHECK(ref.error.find("ReferenceError") != std::string::npos);
}

TEST_CASE("evaluator: generators") {
  CHECK(run_log("function* g() { yield 1; yield 2; }\n"
                "var it = g();\n"
                "var r = it.next();\n"
                "log(r.value, r.done);\n"
                "r = it.next();\n"
                "log(r.value, r.done);\n"
                "r = it.next();\n"
                "log(r.value, r.done);\n"
                "r = it.next();\n"
                "log(r.value, r.done);") ==
        std::vector<std::string>{"1 false", "2 false", "undefined true", "undefined true"});
  // values passed to next() resume the yield expression
  CHECK(run_log("function* g() { var got = yield \"first\"; yield got * 2; }\n"
                "var it = g();\n"
                "log(it.next().value);\n"
                "log(it.next(21).value);") == std::vector<std::string>{"first", "42"});
  // return inside a generator ends it with that value
  CHECK(run_log("function* g() { yield 1; return 9; yield 2; }\n"
                "var it = g();\n"
                "log(it.next().value);\n"
                "var r = it.next();\n"
                "log(r.value, r.done);\n"
                "r = it.next();\n"
                "log(r.value, r.done);") ==
        std::vector<std::string>{"1", "9 true", "undefined true"});
  CHECK(run_log("function* range(n) {\n"
                "  let i = 0;\n"
                "  while (i < n) {\n"
                "    yield i;\n"
                "    i = i + 1;\n"
                "  }\n"
                "}\n"
                "var it = range(3);\n"
                "var r = it.next();\n"
                "var total = 0;\n"
                "while (!r.done) {\n"
                "  total = total + r.value;\n"
                "  r = it.next();\n"
                "}\n"
                "log(total);") == std::vector<std::string>{"3"});
  // generator objects are spreadable
  CHECK(run_log("function* g() { yield 1; yield 2; }\n"
                "log([0, ...g(), 3]);") == std::vector<std::string>{"0,1,2,3"});
  // a generator body that throws finishes the iterator
  CHECK(run_log("function* g() { yield 1; throw new Error(\"mid\"); }\n"
                "var it = g();\n"
                "log(it.next().value);\n"
                "try { it.next(); } catch (e) { log(e.message); }\n"
                "var r = it.next();\n"
                "log(r.value, r.done);") ==
        std::vector<std::string>{"1", "mid", "undefined true"});
}

TEST_CASE("evaluator: abandoned generators do not hang teardown") {
  CHECK(run_log("function* g() { yield 1; yield 2; yield 3; }\n"
                "var it = g();\n"
                "log(it.next().value);") == std::vector<std::string>{"1"});
  // never started at all
  CHECK(run_log("function* g() { yield 1; } var it = g(); log(\"ok\");") ==
        std::vector<std::string>{"ok"});
  // one generator suspended while driving another
  CHECK(run_log("function* inner() { yield \"a\"; yield \"b\"; }\n"
                "function* outer() {\n"
                "  var it = inner();\n"
                "  yield it.next().value;\n"
                "  yield it.next().value;\n"
                "}\n"
                "var o = outer();\n"
                "log(o.next().value);") == std::vector<std::string>{"a"});
}

TEST_CASE("evaluator: async functions and promises") {
  // an async body runs synchronously up to the first await
  CHECK(run_log("async function f() {\n"
                "  log(\"inside\");\n"
                "  var v = await 20;\n"
                "  log(\"resumed\");\n"
                "  return v + 1;\n"
                "}\n"
                "log(\"before\");\n"
                "f().then(function(v) { log(\"got\", v); });\n"
                "log(\"after\");") ==
        std::vector<std::string>{"before", "inside", "after", "resumed", "got 21"});
  CHECK(run_log("async function a() { return 1; }\n"
                "async function b() { var v = await a(); return v + 1; }\n"
                "b().then(function(v) { log(v); });") == std::vector<std::string>{"2"});
  CHECK(run_log("async function f() { throw new Error(\"nope\"); }\n"
                "f().then(function(v) { log(\"ok\", v); }, function(e) { log(\"err\", e.message); });") ==
        std::vector<std::string>{"err nope"});
  CHECK(run_log("var p = new Promise(function(resolve, reject) { resolve(5); });\n"
                "p.then(function(v) { log(v); });\n"
                "log(\"sync\");") == std::vector<std::string>{"sync", "5"});
  CHECK(run_log("Promise.resolve(1).then(function(v) { return v + 1; }).then(function(v) { log(v); });") ==
        std::vector<std::string>{"2"});
  CHECK(run_log("Promise.reject(\"bad\").then(undefined, function(e) { log(\"caught\", e); });") ==
        std::vector<std::string>{"caught bad"});
  // awaiting a rejected promise rejects the async function's promise
  CHECK(run_log("async function f() { await Promise.reject(new Error(\"x\")); return 1; }\n"
                "f().then(function() { log(\"no\"); }, function(e) { log(\"rejected\", e.message); });") ==
        std::vector<std::string>{"rejected x"});
  // async arrow functions work too
  CHECK(run_log("var f = async (x) => (await x) + 1;\n"
                "f(41).then(function(v) { log(v); });") == std::vector<std::string>{"42"});
}

TEST_CASE("evaluator: async methods and generator methods") {
  CHECK(run_log("class Box {\n"
                "  constructor(v) { this.v = v; }\n"
                "  async read() { return await this.v; }\n"
                "  *pair() { yield this.v; yield this.v + 1; }\n"
                "}\n"
                "var b = new Box(7);\n"
                "log([...b.pair()]);\n"
                "b.read().then(function(v) { log(\"read\", v); });") ==
        std::vector<std::string>{"7,8", "read 7"});
}

TEST_CASE("evaluator: runaway recursion is cut off") {
  EvalOutcome out = evaluate("function f() { return f(); } f();");
  CHECK(out.threw);
  CHECK(out.error.find("call depth") != std::string::npos);
}

TEST_CASE("evaluator: parse failures are reported, not crashed on") {
  EvalOutcome out = evaluate("var = 1;");
  CHECK(out.threw);
  CHECK(out.error.find("SYNTAX_ERR") != std::string::npos);
}
