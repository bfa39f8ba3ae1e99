#include <doctest.h>

#include "esdown/ast.hpp"
#include "esdown/parser.hpp"

using namespace esdown;

namespace {

ScriptNode parse_ok(std::string_view src) {
  auto r = parse(src, "test.js");
  REQUIRE_MESSAGE(r.ok(), "parse failed: ",
                  r.diagnostics.empty() ? "?" : r.diagnostics.front().message);
  return std::move(*r.script);
}

}  // namespace

TEST_CASE("traverse visits every node pre-order and counts") {
  auto single = make_node(NodeKind::Script);
  CHECK(traverse(*single, [](const Node&) { return VisitAction::Continue; }) == 1);

  // `a ** b;` — SCRIPT, EXPR_STMT, BINARY_OP, IDENTIFIER, IDENTIFIER
  auto s = parse_ok("a ** b;");
  CHECK(count_nodes(*s.root) == 5);
  std::vector<NodeKind> order;
  std::size_t visited = traverse(*s.root, [&](const Node& n) {
    order.push_back(n.kind);
    return VisitAction::Continue;
  });
  CHECK(visited == 5);
  REQUIRE(order.size() == 5);
  CHECK(order[0] == NodeKind::Script);
  CHECK(order[1] == NodeKind::ExprStmt);
  CHECK(order[2] == NodeKind::BinaryOp);
  CHECK(order[3] == NodeKind::Identifier);
  CHECK(order[4] == NodeKind::Identifier);
}

TEST_CASE("traverse skip-subtree suppresses children but counts the node") {
  auto s = parse_ok("{\n  var a = 1;\n  var b = 2;\n}");
  std::size_t visited = traverse(*s.root, [](const Node& n) {
    return n.kind == NodeKind::Block ? VisitAction::SkipSubtree : VisitAction::Continue;
  });
  CHECK(visited == 2);  // SCRIPT + BLOCK only
}

TEST_CASE("is_feature_node anchor table") {
  Node opt(NodeKind::OptionalChain);
  CHECK(is_feature_node(opt, Feature::OptionalChaining));
  CHECK(!is_feature_node(opt, Feature::Classes));

  Node ident(NodeKind::Identifier);
  CHECK(!is_feature_node(ident, Feature::Classes));

  Node compound(NodeKind::Assign);
  compound.token = "**=";
  CHECK(is_feature_node(compound, Feature::ExponentOperator));
  compound.token = "+=";
  CHECK(!is_feature_node(compound, Feature::ExponentOperator));

  Node fn(NodeKind::FunctionDecl);
  CHECK(!is_feature_node(fn, Feature::AsyncFunctions));
  fn.flags |= kFlagAsync;
  CHECK(is_feature_node(fn, Feature::AsyncFunctions));
  fn.flags |= kFlagGenerator;
  CHECK(is_feature_node(fn, Feature::Generators));

  // async arrows and generator methods anchor those features too
  Node arrow(NodeKind::ArrowFunction);
  arrow.flags |= kFlagAsync;
  CHECK(is_feature_node(arrow, Feature::AsyncFunctions));
  CHECK(is_feature_node(arrow, Feature::ArrowFunctions));
  Node method(NodeKind::Method);
  method.flags |= kFlagGenerator;
  CHECK(is_feature_node(method, Feature::Generators));

  Node let_decl(NodeKind::LetDecl);
  Node const_decl(NodeKind::ConstDecl);
  CHECK(is_feature_node(let_decl, Feature::BlockScopedDeclarations));
  CHECK(is_feature_node(const_decl, Feature::BlockScopedDeclarations));
}

TEST_CASE("scan_features matches the per-node anchor union") {
  CHECK(scan_features(*parse_ok("var x = 1;").root) == FeatureSet{});

  auto s = parse_ok("const f = async (a = 1) => a ?? 0;");
  FeatureSet expected{Feature::BlockScopedDeclarations, Feature::AsyncFunctions,
                      Feature::ArrowFunctions, Feature::DefaultParameters,
                      Feature::NullishCoalescing};
  CHECK(scan_features(*s.root) == expected);

  auto chained = parse_ok("var v = a?.b;");
  CHECK(scan_features(*chained.root).contains(Feature::OptionalChaining));
  CHECK(!scan_features(*chained.root).contains(Feature::Classes));
}

TEST_CASE("scan_features equals an independent accumulate-during-traverse oracle") {
  const char* sources[] = {
      "var x = 2 ** 3;",
      "async function f() { await g(...xs); }",
      "class A { constructor(x) { this.x = x; } m() { return this.x; } }",
      "let t = `a${x}b`;",
      "function f(a, ...r) { return r; }",
      "function* g() { yield 1; }",
  };
  for (const char* src : sources) {
    auto s = parse_ok(src);
    FeatureSet oracle;
    traverse(*s.root, [&](const Node& n) {
      for (int i = 0; i < kFeatureCount; ++i) {
        auto f = static_cast<Feature>(i);
        if (is_feature_node(n, f)) oracle = oracle.with(f);
      }
      return VisitAction::Continue;
    });
    CHECK(scan_features(*s.root) == oracle);
  }
}

TEST_CASE("scan_features is pure and idempotent") {
  auto s = parse_ok("async function f() { await g(...xs); }");
  auto before = clone(*s.root);
  auto first = scan_features(*s.root);
  auto second = scan_features(*s.root);
  CHECK(first == second);
  CHECK(equal(*before, *s.root));
}

TEST_CASE("scan-counter instrumentation advances per call") {
  auto s = parse_ok("var x = 1;");
  auto before = scan_feature_call_count();
  scan_features(*s.root);
  scan_features(*s.root);
  CHECK(scan_feature_call_count() == before + 2);
}

TEST_CASE("clone and structural equality ignore spans") {
  auto s = parse_ok("function f(a) {\n  return a + 1;\n}");
  auto copy = clone(*s.root);
  CHECK(equal(*s.root, *copy));
  copy->children[0]->span.line = 99;  // spans are not part of equality
  CHECK(equal(*s.root, *copy));
  copy->children[0]->token = "g";
  CHECK(!equal(*s.root, *copy));
}

TEST_CASE("kind-arity contracts accept parser output") {
  auto s = parse_ok(
      "var a = [1, 2];\n"
      "function f(x, y) {\n"
      "  if (x < y) {\n"
      "    return { k: x };\n"
      "  }\n"
      "  return y;\n"
      "}\n"
      "f(a[0], a[1]);");
  traverse(*s.root, [](const Node& n) {
    CHECK(check_node_shape(n).empty());
    return VisitAction::Continue;
  });
}

TEST_CASE("kind-arity contracts reject malformed nodes") {
  Node bad(NodeKind::If);
  CHECK(!check_node_shape(bad).empty());  // needs at least cond+then
  Node ident(NodeKind::Identifier);
  CHECK(!check_node_shape(ident).empty());  // token required
  ident.token = "x";
  CHECK(check_node_shape(ident).empty());
}
