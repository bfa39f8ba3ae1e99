#include "esdown/ast.hpp"

#include <atomic>

namespace esdown {

namespace {

std::atomic<std::uint64_t> g_scan_calls{0};

bool is_function_kind(NodeKind k) {
  return k == NodeKind::FunctionDecl || k == NodeKind::FunctionExpr ||
         k == NodeKind::ArrowFunction || k == NodeKind::Method;
}

}  // namespace

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Script: return "SCRIPT";
    case NodeKind::VarDecl: return "VAR_DECL";
    case NodeKind::LetDecl: return "LET_DECL";
    case NodeKind::ConstDecl: return "CONST_DECL";
    case NodeKind::FunctionDecl: return "FUNCTION_DECL";
    case NodeKind::FunctionExpr: return "FUNCTION_EXPR";
    case NodeKind::ArrowFunction: return "ARROW_FUNCTION";
    case NodeKind::ClassDecl: return "CLASS_DECL";
    case NodeKind::Method: return "METHOD";
    case NodeKind::ParamList: return "PARAM_LIST";
    case NodeKind::Param: return "PARAM";
    case NodeKind::DefaultParam: return "DEFAULT_PARAM";
    case NodeKind::RestParam: return "REST_PARAM";
    case NodeKind::Block: return "BLOCK";
    case NodeKind::If: return "IF";
    case NodeKind::While: return "WHILE";
    case NodeKind::For: return "FOR";
    case NodeKind::Return: return "RETURN";
    case NodeKind::ExprStmt: return "EXPR_STMT";
    case NodeKind::Assign: return "ASSIGN";
    case NodeKind::BinaryOp: return "BINARY_OP";
    case NodeKind::UnaryOp: return "UNARY_OP";
    case NodeKind::Call: return "CALL";
    case NodeKind::New: return "NEW";
    case NodeKind::MemberAccess: return "MEMBER_ACCESS";
    case NodeKind::IndexAccess: return "INDEX_ACCESS";
    case NodeKind::OptionalChain: return "OPTIONAL_CHAIN";
    case NodeKind::Nullish: return "NULLISH";
    case NodeKind::Conditional: return "CONDITIONAL";
    case NodeKind::Identifier: return "IDENTIFIER";
    case NodeKind::NumberLit: return "NUMBER_LIT";
    case NodeKind::StringLit: return "STRING_LIT";
    case NodeKind::BoolLit: return "BOOL_LIT";
    case NodeKind::NullLit: return "NULL_LIT";
    case NodeKind::UndefinedLit: return "UNDEFINED_LIT";
    case NodeKind::ArrayLit: return "ARRAY_LIT";
    case NodeKind::ObjectLit: return "OBJECT_LIT";
    case NodeKind::Property: return "PROPERTY";
    case NodeKind::TemplateLit: return "TEMPLATE_LIT";
    case NodeKind::TemplateChunk: return "TEMPLATE_CHUNK";
    case NodeKind::Spread: return "SPREAD";
    case NodeKind::Yield: return "YIELD";
    case NodeKind::Await: return "AWAIT";
    case NodeKind::This: return "THIS";
    case NodeKind::Throw: return "THROW";
    case NodeKind::TryCatch: return "TRY_CATCH";
    case NodeKind::Empty: return "EMPTY";
  }
  return "UNKNOWN";
}

NodePtr make_node(NodeKind kind, Span span) { return std::make_unique<Node>(kind, span); }

NodePtr make_node(NodeKind kind, std::string token, Span span) {
  auto n = std::make_unique<Node>(kind, span);
  n->token = std::move(token);
  return n;
}

NodePtr clone(const Node& node) {
  auto copy = std::make_unique<Node>(node.kind, node.span);
  copy->token = node.token;
  copy->flags = node.flags;
  copy->children.reserve(node.children.size());
  for (const auto& c : node.children) copy->children.push_back(clone(*c));
  return copy;
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.token != b.token || a.flags != b.flags) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(*a.children[i], *b.children[i])) return false;
  return true;
}

std::size_t count_nodes(const Node& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += count_nodes(*c);
  return n;
}

ScriptNode clone_script(const ScriptNode& script) {
  ScriptNode out;
  out.root = clone(*script.root);
  out.features = script.features;
  out.source_name = script.source_name;
  return out;
}

namespace {

template <typename NodeT, typename Fn>
std::size_t traverse_impl(NodeT& root, const Fn& visit) {
  std::size_t count = 1;
  if (visit(root) == VisitAction::SkipSubtree) return count;
  for (auto& c : root.children) count += traverse_impl(*c, visit);
  return count;
}

}  // namespace

std::size_t traverse(const Node& root, const std::function<VisitAction(const Node&)>& visit) {
  return traverse_impl(root, visit);
}

std::size_t traverse(Node& root, const std::function<VisitAction(Node&)>& visit) {
  return traverse_impl(root, visit);
}

bool is_feature_node(const Node& n, Feature f) {
  switch (f) {
    case Feature::OptionalChaining:
      return n.kind == NodeKind::OptionalChain;
    case Feature::NullishCoalescing:
      return n.kind == NodeKind::Nullish;
    case Feature::AsyncFunctions:
      // The flag marks the whole function; `await` appears only inside async
      // bodies, so the anchor subsumes it.
      return is_function_kind(n.kind) && n.has_flag(kFlagAsync);
    case Feature::ExponentOperator:
      return (n.kind == NodeKind::BinaryOp && n.token == "**") ||
             (n.kind == NodeKind::Assign && n.token == "**=");
    case Feature::ArrowFunctions:
      return n.kind == NodeKind::ArrowFunction;
    case Feature::Classes:
      return n.kind == NodeKind::ClassDecl;
    case Feature::TemplateLiterals:
      return n.kind == NodeKind::TemplateLit;
    case Feature::DefaultParameters:
      return n.kind == NodeKind::DefaultParam;
    case Feature::RestParameters:
      return n.kind == NodeKind::RestParam;
    case Feature::SpreadExpressions:
      return n.kind == NodeKind::Spread;
    case Feature::Generators:
      return is_function_kind(n.kind) && n.has_flag(kFlagGenerator);
    case Feature::BlockScopedDeclarations:
      return n.kind == NodeKind::LetDecl || n.kind == NodeKind::ConstDecl;
  }
  return false;
}

FeatureSet features_of_node(const Node& n) {
  FeatureSet out;
  for (int i = 0; i < kFeatureCount; ++i) {
    auto f = static_cast<Feature>(i);
    if (is_feature_node(n, f)) out = out.with(f);
  }
  return out;
}

FeatureSet scan_features(const Node& root) {
  g_scan_calls.fetch_add(1, std::memory_order_relaxed);
  FeatureSet acc;
  traverse(root, [&acc](const Node& n) {
    acc = set_union(acc, features_of_node(n));
    return VisitAction::Continue;
  });
  return acc;
}

std::uint64_t scan_feature_call_count() { return g_scan_calls.load(std::memory_order_relaxed); }

ArityContract arity_of(NodeKind kind) {
  switch (kind) {
    case NodeKind::Script: return {0, kVariadic, false};
    case NodeKind::VarDecl: return {0, 1, true};
    case NodeKind::LetDecl: return {0, 1, true};
    case NodeKind::ConstDecl: return {1, 1, true};
    case NodeKind::FunctionDecl: return {2, 2, true};   // params, body
    case NodeKind::FunctionExpr: return {2, 2, false};  // name optional
    case NodeKind::ArrowFunction: return {2, 2, false}; // params, body (block or expr)
    case NodeKind::ClassDecl: return {0, kVariadic, true};
    case NodeKind::Method: return {2, 2, true};
    case NodeKind::ParamList: return {0, kVariadic, false};
    case NodeKind::Param: return {0, 0, true};
    case NodeKind::DefaultParam: return {1, 1, true};
    case NodeKind::RestParam: return {0, 0, true};
    case NodeKind::Block: return {0, kVariadic, false};
    case NodeKind::If: return {2, 3, false};
    case NodeKind::While: return {2, 2, false};
    case NodeKind::For: return {4, 4, false};  // init, cond, update, body; EMPTY fills gaps
    case NodeKind::Return: return {0, 1, false};
    case NodeKind::ExprStmt: return {1, 1, false};
    case NodeKind::Assign: return {2, 2, true};
    case NodeKind::BinaryOp: return {2, 2, true};
    case NodeKind::UnaryOp: return {1, 1, true};
    case NodeKind::Call: return {1, kVariadic, false};  // callee, args...
    case NodeKind::New: return {1, kVariadic, false};
    case NodeKind::MemberAccess: return {1, 1, true};
    case NodeKind::IndexAccess: return {2, 2, false};
    case NodeKind::OptionalChain: return {1, kVariadic, false};
    case NodeKind::Nullish: return {2, 2, false};
    case NodeKind::Conditional: return {3, 3, false};
    case NodeKind::Identifier: return {0, 0, true};
    case NodeKind::NumberLit: return {0, 0, true};
    case NodeKind::StringLit: return {0, 0, false};  // empty string is a valid value
    case NodeKind::BoolLit: return {0, 0, true};
    case NodeKind::NullLit: return {0, 0, false};
    case NodeKind::UndefinedLit: return {0, 0, false};
    case NodeKind::ArrayLit: return {0, kVariadic, false};
    case NodeKind::ObjectLit: return {0, kVariadic, false};
    case NodeKind::Property: return {1, 1, false};  // "" is a legal string key
    case NodeKind::TemplateLit: return {1, kVariadic, false};
    case NodeKind::TemplateChunk: return {0, 0, false};
    case NodeKind::Spread: return {1, 1, false};
    case NodeKind::Yield: return {0, 1, false};
    case NodeKind::Await: return {1, 1, false};
    case NodeKind::This: return {0, 0, false};
    case NodeKind::Throw: return {1, 1, false};
    case NodeKind::TryCatch: return {2, 2, true};  // try block, catch block; token = binding
    case NodeKind::Empty: return {0, 0, false};
  }
  return {0, kVariadic, false};
}

std::string check_node_shape(const Node& n) {
  ArityContract c = arity_of(n.kind);
  auto size = static_cast<int>(n.children.size());
  std::string kind{node_kind_name(n.kind)};
  if (size < c.min_children)
    return kind + " has " + std::to_string(size) + " children, needs at least " +
           std::to_string(c.min_children);
  if (c.max_children != kVariadic && size > c.max_children)
    return kind + " has " + std::to_string(size) + " children, allows at most " +
           std::to_string(c.max_children);
  if (c.token_required && n.token.empty()) return kind + " requires a token value";
  return {};
}

}  // namespace esdown
