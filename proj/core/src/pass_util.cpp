#include "pass_util.hpp"

#include <cctype>

namespace esdown::detail {

void fail(DiagCode code, std::string message, Span span) {
  throw PassFailure{Diagnostic{code, std::move(message), span}};
}

NodePtr ident(std::string name, Span span) {
  return make_node(NodeKind::Identifier, std::move(name), span);
}

NodePtr number(std::string text, Span span) {
  return make_node(NodeKind::NumberLit, std::move(text), span);
}

NodePtr string_lit(std::string value, Span span) {
  return make_node(NodeKind::StringLit, std::move(value), span);
}

NodePtr null_lit(Span span) { return make_node(NodeKind::NullLit, span); }

NodePtr void_0(Span span) {
  auto n = make_node(NodeKind::UnaryOp, "void", span);
  n->children.push_back(number("0", span));
  return n;
}

NodePtr this_expr(Span span) { return make_node(NodeKind::This, span); }

NodePtr bin(std::string op, NodePtr lhs, NodePtr rhs) {
  auto n = make_node(NodeKind::BinaryOp, std::move(op), lhs->span);
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return n;
}

NodePtr assign(NodePtr target, NodePtr value) {
  auto n = make_node(NodeKind::Assign, "=", target->span);
  n->children.push_back(std::move(target));
  n->children.push_back(std::move(value));
  return n;
}

NodePtr cond(NodePtr test, NodePtr then_e, NodePtr else_e) {
  auto n = make_node(NodeKind::Conditional, test->span);
  n->children.push_back(std::move(test));
  n->children.push_back(std::move(then_e));
  n->children.push_back(std::move(else_e));
  return n;
}

NodePtr member(NodePtr object, std::string name) {
  auto n = make_node(NodeKind::MemberAccess, std::move(name), object->span);
  n->children.push_back(std::move(object));
  return n;
}

NodePtr index(NodePtr object, NodePtr key) {
  auto n = make_node(NodeKind::IndexAccess, object->span);
  n->children.push_back(std::move(object));
  n->children.push_back(std::move(key));
  return n;
}

NodePtr call(NodePtr callee, std::vector<NodePtr> args) {
  auto n = make_node(NodeKind::Call, callee->span);
  n->children.push_back(std::move(callee));
  for (auto& a : args) n->children.push_back(std::move(a));
  return n;
}

NodePtr array_lit(std::vector<NodePtr> elements) {
  auto n = make_node(NodeKind::ArrayLit);
  for (auto& e : elements) n->children.push_back(std::move(e));
  return n;
}

NodePtr bool_lit(bool value, Span span) {
  return make_node(NodeKind::BoolLit, value ? "true" : "false", span);
}

NodePtr property(std::string key, NodePtr value) {
  auto n = make_node(NodeKind::Property, std::move(key), value->span);
  n->children.push_back(std::move(value));
  return n;
}

NodePtr object_lit(std::vector<NodePtr> properties) {
  auto n = make_node(NodeKind::ObjectLit);
  for (auto& p : properties) n->children.push_back(std::move(p));
  return n;
}

NodePtr expr_stmt(NodePtr expr) {
  auto n = make_node(NodeKind::ExprStmt, expr->span);
  n->children.push_back(std::move(expr));
  return n;
}

NodePtr var_decl(std::string name, NodePtr init) {
  auto n = make_node(NodeKind::VarDecl, std::move(name));
  if (init) {
    n->span = init->span;
    n->children.push_back(std::move(init));
  }
  return n;
}

NodePtr let_decl(std::string name, NodePtr init) {
  auto n = make_node(NodeKind::LetDecl, std::move(name));
  if (init) {
    n->span = init->span;
    n->children.push_back(std::move(init));
  }
  return n;
}

NodePtr block(std::vector<NodePtr> stmts) {
  auto n = make_node(NodeKind::Block);
  for (auto& s : stmts) n->children.push_back(std::move(s));
  return n;
}

NodePtr ret(NodePtr arg) {
  auto n = make_node(NodeKind::Return);
  if (arg) {
    n->span = arg->span;
    n->children.push_back(std::move(arg));
  }
  return n;
}

NodePtr param_list(std::vector<NodePtr> params) {
  auto n = make_node(NodeKind::ParamList);
  for (auto& p : params) n->children.push_back(std::move(p));
  return n;
}

NodePtr param(std::string name) { return make_node(NodeKind::Param, std::move(name)); }

NodePtr fn_expr(NodePtr params, NodePtr body, std::uint8_t flags, std::string name) {
  auto n = make_node(NodeKind::FunctionExpr, std::move(name), params->span);
  n->flags = flags;
  n->children.push_back(std::move(params));
  n->children.push_back(std::move(body));
  return n;
}

bool is_pure_atom(const Node& n) {
  switch (n.kind) {
    case NodeKind::Identifier:
    case NodeKind::NumberLit:
    case NodeKind::StringLit:
    case NodeKind::BoolLit:
    case NodeKind::NullLit:
    case NodeKind::UndefinedLit:
      return true;
    default:
      return false;
  }
}

TempAllocator::TempAllocator(const Node& root) {
  traverse(root, [this](const Node& n) {
    const std::string& t = n.token;
    if (t.size() > 2 && t[0] == '$' && t[1] == 't') {
      bool digits = true;
      for (std::size_t i = 2; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) { digits = false; break; }
      if (digits) {
        int v = std::stoi(t.substr(2));
        if (v >= next_) next_ = v + 1;
      }
    }
    return VisitAction::Continue;
  });
}

std::string TempAllocator::fresh() { return "$t" + std::to_string(next_++); }

void prepend_var_decls(Node& host, const std::vector<std::string>& names) {
  for (std::size_t i = names.size(); i-- > 0;)
    host.children.insert(host.children.begin(), var_decl(names[i]));
}

namespace {

// Walk stopping at non-arrow function boundaries; `fn` returns true to stop.
bool lexical_walk(const Node& n, bool at_root, const std::function<bool(const Node&)>& fn) {
  if (!at_root && is_function_node(n.kind) && n.kind != NodeKind::ArrowFunction) return false;
  if (fn(n)) return true;
  for (const auto& c : n.children)
    if (lexical_walk(*c, false, fn)) return true;
  return false;
}

void lexical_rewrite(Node& n, bool at_root, const std::function<void(Node&)>& fn) {
  if (!at_root && is_function_node(n.kind) && n.kind != NodeKind::ArrowFunction) return;
  fn(n);
  for (auto& c : n.children) lexical_rewrite(*c, false, fn);
}

}  // namespace

bool references_this(const Node& n) {
  return lexical_walk(n, true, [](const Node& m) { return m.kind == NodeKind::This; });
}

bool references_arguments(const Node& n) {
  return lexical_walk(n, true, [](const Node& m) {
    return m.kind == NodeKind::Identifier && m.token == "arguments";
  });
}

bool references_super(const Node& n) {
  return lexical_walk(n, true, [](const Node& m) {
    return m.kind == NodeKind::Identifier && m.token == "super";
  });
}

void replace_this(Node& n, const std::string& name) {
  lexical_rewrite(n, true, [&name](Node& m) {
    if (m.kind == NodeKind::This) {
      m.kind = NodeKind::Identifier;
      m.token = name;
    }
  });
}

void replace_arguments(Node& n, const std::string& name) {
  lexical_rewrite(n, true, [&name](Node& m) {
    if (m.kind == NodeKind::Identifier && m.token == "arguments") m.token = name;
  });
}

namespace {

const Node* find_impl(const Node& n, bool at_root, NodeKind kind) {
  if (!at_root && is_function_node(n.kind)) return nullptr;
  if (n.kind == kind) return &n;
  for (const auto& c : n.children)
    if (const Node* hit = find_impl(*c, false, kind)) return hit;
  return nullptr;
}

}  // namespace

const Node* find_in_own_body(const Node& n, NodeKind kind) {
  return find_impl(n, true, kind);
}

bool contains_in_own_body(const Node& n, NodeKind kind) {
  return find_in_own_body(n, kind) != nullptr;
}

namespace {

void awaits_impl(Node& n, bool at_root) {
  if (!at_root && is_function_node(n.kind)) return;
  if (n.kind == NodeKind::Await) n.kind = NodeKind::Yield;
  for (auto& c : n.children) awaits_impl(*c, false);
}

}  // namespace

void awaits_to_yields(Node& body) { awaits_impl(body, true); }

void BottomUpRewriter::run(ScriptNode& script) {
  TempAllocator temps(*script.root);
  temps_ = &temps;
  std::vector<std::string> script_frame;
  frames_.push_back(&script_frame);
  for (auto& c : script.root->children) walk(c);
  frames_.pop_back();
  prepend_var_decls(*script.root, script_frame);
  temps_ = nullptr;
}

std::string BottomUpRewriter::fresh_temp() {
  std::string name = temps_->fresh();
  frames_.back()->push_back(name);
  return name;
}

std::string BottomUpRewriter::fresh_name() { return temps_->fresh(); }

void BottomUpRewriter::walk(NodePtr& slot) {
  ++visited;
  Node& n = *slot;
  if (is_function_node(n.kind) && n.child(1).kind == NodeKind::Block) {
    std::vector<std::string> frame;
    frames_.push_back(&frame);
    for (auto& c : n.children) walk(c);
    frames_.pop_back();
    prepend_var_decls(n.child(1), frame);
    rewrite(slot);
    return;
  }
  for (auto& c : n.children) walk(c);
  rewrite(slot);
}

void ensure_block_body(Node& fn) {
  Node& body = fn.child(1);
  if (body.kind == NodeKind::Block) return;
  auto wrapped = block({});
  wrapped->span = body.span;
  wrapped->children.push_back(ret(std::move(fn.children[1])));
  fn.children[1] = std::move(wrapped);
}

}  // namespace esdown::detail
