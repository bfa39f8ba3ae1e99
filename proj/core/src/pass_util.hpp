#pragma once

// Builders and tree queries shared by the lowering passes. Internal to the
// library; not installed.

#include <string>
#include <utility>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/diagnostics.hpp"
#include "esdown/passes.hpp"

namespace esdown::detail {

inline bool is_function_node(NodeKind k) {
  return k == NodeKind::FunctionDecl || k == NodeKind::FunctionExpr ||
         k == NodeKind::ArrowFunction || k == NodeKind::Method;
}

[[noreturn]] void fail(DiagCode code, std::string message, Span span);

// ---- node builders (synthesized nodes carry the span they replace) ----

NodePtr ident(std::string name, Span span = {});
NodePtr number(std::string text, Span span = {});
NodePtr string_lit(std::string value, Span span = {});
NodePtr null_lit(Span span = {});
NodePtr void_0(Span span = {});  // canonical `undefined` in emitted code
NodePtr this_expr(Span span = {});
NodePtr bin(std::string op, NodePtr lhs, NodePtr rhs);
NodePtr assign(NodePtr target, NodePtr value);  // plain `=`
NodePtr cond(NodePtr test, NodePtr then_e, NodePtr else_e);
NodePtr member(NodePtr object, std::string name);
NodePtr index(NodePtr object, NodePtr key);
NodePtr call(NodePtr callee, std::vector<NodePtr> args = {});
NodePtr array_lit(std::vector<NodePtr> elements);
NodePtr bool_lit(bool value, Span span = {});
NodePtr property(std::string key, NodePtr value);
NodePtr object_lit(std::vector<NodePtr> properties);
NodePtr expr_stmt(NodePtr expr);
NodePtr var_decl(std::string name, NodePtr init = nullptr);
NodePtr let_decl(std::string name, NodePtr init = nullptr);
NodePtr block(std::vector<NodePtr> stmts = {});
NodePtr ret(NodePtr arg = nullptr);
NodePtr param_list(std::vector<NodePtr> params = {});
NodePtr param(std::string name);
NodePtr fn_expr(NodePtr params, NodePtr body, std::uint8_t flags = 0,
                std::string name = {});

/// Expressions that can be re-evaluated freely: identifiers and literals.
bool is_pure_atom(const Node& n);

// ---- fresh temporaries ----

// Allocates `$t<n>` names, monotonically per script. Seeded past any `$t<n>`
// already present so repeated lowering runs never collide.
class TempAllocator {
 public:
  explicit TempAllocator(const Node& root);
  std::string fresh();

 private:
  int next_ = 0;
};

/// Insert `var <name>;` declarations at the front of a Script or Block node,
/// preserving relative order of `names`.
void prepend_var_decls(Node& host, const std::vector<std::string>& names);

// ---- scoped reference queries / rewrites ----
// "Lexical" walks descend into arrow functions (which have no `this` or
// `arguments` of their own) but stop at any other function boundary.

bool references_this(const Node& n);
bool references_arguments(const Node& n);
bool references_super(const Node& n);
void replace_this(Node& n, const std::string& name);
void replace_arguments(Node& n, const std::string& name);

/// True if the subtree contains `kind`, not descending into nested functions
/// of any sort.
bool contains_in_own_body(const Node& n, NodeKind kind);

/// First node of `kind` in the subtree (own body only), or nullptr.
const Node* find_in_own_body(const Node& n, NodeKind kind);

/// Replace every Await node in the function's own body (not crossing any
/// function boundary) with a Yield node wrapping the same operand.
void awaits_to_yields(Node& body);

/// If `fn` is an arrow with an expression body, wrap it as `{ return expr; }`.
void ensure_block_body(Node& fn);

// Post-order walk that owns the plumbing most expression rewrites need: a
// node count, fresh `$t<n>` temporaries, and `var` declarations for them at
// the top of the enclosing function body (or script). Subclasses see each
// node after its children and may replace the slot wholesale.
class BottomUpRewriter {
 public:
  void run(ScriptNode& script);
  std::size_t visited = 0;

 protected:
  virtual ~BottomUpRewriter() = default;
  virtual void rewrite(NodePtr& slot) = 0;
  std::string fresh_temp();
  /// Fresh `$t<n>` without hoisting a declaration; for rewrites that place
  /// the `var` themselves.
  std::string fresh_name();

 private:
  void walk(NodePtr& slot);
  TempAllocator* temps_ = nullptr;
  std::vector<std::vector<std::string>*> frames_;
};

}  // namespace esdown::detail
