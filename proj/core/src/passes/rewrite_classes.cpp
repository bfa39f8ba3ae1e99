#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

bool is_super(const Node& n) {
  return n.kind == NodeKind::Identifier && n.token == "super";
}

// A class becomes: the constructor as a function declaration, `$inherits`
// wiring immediately after it when there is a superclass, then one prototype
// (or constructor-object, for statics) assignment per method in source order.
// `super` forms rewrite against the parent reference; when the extends clause
// is not a plain name it is evaluated once into a hoisted temporary so the
// constructor call and every super reference see the same value.
class Rewriter {
 public:
  explicit Rewriter(ScriptNode& script) : temps_(*script.root) {}

  void run(ScriptNode& script) { walk(*script.root); }

  std::size_t visited = 0;
  std::size_t rewrites = 0;
  bool used_inherits = false;

 private:
  TempAllocator temps_;

  void walk(Node& n) {
    ++visited;
    if (n.kind == NodeKind::Script || n.kind == NodeKind::Block) {
      process_stmt_list(n);
      return;
    }
    for (auto& c : n.children) walk(*c);
  }

  void process_stmt_list(Node& host) {
    std::vector<NodePtr> out;
    out.reserve(host.children.size());
    for (auto& stmt : host.children) {
      walk(*stmt);  // inner classes first
      if (stmt->kind != NodeKind::ClassDecl) {
        out.push_back(std::move(stmt));
        continue;
      }
      for (auto& lowered : lower_class(std::move(stmt))) out.push_back(std::move(lowered));
    }
    host.children = std::move(out);
  }

  std::vector<NodePtr> lower_class(NodePtr cls) {
    ++rewrites;
    const std::string name = cls->token;
    std::vector<NodePtr> out;

    std::size_t first_method = 0;
    NodePtr parent_ref;  // identifier the lowered code uses for the superclass
    if (cls->has_flag(kFlagHasHeritage)) {
      NodePtr heritage = std::move(cls->children[0]);
      first_method = 1;
      if (heritage->kind == NodeKind::Identifier) {
        parent_ref = std::move(heritage);
      } else {
        std::string t = temps_.fresh();
        out.push_back(var_decl(t, std::move(heritage)));
        parent_ref = ident(t);
      }
    }

    // Find the constructor and rewrite super in every body first.
    NodePtr ctor;
    for (std::size_t i = first_method; i < cls->children.size(); ++i) {
      Node& m = *cls->children[i];
      bool is_ctor = m.token == "constructor" && !m.has_flag(kFlagStatic);
      if (parent_ref == nullptr &&
          (references_super(m.child(0)) || references_super(m.child(1))))
        fail(DiagCode::UnsupportedConstruct,
             "'super' in a class without a superclass", m.span);
      if (parent_ref != nullptr) {
        rewrite_super(m.child(0), *parent_ref, m.has_flag(kFlagStatic), is_ctor);
        rewrite_super(m.child(1), *parent_ref, m.has_flag(kFlagStatic), is_ctor);
      }
      if (is_ctor) ctor = std::move(cls->children[i]);
    }

    // Constructor function declaration.
    auto fn = make_node(NodeKind::FunctionDecl, name, cls->span);
    if (ctor != nullptr) {
      fn->children.push_back(std::move(ctor->children[0]));
      fn->children.push_back(std::move(ctor->children[1]));
    } else {
      fn->children.push_back(param_list());
      std::vector<NodePtr> body;
      if (parent_ref != nullptr) {
        std::vector<NodePtr> args;
        args.push_back(this_expr());
        args.push_back(ident("arguments"));
        body.push_back(expr_stmt(call(member(clone(*parent_ref), "apply"), std::move(args))));
      }
      fn->children.push_back(block(std::move(body)));
    }
    out.push_back(std::move(fn));

    if (parent_ref != nullptr) {
      used_inherits = true;
      std::vector<NodePtr> args;
      args.push_back(ident(name));
      args.push_back(clone(*parent_ref));
      out.push_back(expr_stmt(call(ident("$inherits"), std::move(args))));
    }

    // Methods, in source order.
    for (std::size_t i = first_method; i < cls->children.size(); ++i) {
      if (cls->children[i] == nullptr) continue;  // the constructor, moved out
      Node& m = *cls->children[i];
      std::uint8_t fn_flags =
          static_cast<std::uint8_t>(m.flags & (kFlagAsync | kFlagGenerator));
      NodePtr impl = fn_expr(std::move(m.children[0]), std::move(m.children[1]), fn_flags);
      impl->span = m.span;
      NodePtr target = m.has_flag(kFlagStatic)
                           ? member(ident(name), m.token)
                           : member(member(ident(name), "prototype"), m.token);
      out.push_back(expr_stmt(assign(std::move(target), std::move(impl))));
    }
    return out;
  }

  // Rewrites all super forms in a method body. Descends into arrows (super is
  // lexical there) but not into nested functions, where the parser already
  // forbids super.
  void rewrite_super(Node& n, const Node& parent_ref, bool is_static, bool in_ctor) {
    if (is_function_node(n.kind) && n.kind != NodeKind::ArrowFunction) return;

    if (n.kind == NodeKind::Call && is_super(n.child(0))) {
      if (!in_ctor)
        fail(DiagCode::UnsupportedConstruct,
             "'super(...)' outside a constructor", n.span);
      for (std::size_t i = 1; i < n.children.size(); ++i)
        rewrite_super(*n.children[i], parent_ref, is_static, in_ctor);
      std::vector<NodePtr> args;
      args.push_back(this_expr());
      for (std::size_t i = 1; i < n.children.size(); ++i)
        args.push_back(std::move(n.children[i]));
      NodePtr repl = call(member(clone(parent_ref), "call"), std::move(args));
      repl->span = n.span;
      replace_node(n, std::move(repl));
      return;
    }

    bool callee_is_super_member =
        n.kind == NodeKind::Call && !n.children.empty() &&
        (n.child(0).kind == NodeKind::MemberAccess ||
         n.child(0).kind == NodeKind::IndexAccess) &&
        !n.child(0).children.empty() && is_super(n.child(0).child(0));
    if (callee_is_super_member) {
      // super.m(a) -> P.prototype.m.call(this, a); statics use P.m directly.
      for (std::size_t i = 1; i < n.children.size(); ++i)
        rewrite_super(*n.children[i], parent_ref, is_static, in_ctor);
      NodePtr method = lower_super_base(std::move(n.children[0]), parent_ref, is_static,
                                        in_ctor);
      std::vector<NodePtr> args;
      args.push_back(this_expr());
      for (std::size_t i = 1; i < n.children.size(); ++i)
        args.push_back(std::move(n.children[i]));
      NodePtr repl = call(member(std::move(method), "call"), std::move(args));
      repl->span = n.span;
      replace_node(n, std::move(repl));
      return;
    }

    if ((n.kind == NodeKind::MemberAccess || n.kind == NodeKind::IndexAccess) &&
        !n.children.empty() && is_super(n.child(0))) {
      NodePtr owned = clone(n);
      NodePtr repl = lower_super_base(std::move(owned), parent_ref, is_static, in_ctor);
      replace_node(n, std::move(repl));
      return;
    }

    for (auto& c : n.children) rewrite_super(*c, parent_ref, is_static, in_ctor);
  }

  // super.m / super[k] as a value: the method home object is P.prototype for
  // instance methods and P itself for statics.
  NodePtr lower_super_base(NodePtr access, const Node& parent_ref, bool is_static,
                           bool in_ctor) {
    NodePtr home = is_static ? clone(parent_ref) : member(clone(parent_ref), "prototype");
    if (access->kind == NodeKind::MemberAccess) return member(std::move(home), access->token);
    rewrite_super(*access->children[1], parent_ref, is_static, in_ctor);
    return index(std::move(home), std::move(access->children[1]));
  }

  static void replace_node(Node& slot, NodePtr with) {
    slot = std::move(*with);
  }
};

}  // namespace

TransformOutcome rewrite_classes(ScriptNode& script) {
  Rewriter rw(script);
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::Classes};
    if (rw.used_inherits) out.helpers_used = {"$inherits"};
  }
  return out;
}

}  // namespace esdown
