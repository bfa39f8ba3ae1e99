#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// `function f(a, b = E)` keeps the parameter and gains a guard at the top of
// the body: `if (b === void 0) { b = E; }`. Guards appear in parameter order,
// so later defaults may read earlier parameters, exactly like the original.
class Rewriter {
 public:
  std::size_t visited = 0;
  std::size_t rewrites = 0;

  void walk(Node& n) {
    ++visited;
    for (auto& c : n.children) walk(*c);
    if (!is_function_node(n.kind)) return;
    Node& params = n.child(0);
    bool any = false;
    for (const auto& p : params.children)
      if (p->kind == NodeKind::DefaultParam) any = true;
    if (!any) return;
    ++rewrites;

    if (n.kind == NodeKind::ArrowFunction) ensure_block_body(n);
    std::vector<NodePtr> guards;
    for (auto& p : params.children) {
      if (p->kind != NodeKind::DefaultParam) continue;
      NodePtr init = std::move(p->children[0]);
      NodePtr test = bin("===", ident(p->token, p->span), void_0());
      NodePtr body = block({});
      body->children.push_back(expr_stmt(assign(ident(p->token, p->span), std::move(init))));
      auto guard = make_node(NodeKind::If, p->span);
      guard->children.push_back(std::move(test));
      guard->children.push_back(std::move(body));
      guards.push_back(std::move(guard));
      p = param(p->token);
    }
    Node& body = n.child(1);
    body.children.insert(body.children.begin(),
                         std::make_move_iterator(guards.begin()),
                         std::make_move_iterator(guards.end()));
  }
};

}  // namespace

TransformOutcome rewrite_default_parameters(ScriptNode& script) {
  Rewriter rw;
  rw.walk(*script.root);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::DefaultParameters};
  }
  return out;
}

}  // namespace esdown
