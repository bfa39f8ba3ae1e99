#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// An async function becomes a plain function whose body runs as a generator
// driven by the $asyncExecute helper; every `await` turns into a `yield`.
// Because the original body moves into a nested generator, `this` and
// `arguments` are aliased into locals first. Nested async functions are
// rewritten before their enclosers (post-order), so each body only ever
// contains its own awaits.
class Rewriter : public BottomUpRewriter {
 public:
  std::size_t rewrites = 0;

 private:
  void rewrite(NodePtr& slot) override {
    Node& n = *slot;
    if (!is_function_node(n.kind) || !n.has_flag(kFlagAsync)) return;
    ++rewrites;

    const Node* bad = find_in_own_body(n.child(0), NodeKind::Await);
    if (bad == nullptr) bad = find_in_own_body(n.child(0), NodeKind::Yield);
    if (bad != nullptr)
      fail(DiagCode::UnsupportedYieldPosition,
           "'await' is not supported in parameter defaults", bad->span);
    if (references_super(n.child(1)))
      fail(DiagCode::UnsupportedConstruct,
           "'super' inside an async method is not supported", n.span);

    if (n.kind == NodeKind::ArrowFunction) ensure_block_body(n);
    NodePtr body = std::move(n.children[1]);
    awaits_to_yields(*body);

    std::vector<NodePtr> outer;
    if (references_this(*body)) {
      std::string alias = fresh_name();
      replace_this(*body, alias);
      outer.push_back(var_decl(alias, this_expr()));
    }
    if (n.kind != NodeKind::ArrowFunction && references_arguments(*body)) {
      std::string alias = fresh_name();
      replace_arguments(*body, alias);
      outer.push_back(var_decl(alias, ident("arguments")));
    }

    NodePtr inner = fn_expr(param_list(), std::move(body), kFlagGenerator);
    outer.push_back(ret(call(ident("$asyncExecute"), make_vec(std::move(inner)))));
    n.children[1] = block(std::move(outer));
    n.flags = static_cast<std::uint8_t>(n.flags & ~kFlagAsync);
  }

  static std::vector<NodePtr> make_vec(NodePtr one) {
    std::vector<NodePtr> v;
    v.push_back(std::move(one));
    return v;
  }
};

}  // namespace

TransformOutcome rewrite_async_functions(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::AsyncFunctions};
    out.added_features = {Feature::Generators};
    out.helpers_used = {"$asyncExecute"};
  }
  return out;
}

}  // namespace esdown
