#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// Arrows become plain function expressions. `this` is lexical in an arrow, so
// before converting we substitute every `this` under the arrow (including in
// nested arrows, which share the same binding) with `$this`, and the nearest
// enclosing real function gains a single `var $this = this;`. Outermost
// arrows convert first; inner arrows have no `this` left by the time their
// turn comes, so exactly one alias appears per function that needs one.
class Rewriter {
 public:
  std::size_t visited = 0;
  std::size_t rewrites = 0;

  void run(ScriptNode& script) {
    frames_.push_back({});
    for (auto& c : script.root->children) walk(c);
    if (frames_.back().needs_this) prepend_alias(*script.root);
    frames_.pop_back();
  }

 private:
  struct Frame {
    bool needs_this = false;
  };
  std::vector<Frame> frames_;

  static void prepend_alias(Node& host) {
    host.children.insert(host.children.begin(), var_decl("$this", this_expr()));
  }

  void walk(NodePtr& slot) {
    ++visited;
    if (slot->kind == NodeKind::ArrowFunction) {
      convert(slot);
      // fall through: the slot is a plain function now
    }
    Node& n = *slot;
    if (is_function_node(n.kind) && n.child(1).kind == NodeKind::Block) {
      frames_.push_back({});
      for (auto& c : n.children) walk(c);
      bool alias = frames_.back().needs_this;
      frames_.pop_back();
      if (alias) prepend_alias(n.child(1));
      return;
    }
    for (auto& c : n.children) walk(c);
  }

  void convert(NodePtr& slot) {
    ++rewrites;
    Node& arrow = *slot;
    if (references_this(arrow)) {
      replace_this(arrow, "$this");
      frames_.back().needs_this = true;
    }
    ensure_block_body(arrow);
    arrow.kind = NodeKind::FunctionExpr;
  }
};

}  // namespace

TransformOutcome rewrite_arrow_functions(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::ArrowFunctions};
  }
  return out;
}

}  // namespace esdown
