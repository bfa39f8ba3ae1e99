#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// `a ?? b` keeps `a` when it is neither null nor undefined, so the rewrite is
// one loose null comparison. Non-atomic left sides are evaluated once into a
// fresh temporary.
class Rewriter : public BottomUpRewriter {
 public:
  std::size_t rewrites = 0;

 private:
  void rewrite(NodePtr& slot) override {
    if (slot->kind != NodeKind::Nullish) return;
    ++rewrites;
    NodePtr lhs = std::move(slot->children[0]);
    NodePtr rhs = std::move(slot->children[1]);
    if (is_pure_atom(*lhs)) {
      NodePtr test = bin("!=", clone(*lhs), null_lit());
      slot = cond(std::move(test), std::move(lhs), std::move(rhs));
      return;
    }
    std::string t = fresh_temp();
    NodePtr test = bin("!=", assign(ident(t), std::move(lhs)), null_lit());
    slot = cond(std::move(test), ident(t), std::move(rhs));
  }
};

}  // namespace

TransformOutcome rewrite_nullish_coalescing(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::NullishCoalescing};
  }
  return out;
}

}  // namespace esdown
