#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

NodePtr math_pow(NodePtr base, NodePtr exp) {
  std::vector<NodePtr> args;
  args.push_back(std::move(base));
  args.push_back(std::move(exp));
  return call(member(ident("Math"), "pow"), std::move(args));
}

// `a ** b` maps to Math.pow directly. The compound form re-reads its target,
// so member/index targets with impure receivers hoist those receivers into
// temporaries assigned inside the target expression — the object (and key)
// are still evaluated exactly once, before the right-hand side, matching the
// original evaluation order.
class Rewriter : public BottomUpRewriter {
 public:
  std::size_t rewrites = 0;

 private:
  void rewrite(NodePtr& slot) override {
    Node& n = *slot;
    if (n.kind == NodeKind::BinaryOp && n.token == "**") {
      ++rewrites;
      slot = math_pow(std::move(n.children[0]), std::move(n.children[1]));
      return;
    }
    if (n.kind != NodeKind::Assign || n.token != "**=") return;
    ++rewrites;
    NodePtr target = std::move(n.children[0]);
    NodePtr rhs = std::move(n.children[1]);

    NodePtr write_target;  // target of the plain assignment
    NodePtr read_back;     // same location, for the Math.pow argument
    switch (target->kind) {
      case NodeKind::Identifier: {
        read_back = clone(*target);
        write_target = std::move(target);
        break;
      }
      case NodeKind::MemberAccess: {
        NodePtr obj = std::move(target->children[0]);
        NodePtr obj_w, obj_r;
        split_once(std::move(obj), obj_w, obj_r);
        write_target = member(std::move(obj_w), target->token);
        read_back = member(std::move(obj_r), target->token);
        break;
      }
      case NodeKind::IndexAccess: {
        NodePtr obj = std::move(target->children[0]);
        NodePtr key = std::move(target->children[1]);
        NodePtr obj_w, obj_r, key_w, key_r;
        split_once(std::move(obj), obj_w, obj_r);
        split_once(std::move(key), key_w, key_r);
        write_target = index(std::move(obj_w), std::move(key_w));
        read_back = index(std::move(obj_r), std::move(key_r));
        break;
      }
      default:
        fail(DiagCode::UnsupportedConstruct, "invalid '**=' target", target->span);
    }
    slot = assign(std::move(write_target), math_pow(std::move(read_back), std::move(rhs)));
  }

  // Produce two handles to one evaluation of `e`: pure atoms are cloned,
  // anything else becomes `($tN = e)` on the write side and `$tN` on the read.
  void split_once(NodePtr e, NodePtr& write_side, NodePtr& read_side) {
    if (is_pure_atom(*e)) {
      read_side = clone(*e);
      write_side = std::move(e);
      return;
    }
    std::string t = fresh_temp();
    read_side = ident(t);
    write_side = assign(ident(t), std::move(e));
  }
};

}  // namespace

TransformOutcome rewrite_exponential_operator(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::ExponentOperator};
  }
  return out;
}

}  // namespace esdown
