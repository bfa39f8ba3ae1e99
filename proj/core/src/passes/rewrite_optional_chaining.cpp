#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

bool is_spine_kind(NodeKind k) {
  return k == NodeKind::MemberAccess || k == NodeKind::IndexAccess ||
         k == NodeKind::Call || k == NodeKind::OptionalChain;
}

// A member/call/index chain short-circuits as one unit, so the rewrite starts
// from the outermost node of the chain and only fires if any link is optional.
bool spine_has_optional(const Node& head) {
  const Node* n = &head;
  while (is_spine_kind(n->kind)) {
    if (n->kind == NodeKind::OptionalChain) return true;
    if (n->children.empty()) break;
    n = &n->child(0);
  }
  return false;
}

class Rewriter {
 public:
  explicit Rewriter(ScriptNode& script) : temps_(*script.root) {}

  void run(ScriptNode& script) {
    script_frame_.clear();
    walk_children(*script.root);
    prepend_var_decls(*script.root, script_frame_);
  }

  std::size_t visited = 0;
  std::size_t rewrites = 0;

 private:
  TempAllocator temps_;
  std::vector<std::string> script_frame_;
  std::vector<std::vector<std::string>*> frames_{&script_frame_};

  std::string fresh_temp() {
    std::string name = temps_.fresh();
    frames_.back()->push_back(name);
    return name;
  }

  void walk_children(Node& n) {
    for (auto& c : n.children) walk(c);
  }

  void walk(NodePtr& slot) {
    ++visited;
    Node& n = *slot;
    if (is_function_node(n.kind) && n.child(1).kind == NodeKind::Block) {
      std::vector<std::string> frame;
      frames_.push_back(&frame);
      walk_children(n);
      frames_.pop_back();
      prepend_var_decls(n.child(1), frame);
      return;
    }
    if (is_spine_kind(n.kind) && spine_has_optional(n)) {
      slot = lower_spine(std::move(slot));
      return;
    }
    walk_children(n);
  }

  // Build `receiver == null` while leaving a re-usable handle to the receiver
  // in `reuse`: pure atoms are cloned, anything else is hoisted to a fresh
  // temporary assigned inside the guard so it is evaluated exactly once.
  NodePtr guard_receiver(NodePtr recv, NodePtr& reuse) {
    if (is_pure_atom(*recv)) {
      reuse = clone(*recv);
      return bin("==", std::move(recv), null_lit());
    }
    std::string t = fresh_temp();
    reuse = ident(t);
    return bin("==", assign(ident(t), std::move(recv)), null_lit());
  }

  NodePtr lower_spine(NodePtr head) {
    ++rewrites;
    // Collect the chain outermost-first, then rebuild innermost-first.
    std::vector<NodePtr> links;
    NodePtr n = std::move(head);
    while (is_spine_kind(n->kind)) {
      NodePtr next = std::move(n->children[0]);
      links.push_back(std::move(n));
      n = std::move(next);
    }
    walk(n);  // the deepest receiver is an ordinary expression
    NodePtr cur = std::move(n);
    std::vector<NodePtr> guards;  // innermost link first

    for (std::size_t i = links.size(); i-- > 0;) {
      Node& link = *links[i];
      // Rewrite argument/key subtrees before they are spliced in.
      for (std::size_t c = 1; c < link.children.size(); ++c) walk(link.children[c]);

      if (link.kind == NodeKind::OptionalChain) {
        if (link.has_flag(kFlagOptionalCall)) {
          cur = lower_optional_call(link, std::move(cur), guards);
        } else if (link.has_flag(kFlagOptionalIndex)) {
          NodePtr reuse;
          guards.push_back(guard_receiver(std::move(cur), reuse));
          cur = index(std::move(reuse), std::move(link.children[1]));
        } else {
          NodePtr reuse;
          guards.push_back(guard_receiver(std::move(cur), reuse));
          cur = member(std::move(reuse), link.token);
        }
        continue;
      }
      switch (link.kind) {
        case NodeKind::MemberAccess:
          cur = member(std::move(cur), link.token);
          break;
        case NodeKind::IndexAccess:
          cur = index(std::move(cur), std::move(link.children[1]));
          break;
        case NodeKind::Call: {
          std::vector<NodePtr> args;
          for (std::size_t c = 1; c < link.children.size(); ++c)
            args.push_back(std::move(link.children[c]));
          cur = call(std::move(cur), std::move(args));
          break;
        }
        default:
          fail(DiagCode::UnsupportedConstruct, "malformed optional chain", link.span);
      }
    }

    NodePtr out = std::move(cur);
    for (std::size_t i = guards.size(); i-- > 0;)
      out = cond(std::move(guards[i]), void_0(), std::move(out));
    return out;
  }

  // `f?.(args)`: the guard tests the callee value, and the call must keep the
  // receiver as `this` when the callee is a member or index expression.
  NodePtr lower_optional_call(Node& link, NodePtr callee, std::vector<NodePtr>& guards) {
    std::vector<NodePtr> args;
    for (std::size_t c = 1; c < link.children.size(); ++c)
      args.push_back(std::move(link.children[c]));

    if (callee->kind == NodeKind::MemberAccess) {
      NodePtr obj = std::move(callee->children[0]);
      NodePtr obj_reuse;
      NodePtr guard_obj;
      if (is_pure_atom(*obj)) {
        obj_reuse = clone(*obj);
        guard_obj = std::move(obj);
      } else {
        std::string t = fresh_temp();
        obj_reuse = ident(t);
        guard_obj = assign(ident(t), std::move(obj));
      }
      guards.push_back(bin("==", member(std::move(guard_obj), callee->token), null_lit()));
      return call(member(std::move(obj_reuse), callee->token), std::move(args));
    }
    if (callee->kind == NodeKind::IndexAccess) {
      NodePtr obj = std::move(callee->children[0]);
      NodePtr key = std::move(callee->children[1]);
      NodePtr obj_reuse, key_reuse, guard_obj, guard_key;
      if (is_pure_atom(*obj)) {
        obj_reuse = clone(*obj);
        guard_obj = std::move(obj);
      } else {
        std::string t = fresh_temp();
        obj_reuse = ident(t);
        guard_obj = assign(ident(t), std::move(obj));
      }
      if (is_pure_atom(*key)) {
        key_reuse = clone(*key);
        guard_key = std::move(key);
      } else {
        std::string t = fresh_temp();
        key_reuse = ident(t);
        guard_key = assign(ident(t), std::move(key));
      }
      guards.push_back(
          bin("==", index(std::move(guard_obj), std::move(guard_key)), null_lit()));
      return call(index(std::move(obj_reuse), std::move(key_reuse)), std::move(args));
    }
    NodePtr reuse;
    guards.push_back(guard_receiver(std::move(callee), reuse));
    return call(std::move(reuse), std::move(args));
  }
};

}  // namespace

TransformOutcome rewrite_optional_chaining(ScriptNode& script) {
  Rewriter rw(script);
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::OptionalChaining};
  }
  return out;
}

}  // namespace esdown
