#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// Rest parameters slice `arguments`; spread sites flatten their arguments
// into one array expression via $arrayFrom and either `.concat` (array
// literals, mixed argument lists) or `.apply` (calls). Method receivers are
// hoisted so the callee lookup and the `this` argument see one evaluation.
class Rewriter : public BottomUpRewriter {
 public:
  std::size_t rest_rewrites = 0;
  std::size_t spread_rewrites = 0;
  bool used_array_from = false;

 private:
  void rewrite(NodePtr& slot) override {
    Node& n = *slot;
    if (is_function_node(n.kind)) {
      rewrite_rest(n);
      return;
    }
    if (n.kind == NodeKind::ArrayLit && has_spread(n, 0)) {
      ++spread_rewrites;
      slot = build_array(std::move(n.children));
      return;
    }
    if (n.kind == NodeKind::Call && has_spread(n, 1)) {
      ++spread_rewrites;
      rewrite_call(slot);
    }
  }

  static bool has_spread(const Node& n, std::size_t from) {
    for (std::size_t i = from; i < n.children.size(); ++i)
      if (n.child(i).kind == NodeKind::Spread) return true;
    return false;
  }

  void rewrite_rest(Node& fn) {
    Node& params = fn.child(0);
    if (params.children.empty() ||
        params.children.back()->kind != NodeKind::RestParam)
      return;
    ++rest_rewrites;
    NodePtr rest = std::move(params.children.back());
    params.children.pop_back();
    std::size_t fixed = params.children.size();

    if (fn.kind == NodeKind::ArrowFunction) ensure_block_body(fn);
    NodePtr slice = member(member(member(ident("Array"), "prototype"), "slice"), "call");
    std::vector<NodePtr> args;
    args.push_back(ident("arguments"));
    args.push_back(number(std::to_string(fixed)));
    NodePtr init = call(std::move(slice), std::move(args));
    Node& body = fn.child(1);
    body.children.insert(body.children.begin(), var_decl(rest->token, std::move(init)));
  }

  // Flatten elements into `first.concat(seg…)`; a lone spread segment is just
  // $arrayFrom(xs), and a lone literal segment cannot happen (no spread).
  NodePtr build_array(std::vector<NodePtr> elements) {
    std::vector<NodePtr> segments;
    std::vector<NodePtr> run;
    auto flush = [&] {
      if (!run.empty()) segments.push_back(array_lit(std::move(run)));
      run.clear();
    };
    for (auto& e : elements) {
      if (e->kind == NodeKind::Spread) {
        flush();
        used_array_from = true;
        std::vector<NodePtr> arg;
        arg.push_back(std::move(e->children[0]));
        segments.push_back(call(ident("$arrayFrom"), std::move(arg)));
      } else {
        run.push_back(std::move(e));
      }
    }
    flush();
    if (segments.size() == 1) return std::move(segments[0]);
    NodePtr first = std::move(segments[0]);
    std::vector<NodePtr> tail;
    for (std::size_t i = 1; i < segments.size(); ++i) tail.push_back(std::move(segments[i]));
    return call(member(std::move(first), "concat"), std::move(tail));
  }

  void rewrite_call(NodePtr& slot) {
    Node& n = *slot;
    std::vector<NodePtr> raw_args;
    for (std::size_t i = 1; i < n.children.size(); ++i)
      raw_args.push_back(std::move(n.children[i]));
    NodePtr args_array = build_array(std::move(raw_args));
    NodePtr callee = std::move(n.children[0]);

    NodePtr fn_expr_side;   // expression that looks up the function
    NodePtr this_arg;       // matching `this` for .apply
    if (callee->kind == NodeKind::MemberAccess || callee->kind == NodeKind::IndexAccess) {
      NodePtr obj = std::move(callee->children[0]);
      NodePtr obj_use;
      if (is_pure_atom(*obj)) {
        this_arg = clone(*obj);
        obj_use = std::move(obj);
      } else {
        std::string t = fresh_temp();
        this_arg = ident(t);
        obj_use = assign(ident(t), std::move(obj));
      }
      if (callee->kind == NodeKind::MemberAccess) {
        fn_expr_side = member(std::move(obj_use), callee->token);
      } else {
        fn_expr_side = index(std::move(obj_use), std::move(callee->children[1]));
      }
    } else {
      fn_expr_side = std::move(callee);
      this_arg = null_lit();
    }
    std::vector<NodePtr> apply_args;
    apply_args.push_back(std::move(this_arg));
    apply_args.push_back(std::move(args_array));
    slot = call(member(std::move(fn_expr_side), "apply"), std::move(apply_args));
  }
};

}  // namespace

TransformOutcome rewrite_rest_and_spread(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rest_rewrites > 0) out.removed_features = out.removed_features.with(Feature::RestParameters);
  if (rw.spread_rewrites > 0)
    out.removed_features = out.removed_features.with(Feature::SpreadExpressions);
  if (rw.rest_rewrites > 0 || rw.spread_rewrites > 0) out.changed = true;
  if (rw.used_array_from) out.helpers_used = {"$arrayFrom"};
  return out;
}

}  // namespace esdown
