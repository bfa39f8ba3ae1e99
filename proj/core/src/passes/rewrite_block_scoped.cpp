#include "esdown/passes.hpp"

#include <map>
#include <set>
#include <string>

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// let/const become var. Distinct block bindings that would collide after
// var-merging are alpha-renamed to `name$<n>`, fresh against every identifier
// in the function. A block-scoped binding declared inside a loop and captured
// by a function created in that loop would change meaning under var, so that
// is rejected with UNSUPPORTED_CAPTURE instead of being miscompiled.
class Rewriter {
 public:
  std::size_t visited = 0;
  std::size_t conversions = 0;

  void run(ScriptNode& script) {
    enter_function(*script.root);
  }

 private:
  struct Binding {
    std::string current;
    bool loop_scoped = false;
    int fn_depth = 0;
  };

  std::vector<std::map<std::string, Binding>> scopes_;
  std::vector<std::set<std::string>> claimed_;   // per enclosing function
  std::vector<std::set<std::string>> names_;     // identifier pool per function
  int fn_depth_ = 0;
  int loop_depth_ = 0;

  static void collect_tokens(const Node& n, std::set<std::string>& out) {
    if (!n.token.empty()) out.insert(n.token);
    for (const auto& c : n.children) collect_tokens(*c, out);
  }

  // Function-scoped names bind as if hoisted; claiming them up front makes an
  // earlier block-scoped `x` rename away from a later `var x`.
  static void preclaim(const Node& n, std::set<std::string>& out, bool root) {
    if (!root && is_function_node(n.kind)) return;
    if (n.kind == NodeKind::VarDecl || n.kind == NodeKind::FunctionDecl ||
        n.kind == NodeKind::ClassDecl)
      out.insert(n.token);
    for (const auto& c : n.children) preclaim(*c, out, false);
  }

  void enter_function(Node& fn_or_script) {
    ++fn_depth_;
    int saved_loop = loop_depth_;
    loop_depth_ = 0;
    claimed_.emplace_back();
    names_.emplace_back();
    scopes_.emplace_back();

    collect_tokens(fn_or_script, names_.back());
    preclaim(fn_or_script, claimed_.back(), true);

    if (fn_or_script.kind == NodeKind::Script) {
      ++visited;
      for (auto& c : fn_or_script.children) walk(*c);
    } else {
      Node& params = fn_or_script.child(0);
      for (auto& p : params.children) {
        claimed_.back().insert(p->token);
        scopes_.back()[p->token] = Binding{p->token, false, fn_depth_};
        ++visited;
        for (auto& d : p->children) walk(*d);  // default initializers
      }
      walk(fn_or_script.child(fn_or_script.children.size() - 1));
    }

    scopes_.pop_back();
    names_.pop_back();
    claimed_.pop_back();
    loop_depth_ = saved_loop;
    --fn_depth_;
  }

  std::string fresh_rename(const std::string& base) {
    int i = 1;
    while (true) {
      std::string cand = base + "$" + std::to_string(i);
      if (names_.back().count(cand) == 0 && claimed_.back().count(cand) == 0) {
        names_.back().insert(cand);
        return cand;
      }
      ++i;
    }
  }

  void declare_block_scoped(Node& decl) {
    ++conversions;
    std::string name = decl.token;
    std::string final_name = name;
    if (claimed_.back().count(name) != 0) final_name = fresh_rename(name);
    claimed_.back().insert(final_name);
    decl.kind = NodeKind::VarDecl;
    decl.token = final_name;
    scopes_.back()[name] = Binding{final_name, loop_depth_ > 0, fn_depth_};
  }

  void declare_plain(const std::string& name) {
    scopes_.back()[name] = Binding{name, false, fn_depth_};
  }

  void resolve_identifier(Node& n) {
    for (std::size_t i = scopes_.size(); i-- > 0;) {
      auto hit = scopes_[i].find(n.token);
      if (hit == scopes_[i].end()) continue;
      const Binding& b = hit->second;
      if (b.loop_scoped && b.fn_depth < fn_depth_)
        fail(DiagCode::UnsupportedCapture,
             "'" + n.token +
                 "' is block-scoped inside a loop and captured by a function",
             n.span);
      n.token = b.current;
      return;
    }
  }

  void walk(Node& n) {
    ++visited;
    switch (n.kind) {
      case NodeKind::Identifier:
        resolve_identifier(n);
        return;
      case NodeKind::VarDecl:
        for (auto& c : n.children) walk(*c);
        declare_plain(n.token);
        return;
      case NodeKind::LetDecl:
      case NodeKind::ConstDecl:
        for (auto& c : n.children) walk(*c);  // init sees the outer binding
        declare_block_scoped(n);
        return;
      case NodeKind::FunctionDecl:
        declare_plain(n.token);
        enter_function(n);
        return;
      case NodeKind::FunctionExpr:
      case NodeKind::ArrowFunction:
      case NodeKind::Method:
        enter_function(n);
        return;
      case NodeKind::Block: {
        scopes_.emplace_back();
        for (auto& c : n.children) walk(*c);
        scopes_.pop_back();
        return;
      }
      case NodeKind::While: {
        walk(n.child(0));
        ++loop_depth_;
        scopes_.emplace_back();
        walk(n.child(1));
        scopes_.pop_back();
        --loop_depth_;
        return;
      }
      case NodeKind::For: {
        ++loop_depth_;
        scopes_.emplace_back();  // head bindings scope over the whole loop
        for (auto& c : n.children) walk(*c);
        scopes_.pop_back();
        --loop_depth_;
        return;
      }
      case NodeKind::TryCatch: {
        walk(n.child(0));
        scopes_.emplace_back();
        scopes_.back()[n.token] = Binding{n.token, false, fn_depth_};
        walk(n.child(1));
        scopes_.pop_back();
        return;
      }
      case NodeKind::ClassDecl:
        declare_plain(n.token);
        for (auto& c : n.children) walk(*c);
        return;
      default:
        for (auto& c : n.children) walk(*c);
        return;
    }
  }
};

}  // namespace

TransformOutcome rewrite_block_scoped(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.conversions > 0) {
    out.changed = true;
    out.removed_features = {Feature::BlockScopedDeclarations};
  }
  return out;
}

}  // namespace esdown
