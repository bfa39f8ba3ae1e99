#include "esdown/passes.hpp"

#include <map>
#include <set>
#include <string>

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// A generator compiles to a state machine: locals hoist into the wrapper
// function, control flow becomes numbered states, and each yield stores the
// next state before returning `{ value, done: false }` from the step function
// handed to $makeIterator.
//
// Supported yield positions are statement-shaped: an expression statement, the
// full right side of a plain assignment, a declaration initializer, or the
// full return argument — nested in straight-line code, `if`, and `while` only.
// Anything else raises UNSUPPORTED_YIELD_POSITION rather than miscompiling.
class GenCompiler {
 public:
  GenCompiler(Node& fn, TempAllocator& temps) : fn_(fn), temps_(temps) {}

  void compile() {
    Node& params = fn_.child(0);
    if (const Node* y = find_in_own_body(params, NodeKind::Yield))
      fail(DiagCode::UnsupportedYieldPosition,
           "yield is not supported in parameter defaults", y->span);
    if (fn_.kind == NodeKind::Method && references_super(fn_.child(1)))
      fail(DiagCode::UnsupportedConstruct,
           "'super' inside a generator method is not supported", fn_.span);

    collect_names(fn_);
    for (const auto& p : params.children) hoisted_names_.insert(p->token);

    NodePtr body = std::move(fn_.children[1]);

    std::vector<NodePtr> prologue;
    if (references_this(*body)) {
      std::string alias = temps_.fresh();
      replace_this(*body, alias);
      prologue.push_back(var_decl(alias, this_expr()));
    }
    if (references_arguments(*body)) {
      std::string alias = temps_.fresh();
      replace_arguments(*body, alias);
      prologue.push_back(var_decl(alias, ident("arguments")));
    }

    states_.emplace_back();
    cur_ = 0;
    frames_.emplace_back();
    compile_stmts(body->children);
    frames_.pop_back();
    if (states_[cur_].empty() || states_[cur_].back()->kind != NodeKind::Return) {
      emit(done_return(void_0()));
    }

    // function ($v) { $sent = $v; while (true) { dispatch } }
    NodePtr dispatch = block({});
    dispatch->children.push_back(ret(done_return_expr(void_0())));
    NodePtr chain = std::move(dispatch);
    for (std::size_t i = states_.size(); i-- > 0;) {
      auto arm = make_node(NodeKind::If);
      arm->children.push_back(
          bin("===", ident("$state"), number(std::to_string(i))));
      arm->children.push_back(block(std::move(states_[i])));
      arm->children.push_back(std::move(chain));
      chain = std::move(arm);
    }
    auto loop = make_node(NodeKind::While);
    loop->children.push_back(bool_lit(true));
    NodePtr loop_body = block({});
    loop_body->children.push_back(std::move(chain));
    loop->children.push_back(std::move(loop_body));

    std::vector<NodePtr> step_stmts;
    step_stmts.push_back(expr_stmt(assign(ident("$sent"), ident("$v"))));
    step_stmts.push_back(std::move(loop));
    NodePtr step = fn_expr(param_list(make_params()), block(std::move(step_stmts)));

    std::vector<NodePtr> wrapper;
    wrapper.push_back(var_decl("$state", number("0")));
    wrapper.push_back(var_decl("$sent"));
    for (auto& p : prologue) wrapper.push_back(std::move(p));
    for (auto& d : hoisted_) wrapper.push_back(std::move(d));
    for (auto& f : hoisted_fns_) wrapper.push_back(std::move(f));
    std::vector<NodePtr> mk_arg;
    mk_arg.push_back(std::move(step));
    wrapper.push_back(ret(call(ident("$makeIterator"), std::move(mk_arg))));

    fn_.children[1] = block(std::move(wrapper));
    fn_.flags = static_cast<std::uint8_t>(fn_.flags & ~kFlagGenerator);
  }

 private:
  Node& fn_;
  TempAllocator& temps_;
  std::vector<std::vector<NodePtr>> states_;
  std::size_t cur_ = 0;
  std::vector<NodePtr> hoisted_;
  std::vector<NodePtr> hoisted_fns_;
  std::set<std::string> hoisted_names_;
  std::set<std::string> all_names_;
  std::vector<std::map<std::string, std::string>> frames_;

  static std::vector<NodePtr> make_params() {
    std::vector<NodePtr> v;
    v.push_back(param("$v"));
    return v;
  }

  void collect_names(const Node& n) {
    if (!n.token.empty()) all_names_.insert(n.token);
    for (const auto& c : n.children) collect_names(*c);
  }

  void emit(NodePtr stmt) { states_[cur_].push_back(std::move(stmt)); }

  std::size_t new_state() {
    states_.emplace_back();
    return states_.size() - 1;
  }

  NodePtr goto_state(std::size_t s) {
    return expr_stmt(assign(ident("$state"), number(std::to_string(s))));
  }

  NodePtr done_return_expr(NodePtr value) {
    std::vector<NodePtr> props;
    props.push_back(property("value", std::move(value)));
    props.push_back(property("done", bool_lit(true)));
    return object_lit(std::move(props));
  }

  NodePtr done_return(NodePtr value) { return ret(done_return_expr(std::move(value))); }

  // A return buried inside a verbatim statement still ends the generator, so
  // it must produce the done-shaped result the iterator protocol expects.
  // Inner functions keep their own returns untouched.
  void rewrite_nested_returns(Node& n) {
    if (n.kind == NodeKind::Return) {
      NodePtr value = n.children.empty() ? void_0() : std::move(n.children[0]);
      n.children.clear();
      n.children.push_back(done_return_expr(std::move(value)));
      return;
    }
    for (auto& c : n.children) {
      if (is_function_node(c->kind)) continue;
      rewrite_nested_returns(*c);
    }
  }

  // `$state = next; return { value: v, done: false };`
  void emit_yield(NodePtr operand) {
    std::size_t next = new_state();
    emit(goto_state(next));
    std::vector<NodePtr> props;
    props.push_back(property("value", operand ? std::move(operand) : void_0()));
    props.push_back(property("done", bool_lit(false)));
    emit(ret(object_lit(std::move(props))));
    cur_ = next;
  }

  [[noreturn]] void bad_yield(const Node& holder) {
    const Node* y = find_in_own_body(holder, NodeKind::Yield);
    fail(DiagCode::UnsupportedYieldPosition,
         "yield is only supported as a statement, assignment source, "
         "declaration initializer, or return argument",
         y != nullptr ? y->span : holder.span);
  }

  void compile_stmts(std::vector<NodePtr>& stmts) {
    for (auto& s : stmts) compile_stmt(std::move(s));
  }

  void compile_stmt(NodePtr stmt) {
    Node& n = *stmt;
    switch (n.kind) {
      case NodeKind::Empty:
        return;
      case NodeKind::VarDecl:
      case NodeKind::LetDecl:
      case NodeKind::ConstDecl: {
        NodePtr init = n.children.empty() ? nullptr : std::move(n.children[0]);
        std::string name = declare_binding(n.token, n.kind != NodeKind::VarDecl);
        if (init == nullptr) return;
        if (init->kind == NodeKind::Yield) {
          NodePtr operand =
              init->children.empty() ? nullptr : std::move(init->children[0]);
          if (operand) rename_refs(*operand);
          emit_yield(std::move(operand));
          emit(expr_stmt(assign(ident(name), ident("$sent"))));
          return;
        }
        if (contains_in_own_body(*init, NodeKind::Yield)) bad_yield(*init);
        rename_refs(*init);
        emit(expr_stmt(assign(ident(name), std::move(init))));
        return;
      }
      case NodeKind::ExprStmt: {
        Node& e = n.child(0);
        if (e.kind == NodeKind::Yield) {
          NodePtr operand = e.children.empty() ? nullptr : std::move(e.children[0]);
          if (operand) {
            if (contains_in_own_body(*operand, NodeKind::Yield)) bad_yield(*operand);
            rename_refs(*operand);
          }
          emit_yield(std::move(operand));
          return;
        }
        if (e.kind == NodeKind::Assign && e.token == "=" &&
            e.child(1).kind == NodeKind::Yield) {
          Node& y = e.child(1);
          NodePtr operand = y.children.empty() ? nullptr : std::move(y.children[0]);
          if (operand) {
            if (contains_in_own_body(*operand, NodeKind::Yield)) bad_yield(*operand);
            rename_refs(*operand);
          }
          NodePtr target = std::move(e.children[0]);
          if (contains_in_own_body(*target, NodeKind::Yield)) bad_yield(*target);
          rename_refs(*target);
          emit_yield(std::move(operand));
          emit(expr_stmt(assign(std::move(target), ident("$sent"))));
          return;
        }
        if (contains_in_own_body(e, NodeKind::Yield)) bad_yield(e);
        rename_refs(n);
        emit(std::move(stmt));
        return;
      }
      case NodeKind::Return: {
        if (n.children.empty()) {
          emit(done_return(void_0()));
          return;
        }
        NodePtr arg = std::move(n.children[0]);
        if (arg->kind == NodeKind::Yield) {
          NodePtr operand = arg->children.empty() ? nullptr : std::move(arg->children[0]);
          if (operand) {
            if (contains_in_own_body(*operand, NodeKind::Yield)) bad_yield(*operand);
            rename_refs(*operand);
          }
          emit_yield(std::move(operand));
          emit(done_return(ident("$sent")));
          return;
        }
        if (contains_in_own_body(*arg, NodeKind::Yield)) bad_yield(*arg);
        rename_refs(*arg);
        emit(done_return(std::move(arg)));
        return;
      }
      case NodeKind::Block: {
        if (!contains_in_own_body(n, NodeKind::Yield)) break;  // verbatim
        frames_.emplace_back();
        compile_stmts(n.children);
        frames_.pop_back();
        return;
      }
      case NodeKind::If: {
        if (!contains_in_own_body(n, NodeKind::Yield)) break;  // verbatim
        Node& cond = n.child(0);
        if (contains_in_own_body(cond, NodeKind::Yield)) bad_yield(cond);
        rename_refs(cond);
        bool has_else = n.children.size() > 2;
        std::size_t then_state = new_state();
        std::size_t else_state = has_else ? new_state() : 0;
        std::size_t join = new_state();
        if (!has_else) else_state = join;

        auto branch = make_node(NodeKind::If, n.span);
        branch->children.push_back(std::move(n.children[0]));
        NodePtr then_blk = block({});
        then_blk->children.push_back(goto_state(then_state));
        branch->children.push_back(std::move(then_blk));
        NodePtr else_blk = block({});
        else_blk->children.push_back(goto_state(else_state));
        branch->children.push_back(std::move(else_blk));
        emit(std::move(branch));

        cur_ = then_state;
        compile_branch(std::move(n.children[1]));
        emit(goto_state(join));
        if (has_else) {
          cur_ = else_state;
          compile_branch(std::move(n.children[2]));
          emit(goto_state(join));
        }
        cur_ = join;
        return;
      }
      case NodeKind::While: {
        if (!contains_in_own_body(n, NodeKind::Yield)) break;  // verbatim
        Node& cond = n.child(0);
        if (contains_in_own_body(cond, NodeKind::Yield)) bad_yield(cond);
        std::size_t test = new_state();
        std::size_t body_state = new_state();
        std::size_t after = new_state();
        emit(goto_state(test));

        cur_ = test;
        rename_refs(cond);
        auto branch = make_node(NodeKind::If, n.span);
        branch->children.push_back(std::move(n.children[0]));
        NodePtr then_blk = block({});
        then_blk->children.push_back(goto_state(body_state));
        branch->children.push_back(std::move(then_blk));
        NodePtr else_blk = block({});
        else_blk->children.push_back(goto_state(after));
        branch->children.push_back(std::move(else_blk));
        emit(std::move(branch));

        cur_ = body_state;
        compile_branch(std::move(n.children[1]));
        emit(goto_state(test));
        cur_ = after;
        return;
      }
      case NodeKind::FunctionDecl: {
        // Hoist: the binding must outlive the state that declared it.
        rename_refs(n);
        hoisted_names_.insert(n.token);
        hoisted_fns_.push_back(std::move(stmt));
        return;
      }
      case NodeKind::For:
      case NodeKind::TryCatch:
      case NodeKind::Throw:
        if (contains_in_own_body(n, NodeKind::Yield)) bad_yield(n);
        break;  // verbatim
      default:
        if (contains_in_own_body(n, NodeKind::Yield)) bad_yield(n);
        break;  // verbatim
    }
    // Verbatim statement: runs entirely within one state. Only its `var`
    // declarations outlive the state; block-scoped ones cannot be referenced
    // outside the statement and stay put.
    hoist_vars(*stmt);
    rename_refs(*stmt);
    rewrite_nested_returns(*stmt);
    emit(std::move(stmt));
  }

  // An if/while branch body is a Block; its statements join the state stream
  // under a fresh rename frame (the block boundary dissolves).
  void compile_branch(NodePtr body) {
    frames_.emplace_back();
    if (body->kind == NodeKind::Block) {
      compile_stmts(body->children);
    } else {
      compile_stmt(std::move(body));
    }
    frames_.pop_back();
  }

  // Register a binding that must live in the wrapper. Returns the (possibly
  // renamed) name. Block-scoped bindings keep their declaration kind so the
  // tree still anchors BlockScopedDeclarations; `var` merges duplicates.
  std::string declare_binding(const std::string& name, bool block_scoped) {
    if (!block_scoped) {
      if (hoisted_names_.count(name) == 0) {
        hoisted_names_.insert(name);
        all_names_.insert(name);
        hoisted_.push_back(var_decl(name));
      }
      return name;
    }
    std::string out = name;
    if (hoisted_names_.count(out) != 0) {
      int i = 1;
      while (all_names_.count(name + "$" + std::to_string(i)) != 0 ||
             hoisted_names_.count(name + "$" + std::to_string(i)) != 0)
        ++i;
      out = name + "$" + std::to_string(i);
    }
    hoisted_names_.insert(out);
    all_names_.insert(out);
    hoisted_.push_back(let_decl(out));
    if (!frames_.empty()) frames_.back()[name] = out;
    return out;
  }

  void rename_refs(Node& n) {
    std::set<std::string> shadow;
    rename_apply(n, shadow);
  }

  // Apply active renames to identifier references, honouring shadowing by
  // params and declarations inside nested scopes.
  void rename_apply(Node& n, const std::set<std::string>& shadow) {
    if (n.kind == NodeKind::Identifier) {
      if (shadow.count(n.token) == 0) {
        for (std::size_t i = frames_.size(); i-- > 0;) {
          auto hit = frames_[i].find(n.token);
          if (hit != frames_[i].end()) {
            n.token = hit->second;
            break;
          }
        }
      }
      return;
    }
    if (is_function_node(n.kind)) {
      std::set<std::string> inner = shadow;
      for (const auto& p : n.child(0).children) inner.insert(p->token);
      collect_decl_names(n.child(n.children.size() - 1), inner);
      for (auto& c : n.children) rename_apply(*c, inner);
      return;
    }
    if (n.kind == NodeKind::Block) {
      std::set<std::string> inner = shadow;
      collect_shallow_decls(n, inner);
      for (auto& c : n.children) rename_apply(*c, inner);
      return;
    }
    for (auto& c : n.children) rename_apply(*c, shadow);
  }

  static void collect_shallow_decls(const Node& b, std::set<std::string>& out) {
    for (const auto& c : b.children) {
      if (c->kind == NodeKind::LetDecl || c->kind == NodeKind::ConstDecl ||
          c->kind == NodeKind::VarDecl || c->kind == NodeKind::FunctionDecl ||
          c->kind == NodeKind::ClassDecl)
        out.insert(c->token);
    }
  }

  // All declaration names anywhere in a function body (vars are function
  // scoped, and any let shadows at least its own block — over-approximating
  // shadow sets is safe because our renamed names are fresh).
  static void collect_decl_names(const Node& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::LetDecl || n.kind == NodeKind::ConstDecl ||
        n.kind == NodeKind::VarDecl || n.kind == NodeKind::FunctionDecl ||
        n.kind == NodeKind::ClassDecl)
      out.insert(n.token);
    for (const auto& c : n.children) collect_decl_names(*c, out);
  }

  // Convert `var` declarations inside a verbatim statement to assignments and
  // hoist the names; `for (var i = …)` keeps a bare assignment in its slot.
  void hoist_vars(Node& n) {
    if (is_function_node(n.kind)) return;
    for (auto& c : n.children) {
      if (c->kind == NodeKind::VarDecl) {
        std::string name = declare_binding(c->token, false);
        if (c->children.empty()) {
          c = make_node(NodeKind::Empty);
          continue;
        }
        NodePtr init = std::move(c->children[0]);
        hoist_vars(*init);
        NodePtr asn = assign(ident(name, c->span), std::move(init));
        c = n.kind == NodeKind::For ? std::move(asn) : expr_stmt(std::move(asn));
        continue;
      }
      hoist_vars(*c);
    }
  }
};

class Rewriter {
 public:
  explicit Rewriter(ScriptNode& script) : temps_(*script.root) {}

  void run(ScriptNode& script) { walk(*script.root); }

  std::size_t visited = 0;
  std::size_t rewrites = 0;

 private:
  TempAllocator temps_;

  void walk(Node& n) {
    ++visited;
    for (auto& c : n.children) walk(*c);
    if (is_function_node(n.kind) && n.has_flag(kFlagGenerator)) {
      GenCompiler(n, temps_).compile();
      ++rewrites;
    }
  }
};

}  // namespace

TransformOutcome rewrite_generators(ScriptNode& script) {
  Rewriter rw(script);
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::Generators};
    out.helpers_used = {"$makeIterator"};
  }
  return out;
}

}  // namespace esdown
