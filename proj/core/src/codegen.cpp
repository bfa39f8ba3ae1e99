#include "esdown/codegen.hpp"

#include <cassert>

#include "esdown/parser.hpp"

namespace esdown {

namespace {

// Binding strength, higher binds tighter. Mirrors the parser's grammar; the
// printer inserts parentheses whenever a child's level is below the minimum
// its position requires.
int expr_level(const Node& n) {
  switch (n.kind) {
    case NodeKind::Identifier:
    case NodeKind::NumberLit:
    case NodeKind::StringLit:
    case NodeKind::BoolLit:
    case NodeKind::NullLit:
    case NodeKind::UndefinedLit:
    case NodeKind::This:
    case NodeKind::ArrayLit:
    case NodeKind::ObjectLit:
    case NodeKind::TemplateLit:
    case NodeKind::FunctionExpr:
      return 18;
    case NodeKind::MemberAccess:
    case NodeKind::IndexAccess:
    case NodeKind::Call:
    case NodeKind::New:
    case NodeKind::OptionalChain:
      return 17;
    case NodeKind::UnaryOp:
    case NodeKind::Await:
      return 16;
    case NodeKind::BinaryOp: {
      const std::string& op = n.token;
      if (op == "**") return 15;
      if (op == "*" || op == "/" || op == "%") return 14;
      if (op == "+" || op == "-") return 13;
      if (op == "<" || op == ">" || op == "<=" || op == ">=") return 12;
      if (op == "&&") return 10;
      if (op == "||") return 9;
      return 11;  // equality
    }
    case NodeKind::Nullish:
      return 8;
    case NodeKind::Conditional:
      return 7;
    case NodeKind::Assign:
      return 3;
    case NodeKind::ArrowFunction:
    case NodeKind::Yield:
      return 2;
    default:
      return 18;
  }
}

// Would this expression, printed at statement start, begin with `function`
// or `{` and be misparsed as a declaration/block?
bool starts_ambiguously(const Node& n) {
  switch (n.kind) {
    case NodeKind::FunctionExpr:
    case NodeKind::ObjectLit:
      return true;
    case NodeKind::MemberAccess:
    case NodeKind::IndexAccess:
    case NodeKind::Call:
    case NodeKind::OptionalChain:
    case NodeKind::Assign:
    case NodeKind::BinaryOp:
    case NodeKind::Nullish:
    case NodeKind::Conditional:
      return starts_ambiguously(n.child(0));
    default:
      return false;
  }
}

std::string quote_string(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\0': out += "\\0"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string escape_template_chunk(const std::string& value) {
  std::string out;
  for (char c : value) {
    switch (c) {
      case '`': out += "\\`"; break;
      case '\\': out += "\\\\"; break;
      case '$': out += "\\$"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\0': out += "\\0"; break;
      default: out += c;  // raw newlines are legal in templates
    }
  }
  return out;
}

bool identifier_shaped(const std::string& s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
  };
  if (!head(s[0])) return false;
  for (char c : s.substr(1))
    if (!head(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

class Printer {
 public:
  std::string run_script(const Node& script) {
    for (const auto& stmt : script.children) statement(*stmt, 0);
    return std::move(out_);
  }

  std::string run_statement(const Node& stmt) {
    statement(stmt, 0);
    return std::move(out_);
  }

  std::string run_expression(const Node& e) {
    expr(e, 0);
    return std::move(out_);
  }

 private:
  std::string out_;

  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void block_body(const Node& block, int depth) {
    out_ += "{\n";
    for (const auto& stmt : block.children) statement(*stmt, depth + 1);
    indent(depth);
    out_ += "}";
  }

  void params(const Node& list) {
    out_ += '(';
    for (std::size_t i = 0; i < list.children.size(); ++i) {
      if (i) out_ += ", ";
      const Node& p = list.child(i);
      if (p.kind == NodeKind::RestParam) {
        out_ += "...";
        out_ += p.token;
      } else if (p.kind == NodeKind::DefaultParam) {
        out_ += p.token;
        out_ += " = ";
        expr(p.child(0), 2);
      } else {
        out_ += p.token;
      }
    }
    out_ += ')';
  }

  void function_like(const Node& n, int depth) {
    if (n.has_flag(kFlagAsync)) out_ += "async ";
    out_ += "function";
    if (n.has_flag(kFlagGenerator)) out_ += "*";
    if (!n.token.empty()) {
      out_ += ' ';
      out_ += n.token;
    }
    params(n.child(0));
    out_ += ' ';
    block_body(n.child(1), depth);
  }

  void method(const Node& m, int depth) {
    indent(depth);
    if (m.has_flag(kFlagStatic)) out_ += "static ";
    if (m.has_flag(kFlagAsync)) out_ += "async ";
    if (m.has_flag(kFlagGenerator)) out_ += "*";
    out_ += m.token;
    params(m.child(0));
    out_ += ' ';
    block_body(m.child(1), depth);
    out_ += '\n';
  }

  void decl_no_semi(const Node& d) {
    out_ += d.kind == NodeKind::VarDecl ? "var " : d.kind == NodeKind::LetDecl ? "let " : "const ";
    out_ += d.token;
    if (!d.children.empty()) {
      out_ += " = ";
      expr(d.child(0), 2);
    }
  }

  void if_statement(const Node& n, int depth) {
    out_ += "if (";
    expr(n.child(0), 2);
    out_ += ") ";
    block_body(n.child(1), depth);
    if (n.children.size() == 3) {
      out_ += " else ";
      const Node& alt = n.child(2);
      if (alt.kind == NodeKind::If)
        if_statement(alt, depth);
      else
        block_body(alt, depth);
    }
  }

  void statement(const Node& n, int depth) {
    switch (n.kind) {
      case NodeKind::VarDecl:
      case NodeKind::LetDecl:
      case NodeKind::ConstDecl:
        indent(depth);
        decl_no_semi(n);
        out_ += ";\n";
        return;
      case NodeKind::FunctionDecl:
        indent(depth);
        function_like(n, depth);
        out_ += '\n';
        return;
      case NodeKind::ClassDecl: {
        indent(depth);
        out_ += "class ";
        out_ += n.token;
        std::size_t first_method = 0;
        if (n.has_flag(kFlagHasHeritage)) {
          out_ += " extends ";
          const Node& heritage = n.child(0);
          if (expr_level(heritage) < 17 || heritage.kind == NodeKind::New) {
            out_ += '(';
            expr(heritage, 0);
            out_ += ')';
          } else {
            expr(heritage, 17);
          }
          first_method = 1;
        }
        out_ += " {\n";
        for (std::size_t i = first_method; i < n.children.size(); ++i) method(n.child(i), depth + 1);
        indent(depth);
        out_ += "}\n";
        return;
      }
      case NodeKind::Block:
        indent(depth);
        block_body(n, depth);
        out_ += '\n';
        return;
      case NodeKind::If:
        indent(depth);
        if_statement(n, depth);
        out_ += '\n';
        return;
      case NodeKind::While:
        indent(depth);
        out_ += "while (";
        expr(n.child(0), 2);
        out_ += ") ";
        block_body(n.child(1), depth);
        out_ += '\n';
        return;
      case NodeKind::For: {
        indent(depth);
        out_ += "for (";
        const Node& init = n.child(0);
        if (init.kind == NodeKind::VarDecl || init.kind == NodeKind::LetDecl ||
            init.kind == NodeKind::ConstDecl)
          decl_no_semi(init);
        else if (init.kind != NodeKind::Empty)
          expr(init, 2);
        out_ += "; ";
        if (n.child(1).kind != NodeKind::Empty) expr(n.child(1), 2);
        out_ += "; ";
        if (n.child(2).kind != NodeKind::Empty) expr(n.child(2), 2);
        out_ += ") ";
        block_body(n.child(3), depth);
        out_ += '\n';
        return;
      }
      case NodeKind::Return:
        indent(depth);
        out_ += "return";
        if (!n.children.empty()) {
          out_ += ' ';
          expr(n.child(0), 2);
        }
        out_ += ";\n";
        return;
      case NodeKind::Throw:
        indent(depth);
        out_ += "throw ";
        expr(n.child(0), 2);
        out_ += ";\n";
        return;
      case NodeKind::TryCatch:
        indent(depth);
        out_ += "try ";
        block_body(n.child(0), depth);
        out_ += " catch (";
        out_ += n.token;
        out_ += ") ";
        block_body(n.child(1), depth);
        out_ += '\n';
        return;
      case NodeKind::ExprStmt: {
        indent(depth);
        const Node& e = n.child(0);
        if (starts_ambiguously(e)) {
          out_ += '(';
          expr(e, 0);
          out_ += ')';
        } else {
          expr(e, 0);
        }
        out_ += ";\n";
        return;
      }
      case NodeKind::Empty:
        indent(depth);
        out_ += ";\n";
        return;
      default:
        assert(false && "non-statement node in statement position");
        return;
    }
  }

  void expr(const Node& n, int min_level) {
    if (expr_level(n) < min_level) {
      out_ += '(';
      expr_inner(n);
      out_ += ')';
    } else {
      expr_inner(n);
    }
  }

  void call_args(const Node& n, std::size_t first_arg) {
    out_ += '(';
    for (std::size_t i = first_arg; i < n.children.size(); ++i) {
      if (i > first_arg) out_ += ", ";
      const Node& arg = n.child(i);
      if (arg.kind == NodeKind::Spread) {
        out_ += "...";
        expr(arg.child(0), 2);
      } else {
        expr(arg, 2);
      }
    }
    out_ += ')';
  }

  void member_object(const Node& object) {
    // `1 .x` needs parens; so does calling/indexing into a `new` result? No:
    // `new F().x` is fine — only numeric literals are re-lexing hazards.
    if (object.kind == NodeKind::NumberLit) {
      out_ += '(';
      expr_inner(object);
      out_ += ')';
    } else {
      expr(object, 17);
    }
  }

  void expr_inner(const Node& n) {
    switch (n.kind) {
      case NodeKind::Identifier:
        out_ += n.token;
        return;
      case NodeKind::NumberLit:
        out_ += n.token;
        return;
      case NodeKind::StringLit:
        out_ += quote_string(n.token);
        return;
      case NodeKind::BoolLit:
        out_ += n.token;
        return;
      case NodeKind::NullLit:
        out_ += "null";
        return;
      case NodeKind::UndefinedLit:
        out_ += "undefined";
        return;
      case NodeKind::This:
        out_ += "this";
        return;
      case NodeKind::ArrayLit:
        out_ += '[';
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i) out_ += ", ";
          const Node& el = n.child(i);
          if (el.kind == NodeKind::Spread) {
            out_ += "...";
            expr(el.child(0), 2);
          } else {
            expr(el, 2);
          }
        }
        out_ += ']';
        return;
      case NodeKind::ObjectLit:
        if (n.children.empty()) {
          out_ += "{}";
          return;
        }
        out_ += "{ ";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i) out_ += ", ";
          const Node& prop = n.child(i);
          if (!prop.has_flag(kFlagStringKey) && identifier_shaped(prop.token))
            out_ += prop.token;
          else
            out_ += quote_string(prop.token);
          out_ += ": ";
          expr(prop.child(0), 2);
        }
        out_ += " }";
        return;
      case NodeKind::TemplateLit:
        out_ += '`';
        for (const auto& part : n.children) {
          if (part->kind == NodeKind::TemplateChunk) {
            out_ += escape_template_chunk(part->token);
          } else {
            out_ += "${";
            expr(*part, 2);
            out_ += '}';
          }
        }
        out_ += '`';
        return;
      case NodeKind::FunctionExpr:
        function_like(n, current_depth_guess());
        return;
      case NodeKind::ArrowFunction: {
        if (n.has_flag(kFlagAsync)) out_ += "async ";
        const Node& plist = n.child(0);
        if (plist.children.size() == 1 && plist.child(0).kind == NodeKind::Param) {
          out_ += plist.child(0).token;
        } else {
          params(plist);
        }
        out_ += " => ";
        const Node& body = n.child(1);
        if (body.kind == NodeKind::Block) {
          block_body(body, current_depth_guess());
        } else if (body.kind == NodeKind::ObjectLit) {
          out_ += '(';
          expr_inner(body);
          out_ += ')';
        } else {
          expr(body, 2);
        }
        return;
      }
      case NodeKind::MemberAccess:
        member_object(n.child(0));
        out_ += '.';
        out_ += n.token;
        return;
      case NodeKind::IndexAccess:
        member_object(n.child(0));
        out_ += '[';
        expr(n.child(1), 2);
        out_ += ']';
        return;
      case NodeKind::Call:
        expr(n.child(0), 17);
        call_args(n, 1);
        return;
      case NodeKind::New: {
        out_ += "new ";
        const Node& callee = n.child(0);
        if (callee.kind == NodeKind::Call || callee.kind == NodeKind::New ||
            callee.kind == NodeKind::OptionalChain) {
          out_ += '(';
          expr_inner(callee);
          out_ += ')';
        } else {
          expr(callee, 17);
        }
        call_args(n, 1);
        return;
      }
      case NodeKind::OptionalChain:
        member_object(n.child(0));
        if (n.has_flag(kFlagOptionalCall)) {
          out_ += "?.";
          call_args(n, 1);
        } else if (n.has_flag(kFlagOptionalIndex)) {
          out_ += "?.[";
          expr(n.child(1), 2);
          out_ += ']';
        } else {
          out_ += "?.";
          out_ += n.token;
        }
        return;
      case NodeKind::UnaryOp: {
        out_ += n.token;
        bool word = n.token == "typeof" || n.token == "void";
        const Node& operand = n.child(0);
        // `- -x` must not fuse into `--`; same for `+ +x`.
        bool same_sign = !word && operand.kind == NodeKind::UnaryOp && operand.token == n.token &&
                         (n.token == "-" || n.token == "+");
        if (word || same_sign) out_ += ' ';
        expr(operand, 16);
        return;
      }
      case NodeKind::Await:
        out_ += "await ";
        expr(n.child(0), 16);
        return;
      case NodeKind::Yield:
        out_ += "yield";
        if (!n.children.empty()) {
          out_ += ' ';
          expr(n.child(0), 2);
        }
        return;
      case NodeKind::BinaryOp: {
        int level = expr_level(n);
        if (n.token == "**") {
          // right-associative, and a bare unary/exponent lhs is ungrammatical
          expr(n.child(0), 17);
          out_ += " ** ";
          expr(n.child(1), 15);
        } else if (n.token == "&&") {
          expr(n.child(0), 10);
          out_ += " && ";
          expr(n.child(1), 11);
        } else if (n.token == "||") {
          expr(n.child(0), 9);
          out_ += " || ";
          expr(n.child(1), 10);
        } else {
          expr(n.child(0), level);
          out_ += ' ';
          out_ += n.token;
          out_ += ' ';
          expr(n.child(1), level + 1);
        }
        return;
      }
      case NodeKind::Nullish:
        // operands sit at equality level; only a nullish lhs may stay bare
        if (n.child(0).kind == NodeKind::Nullish)
          expr(n.child(0), 8);
        else
          expr(n.child(0), 11);
        out_ += " ?? ";
        expr(n.child(1), 11);
        return;
      case NodeKind::Conditional:
        expr(n.child(0), 8);
        out_ += " ? ";
        expr(n.child(1), 2);
        out_ += " : ";
        expr(n.child(2), 2);
        return;
      case NodeKind::Assign:
        expr(n.child(0), 17);
        out_ += ' ';
        out_ += n.token;
        out_ += ' ';
        expr(n.child(1), 2);
        return;
      default:
        assert(false && "non-expression node in expression position");
        return;
    }
  }

  // Nested function bodies indent relative to the line they start on. The
  // printer tracks this through the current line's leading spaces.
  int current_depth_guess() const {
    std::size_t line_start = out_.rfind('\n');
    std::size_t begin = line_start == std::string::npos ? 0 : line_start + 1;
    std::size_t spaces = 0;
    while (begin + spaces < out_.size() && out_[begin + spaces] == ' ') ++spaces;
    return static_cast<int>(spaces / 2);
  }
};

}  // namespace

std::string print_script(const ScriptNode& script) { return Printer{}.run_script(*script.root); }

std::string print_script_with_prelude(const ScriptNode& script,
                                      const std::vector<std::string>& helper_sources) {
  std::string out;
  for (const auto& src : helper_sources) {
    auto parsed = parse(src, "<helper>", ParseOptions{.allow_reserved = true});
    assert(parsed.ok() && "runtime helper must be valid MiniES");
    out += print_script(*parsed.script);
  }
  out += print_script(script);
  return out;
}

std::string print_statement(const Node& stmt) { return Printer{}.run_statement(stmt); }

std::string print_expression(const Node& expr) { return Printer{}.run_expression(expr); }

}  // namespace esdown
