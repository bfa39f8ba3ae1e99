#include "esdown/parser.hpp"

#include <array>
#include <cctype>

#include "esdown/lexer.hpp"

namespace esdown {

namespace {

struct ParseError {
  Diagnostic diag;
};

[[noreturn]] void bail(DiagCode code, std::string message, Span span) {
  throw ParseError{{code, std::move(message), span}};
}

bool is_punct(const Token& t, std::string_view p) {
  return t.kind == TokenKind::Punct && t.text == p;
}
bool is_kw(const Token& t, std::string_view k) {
  return t.kind == TokenKind::Keyword && t.text == k;
}

constexpr std::array<std::string_view, 7> kAssignOps = {"=", "+=", "-=", "*=", "/=", "%=", "**="};

bool is_assign_op(const Token& t) {
  if (t.kind != TokenKind::Punct) return false;
  for (auto op : kAssignOps)
    if (t.text == op) return true;
  return false;
}

Span rebase_span(Span inner, Span base) {
  Span out;
  out.offset = base.offset + inner.offset;
  if (inner.line == 1) {
    out.line = base.line;
    out.column = base.column + inner.column - 1;
  } else {
    out.line = base.line + inner.line - 1;
    out.column = inner.column;
  }
  return out;
}

// Per-function parsing context. Arrows inherit `allow_super` (they have no
// own `this`); ordinary functions reset it.
struct FnCtx {
  bool in_async = false;
  bool in_generator = false;
  bool in_function = false;
  bool allow_super = false;
  bool in_arrow = false;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseOptions opts, FeatureSet* features, FnCtx initial)
      : tokens_(std::move(tokens)), opts_(opts), features_(features) {
    ctx_.push_back(initial);
  }

  NodePtr parse_script() {
    auto script = make_node(NodeKind::Script, peek().span);
    while (!at_eof()) script->children.push_back(parse_statement());
    return script;
  }

  NodePtr parse_single_expression() {
    auto e = parse_assignment();
    if (!at_eof()) bail(DiagCode::SyntaxError, "unexpected token '" + peek().text + "'", peek().span);
    return e;
  }

 private:
  std::vector<Token> tokens_;
  ParseOptions opts_;
  FeatureSet* features_;
  std::vector<FnCtx> ctx_;
  std::size_t pos_ = 0;

  const FnCtx& ctx() const { return ctx_.back(); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at_eof() const { return peek().kind == TokenKind::Eof; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept(std::string_view punct_text) {
    if (is_punct(peek(), punct_text)) {
      advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view punct_text, std::string_view what) {
    if (accept(punct_text)) return;
    // running into `instanceof`, `in`, ... mid-expression means the input
    // uses an operator MiniES deliberately lacks — say so
    if (peek().kind == TokenKind::Keyword && is_reserved_unsupported(peek().text))
      bail(DiagCode::UnsupportedConstruct, "'" + peek().text + "' is not supported", peek().span);
    bail(DiagCode::SyntaxError,
         std::string("expected '") + std::string(punct_text) + "' " + std::string(what) +
             ", found '" + peek().text + "'",
         peek().span);
  }

  void expect_semi() { expect(";", "to end statement"); }

  bool accept_kw(std::string_view word) {
    if (is_kw(peek(), word)) {
      advance();
      return true;
    }
    return false;
  }

  void expect_kw(std::string_view word) {
    if (!accept_kw(word))
      bail(DiagCode::SyntaxError,
           std::string("expected '") + std::string(word) + "', found '" + peek().text + "'",
           peek().span);
  }

  // Records anchored features the moment the node is finished, so Φ(S) is
  // accumulated during the parse itself.
  NodePtr done(NodePtr n) {
    *features_ = set_union(*features_, features_of_node(*n));
    return n;
  }

  std::string binding_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier)
      bail(DiagCode::SyntaxError, "expected identifier, found '" + t.text + "'", t.span);
    if (!opts_.allow_reserved && is_reserved_identifier(t.text))
      bail(DiagCode::SyntaxError, "'" + t.text + "' is a reserved identifier", t.span);
    advance();
    return t.text;
  }

  // ---- statements ----

  NodePtr parse_statement() {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) {
      if (is_reserved_unsupported(t.text))
        bail(DiagCode::UnsupportedConstruct, "'" + t.text + "' is not supported", t.span);
      if (t.text == "var" || t.text == "let" || t.text == "const") {
        auto d = parse_declaration(false);
        expect_semi();
        return d;
      }
      if (t.text == "function") return parse_function(NodeKind::FunctionDecl, false);
      if (t.text == "async" && is_kw(peek(1), "function")) {
        advance();
        return parse_function(NodeKind::FunctionDecl, true);
      }
      if (t.text == "class") return parse_class();
      if (t.text == "if") return parse_if();
      if (t.text == "while") return parse_while();
      if (t.text == "for") return parse_for();
      if (t.text == "return") return parse_return();
      if (t.text == "throw") return parse_throw();
      if (t.text == "try") return parse_try();
      if (t.text == "else" || t.text == "catch" || t.text == "extends" || t.text == "static")
        bail(DiagCode::SyntaxError, "unexpected '" + t.text + "'", t.span);
    }
    if (is_punct(t, "{")) return parse_block();
    if (is_punct(t, ";")) bail(DiagCode::SyntaxError, "unexpected ';'", t.span);
    auto stmt = make_node(NodeKind::ExprStmt, t.span);
    stmt->children.push_back(parse_assignment());
    expect_semi();
    return stmt;
  }

  NodePtr parse_declaration(bool in_for_header) {
    const Token& kw_tok = advance();
    NodeKind kind = kw_tok.text == "var"   ? NodeKind::VarDecl
                    : kw_tok.text == "let" ? NodeKind::LetDecl
                                           : NodeKind::ConstDecl;
    auto decl = make_node(kind, binding_name(), kw_tok.span);
    if (in_for_header && (is_kw(peek(), "of") || is_kw(peek(), "in")))
      bail(DiagCode::UnsupportedConstruct, "for-" + peek().text + " loops are not supported",
           peek().span);
    if (accept("=")) {
      decl->children.push_back(parse_assignment());
    } else if (kind == NodeKind::ConstDecl) {
      bail(DiagCode::SyntaxError, "const declaration requires an initializer", kw_tok.span);
    }
    if (is_punct(peek(), ","))
      bail(DiagCode::SyntaxError, "one declarator per declaration", peek().span);
    return done(std::move(decl));
  }

  NodePtr parse_block() {
    auto block = make_node(NodeKind::Block, peek().span);
    expect("{", "to open block");
    while (!is_punct(peek(), "}")) {
      if (at_eof()) bail(DiagCode::SyntaxError, "unterminated block", peek().span);
      block->children.push_back(parse_statement());
    }
    advance();
    return block;
  }

  NodePtr parse_if() {
    Span span = advance().span;  // if
    auto node = make_node(NodeKind::If, span);
    expect("(", "after 'if'");
    node->children.push_back(parse_assignment());
    expect(")", "after condition");
    node->children.push_back(parse_block());
    if (accept_kw("else")) {
      if (is_kw(peek(), "if"))
        node->children.push_back(parse_if());
      else
        node->children.push_back(parse_block());
    }
    return node;
  }

  NodePtr parse_while() {
    Span span = advance().span;
    auto node = make_node(NodeKind::While, span);
    expect("(", "after 'while'");
    node->children.push_back(parse_assignment());
    expect(")", "after condition");
    node->children.push_back(parse_block());
    return node;
  }

  NodePtr parse_for() {
    Span span = advance().span;
    auto node = make_node(NodeKind::For, span);
    expect("(", "after 'for'");
    if (is_punct(peek(), ";")) {
      node->children.push_back(make_node(NodeKind::Empty, peek().span));
    } else if (is_kw(peek(), "var") || is_kw(peek(), "let") || is_kw(peek(), "const")) {
      node->children.push_back(parse_declaration(true));
    } else {
      node->children.push_back(parse_assignment());
    }
    expect(";", "after loop initializer");
    if (is_punct(peek(), ";"))
      node->children.push_back(make_node(NodeKind::Empty, peek().span));
    else
      node->children.push_back(parse_assignment());
    expect(";", "after loop condition");
    if (is_punct(peek(), ")"))
      node->children.push_back(make_node(NodeKind::Empty, peek().span));
    else
      node->children.push_back(parse_assignment());
    expect(")", "after loop update");
    node->children.push_back(parse_block());
    return node;
  }

  NodePtr parse_return() {
    Span span = advance().span;
    if (!ctx().in_function) bail(DiagCode::SyntaxError, "'return' outside a function", span);
    auto node = make_node(NodeKind::Return, span);
    if (!is_punct(peek(), ";")) node->children.push_back(parse_assignment());
    expect_semi();
    return node;
  }

  NodePtr parse_throw() {
    Span span = advance().span;
    auto node = make_node(NodeKind::Throw, span);
    node->children.push_back(parse_assignment());
    expect_semi();
    return node;
  }

  NodePtr parse_try() {
    Span span = advance().span;
    auto node = make_node(NodeKind::TryCatch, span);
    node->children.push_back(parse_block());
    expect_kw("catch");
    expect("(", "after 'catch'");
    node->token = binding_name();
    expect(")", "after catch binding");
    node->children.push_back(parse_block());
    return node;
  }

  // ---- functions, classes ----

  NodePtr parse_function(NodeKind kind, bool is_async) {
    Span span = advance().span;  // function
    bool is_generator = accept("*");
    if (is_async && is_generator)
      bail(DiagCode::UnsupportedConstruct, "async generators are not supported", span);
    auto node = make_node(kind, span);
    if (is_async) node->flags |= kFlagAsync;
    if (is_generator) node->flags |= kFlagGenerator;
    if (kind == NodeKind::FunctionDecl) {
      node->token = binding_name();
    } else if (peek().kind == TokenKind::Identifier) {
      node->token = binding_name();
    }
    ctx_.push_back({is_async, is_generator, true, false});
    node->children.push_back(parse_param_list());
    node->children.push_back(parse_block());
    ctx_.pop_back();
    return done(std::move(node));
  }

  NodePtr parse_param_list() {
    auto params = make_node(NodeKind::ParamList, peek().span);
    expect("(", "to open parameter list");
    std::vector<std::string> seen;
    while (!is_punct(peek(), ")")) {
      if (!params->children.empty()) expect(",", "between parameters");
      Span at = peek().span;
      NodePtr param;
      if (accept("...")) {
        param = make_node(NodeKind::RestParam, binding_name(), at);
        if (!is_punct(peek(), ")"))
          bail(DiagCode::SyntaxError, "rest parameter must be last", peek().span);
      } else {
        std::string name = binding_name();
        if (accept("=")) {
          param = make_node(NodeKind::DefaultParam, name, at);
          param->children.push_back(parse_assignment());
        } else {
          param = make_node(NodeKind::Param, name, at);
        }
      }
      for (const auto& s : seen)
        if (s == param->token)
          bail(DiagCode::SyntaxError, "duplicate parameter '" + param->token + "'", at);
      seen.push_back(param->token);
      params->children.push_back(done(std::move(param)));
    }
    advance();
    return params;
  }

  NodePtr parse_class() {
    Span span = advance().span;  // class
    auto node = make_node(NodeKind::ClassDecl, span);
    node->token = binding_name();
    if (accept_kw("extends")) {
      node->flags |= kFlagHasHeritage;
      node->children.push_back(parse_postfix());
    }
    expect("{", "to open class body");
    while (!is_punct(peek(), "}")) {
      if (at_eof()) bail(DiagCode::SyntaxError, "unterminated class body", peek().span);
      if (accept(";")) continue;
      node->children.push_back(parse_method());
    }
    advance();
    return done(std::move(node));
  }

  NodePtr parse_method() {
    Span span = peek().span;
    bool is_static = accept_kw("static");
    bool is_async = is_kw(peek(), "async") && !is_punct(peek(1), "(");
    if (is_async) advance();
    bool is_generator = accept("*");
    if (is_async && is_generator)
      bail(DiagCode::UnsupportedConstruct, "async generator methods are not supported", span);
    const Token& name_tok = peek();
    if (is_punct(name_tok, "["))
      bail(DiagCode::UnsupportedConstruct, "computed method names are not supported",
           name_tok.span);
    if (name_tok.kind != TokenKind::Identifier)
      bail(DiagCode::SyntaxError, "expected method name, found '" + name_tok.text + "'",
           name_tok.span);
    if ((name_tok.text == "get" || name_tok.text == "set") && !is_punct(peek(1), "("))
      bail(DiagCode::UnsupportedConstruct, "getters and setters are not supported", name_tok.span);
    advance();
    if (is_punct(peek(), "=") || is_punct(peek(), ";"))
      bail(DiagCode::UnsupportedConstruct, "class fields are not supported", peek().span);
    if (!is_punct(peek(), "("))
      bail(DiagCode::SyntaxError, "expected '(' after method name", peek().span);
    if (name_tok.text == "constructor" && (is_async || is_generator || is_static))
      bail(DiagCode::SyntaxError, "constructor cannot be async, generator, or static",
           name_tok.span);
    auto node = make_node(NodeKind::Method, name_tok.text, span);
    if (is_static) node->flags |= kFlagStatic;
    if (is_async) node->flags |= kFlagAsync;
    if (is_generator) node->flags |= kFlagGenerator;
    ctx_.push_back({is_async, is_generator, true, true});
    node->children.push_back(parse_param_list());
    node->children.push_back(parse_block());
    ctx_.pop_back();
    return done(std::move(node));
  }

  // ---- expressions ----

  NodePtr parse_assignment() {
    if (auto arrow = try_parse_arrow()) return arrow;
    if (is_kw(peek(), "yield")) return parse_yield();
    auto lhs = parse_conditional();
    if (is_assign_op(peek())) {
      bool assignable = lhs->kind == NodeKind::MemberAccess ||
                        lhs->kind == NodeKind::IndexAccess ||
                        (lhs->kind == NodeKind::Identifier && lhs->token != "super");
      if (!assignable) bail(DiagCode::SyntaxError, "invalid assignment target", peek().span);
      const Token& op = advance();
      auto node = make_node(NodeKind::Assign, op.text, lhs->span);
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_assignment());
      return done(std::move(node));
    }
    return lhs;
  }

  // Token index just past the ')' matching tokens_[open], or 0 if unmatched.
  std::size_t after_matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < tokens_.size(); ++i) {
      if (is_punct(tokens_[i], "(")) ++depth;
      if (is_punct(tokens_[i], ")") && --depth == 0) return i + 1;
    }
    return 0;
  }

  NodePtr try_parse_arrow() {
    std::size_t start = pos_;
    bool is_async = false;
    std::size_t i = pos_;
    if (is_kw(tokens_[i], "async") && !is_kw(peek(1), "function")) {
      is_async = true;
      ++i;
    }
    bool is_arrow = false;
    if (i < tokens_.size() && tokens_[i].kind == TokenKind::Identifier &&
        i + 1 < tokens_.size() && is_punct(tokens_[i + 1], "=>")) {
      is_arrow = true;
    } else if (i < tokens_.size() && is_punct(tokens_[i], "(")) {
      std::size_t after = after_matching_paren(i);
      is_arrow = after != 0 && after < tokens_.size() && is_punct(tokens_[after], "=>");
    }
    if (!is_arrow) {
      pos_ = start;
      return nullptr;
    }

    Span span = peek().span;
    if (is_async) advance();
    auto node = make_node(NodeKind::ArrowFunction, span);
    if (is_async) node->flags |= kFlagAsync;
    ctx_.push_back({is_async, false, true, ctx().allow_super, true});
    if (peek().kind == TokenKind::Identifier) {
      Span at = peek().span;
      auto params = make_node(NodeKind::ParamList, at);
      params->children.push_back(make_node(NodeKind::Param, binding_name(), at));
      node->children.push_back(std::move(params));
    } else {
      node->children.push_back(parse_param_list());
    }
    expect("=>", "in arrow function");
    if (is_punct(peek(), "{"))
      node->children.push_back(parse_block());
    else
      node->children.push_back(parse_assignment());
    ctx_.pop_back();
    return done(std::move(node));
  }

  NodePtr parse_yield() {
    Span span = advance().span;
    if (!ctx().in_generator)
      bail(DiagCode::SyntaxError, "'yield' outside a generator function", span);
    if (is_punct(peek(), "*"))
      bail(DiagCode::UnsupportedConstruct, "yield delegation is not supported", peek().span);
    auto node = make_node(NodeKind::Yield, span);
    const Token& t = peek();
    bool no_operand = is_punct(t, ";") || is_punct(t, ")") || is_punct(t, "]") ||
                      is_punct(t, "}") || is_punct(t, ",") || is_punct(t, ":");
    if (!no_operand) node->children.push_back(parse_assignment());
    return node;
  }

  NodePtr parse_conditional() {
    auto cond = parse_short_circuit();
    if (accept("?")) {
      auto node = make_node(NodeKind::Conditional, cond->span);
      node->children.push_back(std::move(cond));
      node->children.push_back(parse_assignment());
      expect(":", "in conditional expression");
      node->children.push_back(parse_assignment());
      return node;
    }
    return cond;
  }

  // `??` refuses to associate with `&&`/`||` without parentheses, matching
  // the ECMAScript grammar.
  NodePtr parse_short_circuit() {
    auto left = parse_equality();
    if (is_punct(peek(), "??")) {
      while (accept("??")) {
        auto node = make_node(NodeKind::Nullish, left->span);
        node->children.push_back(std::move(left));
        node->children.push_back(parse_equality());
        left = done(std::move(node));
      }
      if (is_punct(peek(), "&&") || is_punct(peek(), "||"))
        bail(DiagCode::SyntaxError,
             std::string("cannot mix '?") + "?' with '" + peek().text + "' without parentheses",
             peek().span);
      return left;
    }
    if (is_punct(peek(), "&&") || is_punct(peek(), "||")) {
      while (true) {
        if (accept("&&")) {
          auto node = make_node(NodeKind::BinaryOp, "&&", left->span);
          node->children.push_back(std::move(left));
          node->children.push_back(parse_equality());
          left = std::move(node);
        } else if (accept("||")) {
          auto rhs = parse_equality();
          while (accept("&&")) {
            auto inner = make_node(NodeKind::BinaryOp, "&&", rhs->span);
            inner->children.push_back(std::move(rhs));
            inner->children.push_back(parse_equality());
            rhs = std::move(inner);
          }
          auto node = make_node(NodeKind::BinaryOp, "||", left->span);
          node->children.push_back(std::move(left));
          node->children.push_back(std::move(rhs));
          left = std::move(node);
        } else {
          break;
        }
      }
      if (is_punct(peek(), "??"))
        bail(DiagCode::SyntaxError,
             std::string("cannot mix '?") + "?' with '&&'/'||' without parentheses", peek().span);
    }
    return left;
  }

  NodePtr parse_binary_chain(NodePtr (Parser::*next)(), std::initializer_list<std::string_view> ops) {
    auto left = (this->*next)();
    while (true) {
      bool matched = false;
      for (auto op : ops) {
        if (is_punct(peek(), op)) {
          advance();
          auto node = make_node(NodeKind::BinaryOp, std::string(op), left->span);
          node->children.push_back(std::move(left));
          node->children.push_back((this->*next)());
          left = std::move(node);
          matched = true;
          break;
        }
      }
      if (!matched) return left;
    }
  }

  NodePtr parse_equality() {
    return parse_binary_chain(&Parser::parse_relational, {"===", "!==", "==", "!="});
  }
  NodePtr parse_relational() {
    return parse_binary_chain(&Parser::parse_additive, {"<=", ">=", "<", ">"});
  }
  NodePtr parse_additive() {
    return parse_binary_chain(&Parser::parse_multiplicative, {"+", "-"});
  }
  NodePtr parse_multiplicative() {
    return parse_binary_chain(&Parser::parse_exponent, {"*", "/", "%"});
  }

  NodePtr parse_exponent() {
    bool lhs_is_unary = false;
    auto left = parse_unary(&lhs_is_unary);
    if (is_punct(peek(), "**")) {
      if (lhs_is_unary)
        bail(DiagCode::SyntaxError, "unary operand of '**' must be parenthesized", peek().span);
      advance();
      auto node = make_node(NodeKind::BinaryOp, "**", left->span);
      node->children.push_back(std::move(left));
      node->children.push_back(parse_exponent());
      return done(std::move(node));
    }
    return left;
  }

  NodePtr parse_unary(bool* is_unary_syntax) {
    const Token& t = peek();
    if (is_punct(t, "!") || is_punct(t, "-") || is_punct(t, "+") || is_kw(t, "typeof") ||
        is_kw(t, "void")) {
      advance();
      auto node = make_node(NodeKind::UnaryOp, t.text, t.span);
      bool ignored = false;
      node->children.push_back(parse_unary(&ignored));
      if (is_unary_syntax) *is_unary_syntax = true;
      return node;
    }
    if (is_kw(t, "await")) {
      advance();
      if (!ctx().in_async)
        bail(DiagCode::SyntaxError, "'await' outside an async function", t.span);
      auto node = make_node(NodeKind::Await, t.span);
      bool ignored = false;
      node->children.push_back(parse_unary(&ignored));
      if (is_unary_syntax) *is_unary_syntax = true;
      return node;
    }
    if (is_unary_syntax) *is_unary_syntax = false;
    return parse_postfix();
  }

  NodePtr parse_call_args(NodePtr callee, NodeKind kind, std::uint8_t flags) {
    auto node = make_node(kind, callee->span);
    node->flags = flags;
    node->children.push_back(std::move(callee));
    expect("(", "to open argument list");
    while (!is_punct(peek(), ")")) {
      if (node->children.size() > 1) expect(",", "between arguments");
      if (is_punct(peek(), "...")) {
        Span at = advance().span;
        if (kind == NodeKind::New)
          bail(DiagCode::UnsupportedConstruct, "spread in 'new' arguments is not supported", at);
        auto spread = make_node(NodeKind::Spread, at);
        spread->children.push_back(parse_assignment());
        node->children.push_back(done(std::move(spread)));
      } else {
        node->children.push_back(parse_assignment());
      }
    }
    advance();
    return done(std::move(node));
  }

  NodePtr parse_postfix() {
    auto base = parse_primary();
    while (true) {
      const Token& t = peek();
      if (is_punct(t, ".")) {
        advance();
        const Token& name = peek();
        if (name.kind != TokenKind::Identifier && name.kind != TokenKind::Keyword)
          bail(DiagCode::SyntaxError, "expected property name after '.'", name.span);
        advance();
        auto node = make_node(NodeKind::MemberAccess, name.text, base->span);
        node->children.push_back(std::move(base));
        base = std::move(node);
      } else if (is_punct(t, "[")) {
        advance();
        auto node = make_node(NodeKind::IndexAccess, base->span);
        node->children.push_back(std::move(base));
        node->children.push_back(parse_assignment());
        expect("]", "to close index");
        base = std::move(node);
      } else if (is_punct(t, "(")) {
        base = parse_call_args(std::move(base), NodeKind::Call, 0);
      } else if (is_punct(t, "?.")) {
        if (base->kind == NodeKind::Identifier && base->token == "super")
          bail(DiagCode::SyntaxError, "optional chaining on 'super' is not allowed", t.span);
        advance();
        if (is_punct(peek(), "(")) {
          auto node = make_node(NodeKind::OptionalChain, base->span);
          node->flags = kFlagOptionalCall;
          node->children.push_back(std::move(base));
          expect("(", "to open argument list");
          while (!is_punct(peek(), ")")) {
            if (node->children.size() > 1) expect(",", "between arguments");
            if (is_punct(peek(), "...")) {
              Span at = advance().span;
              auto spread = make_node(NodeKind::Spread, at);
              spread->children.push_back(parse_assignment());
              node->children.push_back(done(std::move(spread)));
            } else {
              node->children.push_back(parse_assignment());
            }
          }
          advance();
          base = done(std::move(node));
        } else if (accept("[")) {
          auto node = make_node(NodeKind::OptionalChain, base->span);
          node->flags = kFlagOptionalIndex;
          node->children.push_back(std::move(base));
          node->children.push_back(parse_assignment());
          expect("]", "to close optional index");
          base = done(std::move(node));
        } else {
          const Token& name = peek();
          if (name.kind != TokenKind::Identifier && name.kind != TokenKind::Keyword)
            bail(DiagCode::SyntaxError, "expected property name after '?.'", name.span);
          advance();
          auto node = make_node(NodeKind::OptionalChain, name.text, base->span);
          node->children.push_back(std::move(base));
          base = done(std::move(node));
        }
      } else if (t.kind == TokenKind::Template) {
        bail(DiagCode::UnsupportedConstruct, "tagged templates are not supported", t.span);
      } else {
        break;
      }
    }
    return base;
  }

  NodePtr parse_new() {
    Span span = advance().span;  // new
    auto callee = parse_primary();
    while (true) {
      if (is_punct(peek(), ".")) {
        advance();
        const Token& name = peek();
        if (name.kind != TokenKind::Identifier && name.kind != TokenKind::Keyword)
          bail(DiagCode::SyntaxError, "expected property name after '.'", name.span);
        advance();
        auto node = make_node(NodeKind::MemberAccess, name.text, callee->span);
        node->children.push_back(std::move(callee));
        callee = std::move(node);
      } else if (accept("[")) {
        auto node = make_node(NodeKind::IndexAccess, callee->span);
        node->children.push_back(std::move(callee));
        node->children.push_back(parse_assignment());
        expect("]", "to close index");
        callee = std::move(node);
      } else if (is_punct(peek(), "?.")) {
        bail(DiagCode::SyntaxError, "optional chaining in 'new' callee is not allowed",
             peek().span);
      } else {
        break;
      }
    }
    if (!is_punct(peek(), "("))
      bail(DiagCode::SyntaxError, "'new' requires an argument list", peek().span);
    auto node = parse_call_args(std::move(callee), NodeKind::New, 0);
    node->span = span;
    return node;
  }

  NodePtr parse_array() {
    auto node = make_node(NodeKind::ArrayLit, peek().span);
    expect("[", "to open array literal");
    while (!is_punct(peek(), "]")) {
      if (!node->children.empty()) {
        expect(",", "between array elements");
        if (is_punct(peek(), "]"))
          bail(DiagCode::SyntaxError, "trailing comma in array literal", peek().span);
      }
      if (is_punct(peek(), ","))
        bail(DiagCode::SyntaxError, "array holes are not supported", peek().span);
      if (is_punct(peek(), "...")) {
        Span at = advance().span;
        auto spread = make_node(NodeKind::Spread, at);
        spread->children.push_back(parse_assignment());
        node->children.push_back(done(std::move(spread)));
      } else {
        node->children.push_back(parse_assignment());
      }
    }
    advance();
    return node;
  }

  NodePtr parse_object() {
    auto node = make_node(NodeKind::ObjectLit, peek().span);
    expect("{", "to open object literal");
    while (!is_punct(peek(), "}")) {
      if (!node->children.empty()) {
        expect(",", "between properties");
        if (is_punct(peek(), "}"))
          bail(DiagCode::SyntaxError, "trailing comma in object literal", peek().span);
      }
      const Token& key = peek();
      if (is_punct(key, "..."))
        bail(DiagCode::UnsupportedConstruct, "object spread is not supported", key.span);
      if (is_punct(key, "["))
        bail(DiagCode::UnsupportedConstruct, "computed property keys are not supported", key.span);
      auto prop = make_node(NodeKind::Property, key.span);
      if (key.kind == TokenKind::Identifier || key.kind == TokenKind::Keyword) {
        prop->token = key.text;
      } else if (key.kind == TokenKind::String) {
        prop->token = key.text;
        prop->flags |= kFlagStringKey;
      } else if (key.kind == TokenKind::Number) {
        prop->token = key.text;
        prop->flags |= kFlagStringKey;
      } else {
        bail(DiagCode::SyntaxError, "expected property key, found '" + key.text + "'", key.span);
      }
      advance();
      if (is_punct(peek(), "(") || is_punct(peek(), ",") || is_punct(peek(), "}"))
        bail(DiagCode::UnsupportedConstruct,
             "object literal methods and shorthand properties are not supported", peek().span);
      expect(":", "after property key");
      prop->children.push_back(parse_assignment());
      node->children.push_back(std::move(prop));
    }
    advance();
    return node;
  }

  NodePtr parse_template(const Token& tok) {
    auto node = make_node(NodeKind::TemplateLit, tok.span);
    Span content_base{tok.span.line, tok.span.column + 1, tok.span.offset + 1};
    for (const auto& seg : split_template(tok.text)) {
      Span seg_base = advance_span(content_base, std::string_view(tok.text).substr(0, seg.offset));
      if (!seg.is_expr) {
        std::size_t err_off = 0;
        auto cooked = cook_escapes(seg.text, &err_off);
        if (!cooked)
          bail(DiagCode::SyntaxError, "invalid escape sequence in template",
               advance_span(seg_base, seg.text.substr(0, err_off)));
        node->children.push_back(make_node(NodeKind::TemplateChunk, std::move(*cooked), seg_base));
      } else {
        auto sub = lex(seg.text);
        if (!sub.ok()) {
          Diagnostic d = sub.diagnostics.front();
          d.span = rebase_span(d.span, seg_base);
          throw ParseError{d};
        }
        for (auto& t : sub.tokens) t.span = rebase_span(t.span, seg_base);
        Parser inner(std::move(sub.tokens), opts_, features_, ctx());
        node->children.push_back(inner.parse_single_expression());
      }
    }
    return done(std::move(node));
  }

  NodePtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return make_node(NodeKind::NumberLit, t.text, t.span);
      case TokenKind::String:
        advance();
        return make_node(NodeKind::StringLit, t.text, t.span);
      case TokenKind::Template:
        advance();
        return parse_template(t);
      case TokenKind::Identifier: {
        if (!opts_.allow_reserved && is_reserved_identifier(t.text))
          bail(DiagCode::SyntaxError, "'" + t.text + "' is a reserved identifier", t.span);
        if (t.text == "arguments" && ctx().in_arrow)
          bail(DiagCode::UnsupportedConstruct,
               "'arguments' may not be referenced inside an arrow function", t.span);
        advance();
        return make_node(NodeKind::Identifier, t.text, t.span);
      }
      case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false") {
          advance();
          return make_node(NodeKind::BoolLit, t.text, t.span);
        }
        if (t.text == "null") {
          advance();
          return make_node(NodeKind::NullLit, t.span);
        }
        if (t.text == "undefined") {
          advance();
          return make_node(NodeKind::UndefinedLit, t.span);
        }
        if (t.text == "this") {
          advance();
          return make_node(NodeKind::This, t.span);
        }
        if (t.text == "super") {
          if (!ctx().allow_super)
            bail(DiagCode::SyntaxError, "'super' outside a class method", t.span);
          if (!is_punct(peek(1), "(") && !is_punct(peek(1), ".") && !is_punct(peek(1), "["))
            bail(DiagCode::SyntaxError, "'super' must be called or accessed", t.span);
          advance();
          return make_node(NodeKind::Identifier, "super", t.span);
        }
        if (t.text == "function") return parse_function(NodeKind::FunctionExpr, false);
        if (t.text == "async" && is_kw(peek(1), "function")) {
          advance();
          return parse_function(NodeKind::FunctionExpr, true);
        }
        if (t.text == "new") return parse_new();
        if (is_reserved_unsupported(t.text))
          bail(DiagCode::UnsupportedConstruct, "'" + t.text + "' is not supported", t.span);
        bail(DiagCode::SyntaxError, "unexpected '" + t.text + "'", t.span);
      }
      case TokenKind::Punct: {
        if (t.text == "(") {
          advance();
          auto inner = parse_assignment();
          if (is_punct(peek(), ","))
            bail(DiagCode::SyntaxError, "the comma operator is not supported", peek().span);
          expect(")", "to close parenthesized expression");
          return inner;
        }
        if (t.text == "[") return parse_array();
        if (t.text == "{") return parse_object();
        bail(DiagCode::SyntaxError, "unexpected '" + t.text + "'", t.span);
      }
      case TokenKind::Eof:
        bail(DiagCode::SyntaxError, "unexpected end of input", t.span);
    }
    bail(DiagCode::SyntaxError, "unexpected token", t.span);
  }
};

}  // namespace

bool is_reserved_identifier(std::string_view name) {
  if (name.size() >= 3 && name[0] == '$' && name[1] == 't') {
    bool digits = true;
    for (std::size_t i = 2; i < name.size(); ++i)
      if (name[i] < '0' || name[i] > '9') {
        digits = false;
        break;
      }
    if (digits) return true;
  }
  constexpr std::array<std::string_view, 9> kNames = {
      "$this",     "$state",        "$sent",          "$v", "$err",
      "$inherits", "$arrayFrom", "$makeIterator", "$asyncExecute"};
  for (auto n : kNames)
    if (n == name) return true;
  return false;
}

ParseResult parse(std::string_view source, std::string source_name, ParseOptions options) {
  ParseResult result;
  auto lexed = lex(source);
  if (!lexed.ok()) {
    result.diagnostics = std::move(lexed.diagnostics);
    return result;
  }
  FeatureSet features;
  Parser parser(std::move(lexed.tokens), options, &features, FnCtx{});
  try {
    auto root = parser.parse_script();
    ScriptNode script;
    script.root = std::move(root);
    script.features = features;
    script.source_name = std::move(source_name);
    result.script = std::move(script);
  } catch (ParseError& e) {
    result.diagnostics.push_back(std::move(e.diag));
  }
  return result;
}

}  // namespace esdown
