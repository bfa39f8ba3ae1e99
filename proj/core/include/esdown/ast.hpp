#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "esdown/features.hpp"

namespace esdown {

// Source position. Spans are kept for diagnostics only; synthesized nodes
// inherit the span of the construct they replace.
struct Span {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

enum class NodeKind : std::uint8_t {
  Script,
  VarDecl,
  LetDecl,
  ConstDecl,
  FunctionDecl,
  FunctionExpr,
  ArrowFunction,
  ClassDecl,
  Method,
  ParamList,
  Param,
  DefaultParam,
  RestParam,
  Block,
  If,
  While,
  For,
  Return,
  ExprStmt,
  Assign,
  BinaryOp,
  UnaryOp,
  Call,
  New,
  MemberAccess,
  IndexAccess,
  OptionalChain,
  Nullish,
  Conditional,
  Identifier,
  NumberLit,
  StringLit,
  BoolLit,
  NullLit,
  UndefinedLit,
  ArrayLit,
  ObjectLit,
  Property,
  TemplateLit,
  TemplateChunk,
  Spread,
  Yield,
  Await,
  This,
  Throw,
  TryCatch,
  Empty,  // absent for-clause slots
};

std::string_view node_kind_name(NodeKind kind);

// Bit flags carried on nodes. Async/generator live on function-kind nodes so
// a single kind covers plain, async, and generator forms.
enum NodeFlags : std::uint8_t {
  kFlagAsync = 1 << 0,
  kFlagGenerator = 1 << 1,
  kFlagStatic = 1 << 2,        // class methods
  kFlagHasHeritage = 1 << 3,   // ClassDecl: first child is the extends expression
  kFlagOptionalCall = 1 << 4,  // OptionalChain: f?.(args)
  kFlagOptionalIndex = 1 << 5, // OptionalChain: a?.[i]
  kFlagStringKey = 1 << 6,     // Property: key was a string literal
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
  NodeKind kind;
  std::string token;  // identifiers, literal values, operator spellings, names
  std::uint8_t flags = 0;
  Span span;
  std::vector<NodePtr> children;

  explicit Node(NodeKind k, Span s = {}) : kind(k), span(s) {}

  bool has_flag(std::uint8_t f) const { return (flags & f) != 0; }

  Node& child(std::size_t i) { return *children[i]; }
  const Node& child(std::size_t i) const { return *children[i]; }
};

NodePtr make_node(NodeKind kind, Span span = {});
NodePtr make_node(NodeKind kind, std::string token, Span span = {});

/// Deep copy, spans included.
NodePtr clone(const Node& node);

/// Structural equality: kind, token, flags, and children; spans ignored.
bool equal(const Node& a, const Node& b);

std::size_t count_nodes(const Node& root);

// Script root plus its dynamically maintained feature set. The feature set on
// this struct is the single authoritative record of which features the tree
// contains; passes report changes and the scheduler applies them here.
struct ScriptNode {
  NodePtr root;  // kind == Script
  FeatureSet features;
  std::string source_name;
};

ScriptNode clone_script(const ScriptNode& script);

enum class VisitAction { Continue, SkipSubtree };

/// Depth-first pre-order walk. Returns the number of nodes visited; a
/// SkipSubtree result suppresses the node's children (the node itself counts).
std::size_t traverse(const Node& root, const std::function<VisitAction(const Node&)>& visit);
std::size_t traverse(Node& root, const std::function<VisitAction(Node&)>& visit);

/// True iff `n` is the syntactic anchor of feature `f`. A node can anchor
/// several features (an async arrow anchors both ArrowFunctions and
/// AsyncFunctions).
bool is_feature_node(const Node& n, Feature f);

/// All features anchored by `n`, if any.
FeatureSet features_of_node(const Node& n);

/// Full rescan: the union of features anchored anywhere in the tree.
/// Pure; two consecutive calls return equal sets and never mutate the tree.
FeatureSet scan_features(const Node& root);

/// Number of scan_features calls since process start. Lets tests assert that
/// production-mode pipelines never rescan between passes.
std::uint64_t scan_feature_call_count();

// Arity contract per node kind; max == kVariadic means unbounded.
inline constexpr int kVariadic = -1;
struct ArityContract {
  int min_children = 0;
  int max_children = 0;
  bool token_required = false;
};
ArityContract arity_of(NodeKind kind);

/// Check one node (not the subtree) against its kind's contract. Returns an
/// empty string when well-formed, otherwise a description of the violation.
std::string check_node_shape(const Node& n);

}  // namespace esdown
