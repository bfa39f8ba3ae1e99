#include "esdown/passes.hpp"

#include "../pass_util.hpp"

namespace esdown {
namespace {

using namespace detail;

// A template literal is a left-folded string concatenation of its cooked text
// chunks and interpolations. Empty text chunks contribute nothing, but a
// template that would otherwise start with an interpolation gains a leading
// `""` so the `+` chain coerces to string from the first step.
class Rewriter : public BottomUpRewriter {
 public:
  std::size_t rewrites = 0;

 private:
  void rewrite(NodePtr& slot) override {
    if (slot->kind != NodeKind::TemplateLit) return;
    ++rewrites;
    std::vector<NodePtr> terms;
    for (auto& c : slot->children) {
      if (c->kind == NodeKind::TemplateChunk) {
        if (!c->token.empty()) terms.push_back(string_lit(c->token, c->span));
      } else {
        terms.push_back(std::move(c));
      }
    }
    if (terms.empty()) {
      slot = string_lit("", slot->span);
      return;
    }
    if (terms[0]->kind != NodeKind::StringLit)
      terms.insert(terms.begin(), string_lit("", slot->span));
    NodePtr acc = std::move(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i)
      acc = bin("+", std::move(acc), std::move(terms[i]));
    acc->span = slot->span;
    slot = std::move(acc);
  }
};

}  // namespace

TransformOutcome rewrite_template_literals(ScriptNode& script) {
  Rewriter rw;
  rw.run(script);
  TransformOutcome out;
  out.nodes_visited = rw.visited;
  if (rw.rewrites > 0) {
    out.changed = true;
    out.removed_features = {Feature::TemplateLiterals};
  }
  return out;
}

}  // namespace esdown
