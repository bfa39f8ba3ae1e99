#pragma once

#include <string>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/diagnostics.hpp"
#include "esdown/features.hpp"

namespace esdown {

/// What a single pass did to a single script. A pass that reports
/// changed == false must report empty feature deltas and no helpers; the
/// validator treats anything else as a lying pass.
struct TransformOutcome {
  bool changed = false;
  FeatureSet removed_features;  // subset of the pass's handled features
  FeatureSet added_features;    // subset of the pass's synthetic features
  std::vector<std::string> helpers_used;
  std::size_t nodes_visited = 0;
};

/// Thrown by a transform when the script is outside the supported lowering
/// subset (e.g. a yield in expression position, or a closure capturing a
/// loop-scoped binding). The scheduler converts it into a pipeline error
/// naming the pass and script.
struct PassFailure {
  Diagnostic diagnostic;
};

struct PassDescriptor {
  std::string id;
  FeatureSet handled_features;   // never empty; all at feature_level
  LanguageLevel feature_level;   // level that made this pass unnecessary
  FeatureSet synthetic_features; // features the rewrite may introduce
  std::vector<std::string> required_helpers;
  TransformOutcome (*transform)(ScriptNode&);
};

/// Runtime support function emitted at the top of output files that need it.
/// Every helper body is plain ES5: parsing it and scanning the tree yields an
/// empty feature set, so emitting helpers can never reintroduce a feature.
struct RuntimeHelper {
  std::string id;
  std::string es5_source;
};

/// All passes in execution order. The order is load-bearing: passes may rely
/// on earlier passes having already removed the features they handle (the
/// spread rewrite, for instance, assumes optional calls are gone).
const std::vector<PassDescriptor>& pass_registry();

const PassDescriptor* find_pass(std::string_view id);

/// Helpers in the fixed order they are emitted in an output file.
const std::vector<RuntimeHelper>& runtime_helpers();

const RuntimeHelper* find_helper(std::string_view id);

// The individual rewrites, in registry order. Each mutates the tree in place
// and reports what it did; none of them touches script.features — the
// scheduler owns that update.
TransformOutcome rewrite_optional_chaining(ScriptNode& script);
TransformOutcome rewrite_nullish_coalescing(ScriptNode& script);
TransformOutcome rewrite_async_functions(ScriptNode& script);
TransformOutcome rewrite_exponential_operator(ScriptNode& script);
TransformOutcome rewrite_classes(ScriptNode& script);
TransformOutcome rewrite_default_parameters(ScriptNode& script);
TransformOutcome rewrite_rest_and_spread(ScriptNode& script);
TransformOutcome rewrite_arrow_functions(ScriptNode& script);
TransformOutcome rewrite_template_literals(ScriptNode& script);
TransformOutcome rewrite_generators(ScriptNode& script);
TransformOutcome rewrite_block_scoped(ScriptNode& script);

}  // namespace esdown
