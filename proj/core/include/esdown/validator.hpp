#pragma once

#include <string>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/features.hpp"
#include "esdown/passes.hpp"

namespace esdown {

// Safety nets around the pass pipeline. The per-pass checks run only in
// dev mode (they rescan every script); the post-transpile check is cheap
// enough to stay on everywhere and is the last line of defense before
// codegen.
enum class ValidationCode : std::uint8_t {
  // A pass left (or inserted) a feature that an earlier pass already
  // lowered for this target: that pass will not run again, so the feature
  // would silently survive to the output.
  ReintroducedFeature,
  // The rescan disagrees with the script's registered feature set: some
  // pass changed the tree without reporting the delta.
  UnregisteredFeature,
  // A pass introduced a feature at or above its own level, which the
  // fixed pass order can no longer lower.
  MonotonicityViolation,
  // A node violates its kind's arity/token contract.
  MalformedNode,
  // After the full pipeline, a script still contains features the target
  // level does not support.
  UnsupportedFeatureRemains,
};

std::string_view validation_code_name(ValidationCode code);

struct ValidationError {
  std::string pass_id;      // the pass being validated, or (for the post
                            // check) the pass that should have removed the
                            // surviving features
  std::string script_name;
  ValidationCode code;
  FeatureSet features;      // offending features, empty for MalformedNode
  std::string detail;       // extra context (e.g. the arity violation)

  /// `pass=<id> script=<name> code=<CODE> features=[...]`
  std::string to_string() const;
};

/// Dev-mode check, called immediately after `pass` has completed over all
/// scripts. `transpiled_away` is the Transpiled-Away set including this
/// pass's contribution; `phi_before[i]` is scripts[i].features as it was
/// before the pass ran. Never mutates the scripts. Errors are ordered by
/// script (unit order), then by check, then by feature enumeration order.
std::vector<ValidationError> validate_after_pass(const std::vector<ScriptNode>& scripts,
                                                 const PassDescriptor& pass,
                                                 FeatureSet transpiled_away,
                                                 const std::vector<FeatureSet>& phi_before);

/// Always-on final check: every script must scan within the target level.
/// Each error names the registry pass responsible for the leaked features.
std::vector<ValidationError> post_transpile_check(const std::vector<ScriptNode>& scripts,
                                                  LanguageLevel target);

}  // namespace esdown
