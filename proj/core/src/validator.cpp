#include "esdown/validator.hpp"

#include <cassert>

namespace esdown {

std::string_view validation_code_name(ValidationCode code) {
  switch (code) {
    case ValidationCode::ReintroducedFeature: return "REINTRODUCED_FEATURE";
    case ValidationCode::UnregisteredFeature: return "UNREGISTERED_FEATURE";
    case ValidationCode::MonotonicityViolation: return "MONOTONICITY_VIOLATION";
    case ValidationCode::MalformedNode: return "MALFORMED_NODE";
    case ValidationCode::UnsupportedFeatureRemains: return "UNSUPPORTED_FEATURE_REMAINS";
  }
  assert(false && "unknown validation code");
  return "?";
}

std::string ValidationError::to_string() const {
  std::string out = "pass=" + pass_id + " script=" + script_name +
                    " code=" + std::string(validation_code_name(code)) + " features=[";
  bool first = true;
  for (Feature f : features.members()) {
    if (!first) out += ", ";
    out += feature_name(f);
    first = false;
  }
  out += "]";
  if (!detail.empty()) {
    out += " detail=";
    out += detail;
  }
  return out;
}

namespace {

// First arity/token violation in the subtree, or "" when clean.
std::string find_shape_violation(const Node& root) {
  std::string violation;
  traverse(root, [&](const Node& n) {
    if (!violation.empty()) return VisitAction::SkipSubtree;
    violation = check_node_shape(n);
    return violation.empty() ? VisitAction::Continue : VisitAction::SkipSubtree;
  });
  return violation;
}

}  // namespace

std::vector<ValidationError> validate_after_pass(const std::vector<ScriptNode>& scripts,
                                                 const PassDescriptor& pass,
                                                 FeatureSet transpiled_away,
                                                 const std::vector<FeatureSet>& phi_before) {
  assert(phi_before.size() == scripts.size());
  std::vector<ValidationError> errors;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    const ScriptNode& script = scripts[i];
    FeatureSet rescan = scan_features(*script.root);

    // (a) Unregistered change: the tree moved but Φ(S) was not told.
    if (rescan != script.features) {
      FeatureSet off = set_union(set_minus(rescan, script.features),
                                 set_minus(script.features, rescan));
      errors.push_back({pass.id, script.source_name, ValidationCode::UnregisteredFeature, off,
                        "rescan disagrees with the registered feature set"});
    }
    // (b) Reintroduction: a retired feature is back in the tree.
    FeatureSet back = set_intersect(rescan, transpiled_away);
    if (!back.empty()) {
      errors.push_back({pass.id, script.source_name, ValidationCode::ReintroducedFeature, back,
                        "feature already handled by a completed pass"});
    }
    // (c) Monotonicity: new features must sit strictly below this pass's
    // level, or no later pass can lower them.
    FeatureSet fresh = set_minus(rescan, phi_before[i]);
    FeatureSet too_high;
    for (Feature f : fresh.members()) {
      if (level_of(f) >= pass.feature_level) too_high = too_high.with(f);
    }
    if (!too_high.empty()) {
      errors.push_back({pass.id, script.source_name, ValidationCode::MonotonicityViolation,
                        too_high, "introduced feature not below the pass level"});
    }
    // (d) Structural integrity.
    std::string violation = find_shape_violation(*script.root);
    if (!violation.empty()) {
      errors.push_back({pass.id, script.source_name, ValidationCode::MalformedNode,
                        FeatureSet{}, violation});
    }
  }
  return errors;
}

std::vector<ValidationError> post_transpile_check(const std::vector<ScriptNode>& scripts,
                                                  LanguageLevel target) {
  FeatureSet supported = features_of_level(target);
  std::vector<ValidationError> errors;
  for (const ScriptNode& script : scripts) {
    FeatureSet leaked = set_minus(scan_features(*script.root), supported);
    if (leaked.empty()) continue;
    // Name the pass that owns the lowest-indexed leaked feature; handled
    // sets are disjoint across the registry, so the owner is unique per
    // feature.
    std::string owner = "?";
    for (const PassDescriptor& p : pass_registry()) {
      if (intersects(p.handled_features, leaked)) {
        owner = p.id;
        break;
      }
    }
    errors.push_back({owner, script.source_name, ValidationCode::UnsupportedFeatureRemains,
                      leaked, "feature survived the full pipeline"});
  }
  return errors;
}

}  // namespace esdown
