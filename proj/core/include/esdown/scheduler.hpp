#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/features.hpp"
#include "esdown/passes.hpp"
#include "esdown/validator.hpp"

namespace esdown {

// Selective mode gates each (pass, script) pair on the script's live feature
// set; legacy mode is purely range-based (every pass whose features lie above
// the target runs on every script), which is what a conventional preset-style
// pipeline does.
enum class RunMode : std::uint8_t { Selective, Legacy };

std::string_view run_mode_name(RunMode mode);  // "selective" | "legacy"

struct CompilationUnit {
  std::vector<ScriptNode> scripts;  // source_names must be unique
  LanguageLevel target = LanguageLevel::Es5;
  RunMode mode = RunMode::Selective;
  bool validate = false;  // dev-mode per-pass validation

  // Filled by run_pipeline: for each script, the runtime helpers its
  // transforms actually used, in the fixed runtime_helpers() order. Codegen
  // prepends exactly these.
  std::vector<std::vector<std::string>> helpers_used;
};

// Features some completed pass was responsible for eliminating below the
// current target. Monotone over a run; once a feature is in here, no later
// pass may (re)introduce it — its lowering pass has already retired.
struct TranspiledAwaySet {
  FeatureSet members;
};

struct PassStats {
  std::string pass_id;
  std::uint64_t scripts_considered = 0;   // in-range (pass, script) pairs
  std::uint64_t scripts_skipped = 0;      // considered but gated off
  std::uint64_t scripts_transformed = 0;  // ran and reported changed
  std::uint64_t nodes_visited = 0;
  std::chrono::nanoseconds wall_time{0};
};

struct RunReport {
  std::vector<PassStats> per_pass;
  std::chrono::nanoseconds total_wall_time{0};
  RunMode mode = RunMode::Selective;
  LanguageLevel target = LanguageLevel::Es5;
  // skipped / considered over all in-range pairs; 0 for an empty unit and
  // always 0 in legacy mode (legacy runs everything it considers).
  double skip_ratio = 0.0;
};

struct PipelineError {
  std::string pass_id;
  std::string script_name;
  std::string code;     // diagnostic or validation code name
  std::string message;  // human-readable summary
  std::vector<ValidationError> validation;  // non-empty for validator failures
};

// Test-only instrumentation. Sabotage hooks let the validator suite inject
// the failure classes it must detect; none of this is reachable from the CLI.
struct RunOptions {
  int workers = 1;  // scripts fan out within a pass; 1 is the baseline
  std::vector<std::string> disabled_passes;  // force-gate these off
  // Adjust a transform's reported outcome before Φ(S) is updated.
  std::function<void(const std::string& pass_id, const std::string& script_name,
                     TransformOutcome& outcome)>
      outcome_tamper;
  // Mutate the unit at a pass boundary, before validation runs.
  std::function<void(const std::string& pass_id, CompilationUnit& unit)> after_pass_mutate;
};

/// §distribution predicate: does the script still contain any of `features`?
/// Selective mode consults Φ(S); legacy mode answers true unconditionally.
bool does_script_have_any_of_these_features(const ScriptNode& script, FeatureSet features,
                                            RunMode mode);

/// True iff the pass must run on this script: it handles at least one
/// feature the target lacks (range check, both modes) that is also live in
/// Φ(S) (selective mode only).
bool gate(const PassDescriptor& pass, const ScriptNode& script, LanguageLevel target,
          RunMode mode);

/// Runs every registry pass in order over the unit, maintaining Φ(S), the
/// Transpiled-Away set, and per-pass stats; always finishes with the
/// post-transpile check. Scripts are lowered in place.
std::variant<RunReport, PipelineError> run_pipeline(CompilationUnit& unit,
                                                    const RunOptions& options = {});

/// Stats JSON with deterministic field order:
/// {"mode","target","total_wall_time_ms","skip_ratio","passes":[...]}.
std::string emit_report(const RunReport& report);

}  // namespace esdown
