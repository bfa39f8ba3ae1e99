#include "esdown/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

#include <json.hpp>

#include "esdown/diagnostics.hpp"

namespace esdown {

std::string_view run_mode_name(RunMode mode) {
  return mode == RunMode::Selective ? "selective" : "legacy";
}

bool does_script_have_any_of_these_features(const ScriptNode& script, FeatureSet features,
                                            RunMode mode) {
  if (mode == RunMode::Legacy) return true;
  return intersects(script.features, features);
}

bool gate(const PassDescriptor& pass, const ScriptNode& script, LanguageLevel target,
          RunMode mode) {
  FeatureSet in_range = set_minus(pass.handled_features, features_of_level(target));
  if (in_range.empty()) return false;  // the target supports everything this pass handles
  return does_script_have_any_of_these_features(script, in_range, mode);
}

namespace {

// Per-script result of one pass, folded into PassStats in script order so
// the report is identical for any worker count.
struct ScriptRun {
  bool considered = false;
  bool skipped = false;
  bool ran = false;
  bool changed = false;
  std::uint64_t nodes_visited = 0;
  std::vector<std::string> helpers;
  bool failed = false;
  Diagnostic failure{};
};

ScriptRun run_one(const PassDescriptor& pass, ScriptNode& script, const CompilationUnit& unit,
                  bool disabled, const RunOptions& options) {
  ScriptRun r;
  FeatureSet in_range = set_minus(pass.handled_features, features_of_level(unit.target));
  if (in_range.empty()) return r;  // out of range: neither considered nor skipped
  r.considered = true;
  if (disabled || !gate(pass, script, unit.target, unit.mode)) {
    r.skipped = true;
    return r;
  }
  r.ran = true;
  try {
    TransformOutcome out = pass.transform(script);
    if (options.outcome_tamper) options.outcome_tamper(pass.id, script.source_name, out);
    // Φ(S) update, applied before any later gate can read this script.
    script.features =
        set_union(set_minus(script.features, out.removed_features), out.added_features);
    r.changed = out.changed;
    r.nodes_visited = out.nodes_visited;
    r.helpers = std::move(out.helpers_used);
  } catch (const PassFailure& f) {
    r.failed = true;
    r.failure = f.diagnostic;
  }
  return r;
}

PipelineError make_validation_error(std::vector<ValidationError> errors) {
  assert(!errors.empty());
  const ValidationError& first = errors.front();
  PipelineError e;
  e.pass_id = first.pass_id;
  e.script_name = first.script_name;
  e.code = validation_code_name(first.code);
  e.message = first.to_string();
  e.validation = std::move(errors);
  return e;
}

void merge_helpers(std::vector<std::string>& into, const std::vector<std::string>& used) {
  for (const std::string& h : used) {
    if (std::find(into.begin(), into.end(), h) == into.end()) into.push_back(h);
  }
}

}  // namespace

std::variant<RunReport, PipelineError> run_pipeline(CompilationUnit& unit,
                                                    const RunOptions& options) {
  const auto& registry = pass_registry();
  const std::size_t n_scripts = unit.scripts.size();

  RunReport report;
  report.mode = unit.mode;
  report.target = unit.target;
  report.per_pass.reserve(registry.size());

  unit.helpers_used.assign(n_scripts, {});
  TranspiledAwaySet transpiled_away;

  std::uint64_t total_considered = 0;
  std::uint64_t total_skipped = 0;

  const auto pipeline_start = std::chrono::steady_clock::now();

  std::vector<FeatureSet> phi_before(n_scripts);

  for (const PassDescriptor& pass : registry) {
    const bool disabled = std::find(options.disabled_passes.begin(),
                                    options.disabled_passes.end(),
                                    pass.id) != options.disabled_passes.end();
    if (unit.validate) {
      for (std::size_t i = 0; i < n_scripts; ++i) phi_before[i] = unit.scripts[i].features;
    }

    PassStats stats;
    stats.pass_id = pass.id;
    std::vector<ScriptRun> runs(n_scripts);

    const auto pass_start = std::chrono::steady_clock::now();
    const int workers = std::max(1, options.workers);
    if (workers == 1 || n_scripts <= 1) {
      for (std::size_t i = 0; i < n_scripts; ++i) {
        runs[i] = run_one(pass, unit.scripts[i], unit, disabled, options);
      }
    } else {
      // Scripts are independent within a pass: Φ updates are per-script and
      // the Transpiled-Away set is only written after the join below.
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n_scripts; i = next.fetch_add(1)) {
          runs[i] = run_one(pass, unit.scripts[i], unit, disabled, options);
        }
      };
      std::vector<std::thread> pool;
      const int spawn = static_cast<int>(
          std::min<std::size_t>(static_cast<std::size_t>(workers), n_scripts));
      pool.reserve(static_cast<std::size_t>(spawn));
      for (int w = 0; w < spawn; ++w) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    stats.wall_time = std::chrono::steady_clock::now() - pass_start;

    for (std::size_t i = 0; i < n_scripts; ++i) {
      const ScriptRun& r = runs[i];
      if (r.failed) {
        PipelineError e;
        e.pass_id = pass.id;
        e.script_name = unit.scripts[i].source_name;
        e.code = diag_code_name(r.failure.code);
        e.message = r.failure.message;
        return e;
      }
      stats.scripts_considered += r.considered ? 1 : 0;
      stats.scripts_skipped += r.skipped ? 1 : 0;
      stats.scripts_transformed += r.changed ? 1 : 0;
      stats.nodes_visited += r.nodes_visited;
      merge_helpers(unit.helpers_used[i], r.helpers);
    }
    total_considered += stats.scripts_considered;
    total_skipped += stats.scripts_skipped;
    report.per_pass.push_back(std::move(stats));

    // The pass has now completed over every script: its below-target
    // features retire into the Transpiled-Away set.
    transpiled_away.members = set_union(
        transpiled_away.members, set_minus(pass.handled_features, features_of_level(unit.target)));

    if (options.after_pass_mutate) options.after_pass_mutate(pass.id, unit);

    if (unit.validate) {
      std::vector<ValidationError> errors =
          validate_after_pass(unit.scripts, pass, transpiled_away.members, phi_before);
      if (!errors.empty()) return make_validation_error(std::move(errors));
    }
  }

  // Always-on end-of-pipeline guarantee, production mode included.
  std::vector<ValidationError> leaked = post_transpile_check(unit.scripts, unit.target);
  if (!leaked.empty()) return make_validation_error(std::move(leaked));

  // Normalize per-script helper lists to the fixed emission order.
  for (std::vector<std::string>& used : unit.helpers_used) {
    std::vector<std::string> ordered;
    for (const RuntimeHelper& h : runtime_helpers()) {
      if (std::find(used.begin(), used.end(), h.id) != used.end()) ordered.push_back(h.id);
    }
    used = std::move(ordered);
  }

  report.total_wall_time = std::chrono::steady_clock::now() - pipeline_start;
  report.skip_ratio = total_considered == 0
                          ? 0.0
                          : static_cast<double>(total_skipped) /
                                static_cast<double>(total_considered);
  return report;
}

std::string emit_report(const RunReport& report) {
  auto to_ms = [](std::chrono::nanoseconds d) {
    return static_cast<double>(d.count()) / 1e6;
  };
  nlohmann::ordered_json j;
  j["mode"] = run_mode_name(report.mode);
  j["target"] = level_name(report.target);
  j["total_wall_time_ms"] = to_ms(report.total_wall_time);
  j["skip_ratio"] = report.skip_ratio;
  j["passes"] = nlohmann::ordered_json::array();
  for (const PassStats& p : report.per_pass) {
    nlohmann::ordered_json entry;
    entry["id"] = p.pass_id;
    entry["considered"] = p.scripts_considered;
    entry["skipped"] = p.scripts_skipped;
    entry["transformed"] = p.scripts_transformed;
    entry["nodes_visited"] = p.nodes_visited;
    entry["wall_time_ms"] = to_ms(p.wall_time);
    j["passes"].push_back(std::move(entry));
  }
  return j.dump(2);
}

}  // namespace esdown
