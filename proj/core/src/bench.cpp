#include "esdown/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "esdown/codegen.hpp"
#include "esdown/passes.hpp"

namespace esdown {

void analytic_skip_counts(const std::vector<ScriptNode>& corpus, LanguageLevel target,
                          std::uint64_t& considered, std::uint64_t& skipped) {
  considered = 0;
  skipped = 0;
  const FeatureSet supported = features_of_level(target);
  for (const ScriptNode& script : corpus) {
    FeatureSet phi = script.features;
    for (const PassDescriptor& pass : pass_registry()) {
      const FeatureSet in_range = set_minus(pass.handled_features, supported);
      if (in_range.empty()) continue;
      ++considered;
      if (!intersects(phi, in_range)) {
        ++skipped;
        continue;
      }
      // The pass runs: it eliminates every handled feature present and, when
      // it changes anything (it does — the gate just said there is work),
      // introduces its synthetics.
      phi = set_union(set_minus(phi, pass.handled_features), pass.synthetic_features);
    }
  }
}

namespace {

struct RunCapture {
  std::vector<std::string> outputs;  // print_script per script
  RunReport report;
};

RunCapture run_once(const std::vector<ScriptNode>& corpus, LanguageLevel target, RunMode mode,
                    int workers) {
  CompilationUnit unit;
  unit.scripts.reserve(corpus.size());
  for (const ScriptNode& s : corpus) unit.scripts.push_back(clone_script(s));
  unit.target = target;
  unit.mode = mode;
  unit.validate = false;

  RunOptions options;
  options.workers = workers;
  auto result = run_pipeline(unit, options);
  if (auto* err = std::get_if<PipelineError>(&result)) {
    throw std::runtime_error("bench pipeline failed: " + err->message +
                             " (pass=" + err->pass_id + " script=" + err->script_name +
                             " code=" + err->code + ")");
  }

  RunCapture capture;
  capture.report = std::get<RunReport>(result);
  capture.outputs.reserve(unit.scripts.size());
  for (const ScriptNode& s : unit.scripts) capture.outputs.push_back(print_script(s));
  return capture;
}

double to_ms(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

}  // namespace

BenchResult run_bench(const std::vector<ScriptNode>& corpus, const BenchOptions& options) {
  BenchResult result;
  result.script_count = static_cast<int>(corpus.size());
  result.repetitions = std::max(1, options.repetitions);

  analytic_skip_counts(corpus, options.target, result.analytic_considered,
                       result.analytic_skips);

  std::vector<std::string> reference_outputs;
  std::vector<std::string> reference_names;
  for (const ScriptNode& s : corpus) reference_names.push_back(s.source_name);

  for (RunMode mode : {RunMode::Selective, RunMode::Legacy}) {
    ModeTiming timing;
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(result.repetitions));

    for (int rep = 0; rep < result.repetitions; ++rep) {
      RunCapture capture = run_once(corpus, options.target, mode, options.workers);
      times.push_back(to_ms(capture.report.total_wall_time));

      if (rep == 0 && mode == RunMode::Selective) {
        reference_outputs = std::move(capture.outputs);
        timing.skip_ratio = capture.report.skip_ratio;
        for (const PassStats& p : capture.report.per_pass) {
          timing.pairs_skipped += p.scripts_skipped;
          timing.pairs_considered += p.scripts_considered;
          timing.scripts_transformed += p.scripts_transformed;
        }
      } else {
        if (rep == 0) {
          timing.skip_ratio = capture.report.skip_ratio;
          for (const PassStats& p : capture.report.per_pass) {
            timing.pairs_skipped += p.scripts_skipped;
            timing.pairs_considered += p.scripts_considered;
            timing.scripts_transformed += p.scripts_transformed;
          }
        }
        // Differential check: every repetition of every mode must reproduce
        // the selective reference byte for byte.
        if (result.differential_ok) {
          for (std::size_t i = 0; i < capture.outputs.size(); ++i) {
            if (capture.outputs[i] != reference_outputs[i]) {
              result.differential_ok = false;
              result.first_mismatch = reference_names[i];
              break;
            }
          }
        }
      }
    }

    timing.min_ms = *std::min_element(times.begin(), times.end());
    timing.max_ms = *std::max_element(times.begin(), times.end());
    double sum = 0.0;
    for (double t : times) sum += t;
    timing.mean_ms = sum / static_cast<double>(times.size());

    if (mode == RunMode::Selective) {
      result.selective = timing;
    } else {
      result.legacy = timing;
    }
  }
  return result;
}

std::string format_bench_table(const BenchResult& result) {
  auto fixed = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
  };
  auto line = [&](const char* name, const ModeTiming& t) {
    return std::string(name) + "  mean " + fixed(t.mean_ms) + " ms  (min " + fixed(t.min_ms) +
           ", max " + fixed(t.max_ms) + ")  skip_ratio " + fixed(t.skip_ratio) + "  skipped " +
           std::to_string(t.pairs_skipped) + "/" + std::to_string(t.pairs_considered) +
           "  transformed " + std::to_string(t.scripts_transformed) + "\n";
  };
  std::string out;
  out += "scripts " + std::to_string(result.script_count) + ", repetitions " +
         std::to_string(result.repetitions) + "\n";
  out += line("selective", result.selective);
  out += line("legacy   ", result.legacy);
  out += "analytic skips " + std::to_string(result.analytic_skips) + "/" +
         std::to_string(result.analytic_considered) + "  measured " +
         std::to_string(result.selective.pairs_skipped) + "/" +
         std::to_string(result.selective.pairs_considered) +
         (result.selective.pairs_skipped == result.analytic_skips &&
                  result.selective.pairs_considered == result.analytic_considered
              ? "  (exact match)"
              : "  (MISMATCH)") +
         "\n";
  out += result.differential_ok
             ? "differential: ok\n"
             : "differential: DIFFERENTIAL_MISMATCH at " + result.first_mismatch + "\n";
  return out;
}

std::string bench_to_json(const BenchResult& result) {
  auto mode_json = [](const ModeTiming& t) {
    nlohmann::ordered_json j;
    j["mean_ms"] = t.mean_ms;
    j["min_ms"] = t.min_ms;
    j["max_ms"] = t.max_ms;
    j["skip_ratio"] = t.skip_ratio;
    j["pairs_skipped"] = t.pairs_skipped;
    j["pairs_considered"] = t.pairs_considered;
    j["scripts_transformed"] = t.scripts_transformed;
    return j;
  };
  nlohmann::ordered_json j;
  j["script_count"] = result.script_count;
  j["repetitions"] = result.repetitions;
  j["selective"] = mode_json(result.selective);
  j["legacy"] = mode_json(result.legacy);
  j["analytic_skips"] = result.analytic_skips;
  j["analytic_considered"] = result.analytic_considered;
  j["differential_ok"] = result.differential_ok;
  if (!result.differential_ok) j["first_mismatch"] = result.first_mismatch;
  return j.dump(2);
}

}  // namespace esdown
