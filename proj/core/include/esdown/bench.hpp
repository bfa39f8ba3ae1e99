#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/scheduler.hpp"

namespace esdown {

// Selective-vs-legacy measurement harness. Trees are pre-parsed and deep
// copied per repetition, so the timings isolate pass costs: no parsing, no
// I/O inside the clock.
struct BenchOptions {
  LanguageLevel target = LanguageLevel::Es5;
  int repetitions = 3;
  int workers = 1;
};

struct ModeTiming {
  double mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double skip_ratio = 0.0;
  std::uint64_t pairs_skipped = 0;
  std::uint64_t pairs_considered = 0;
  std::uint64_t scripts_transformed = 0;  // summed over passes
};

struct BenchResult {
  ModeTiming selective;
  ModeTiming legacy;
  // Expected skip count computed from the stored feature sets alone (no AST
  // work): simulate Φ(S) through the registry and count failed gates. The
  // gate is deterministic, so measured == analytic holds exactly.
  std::uint64_t analytic_skips = 0;
  std::uint64_t analytic_considered = 0;
  bool differential_ok = true;     // all outputs byte-identical across modes
  std::string first_mismatch;      // script name of the first differing output
  int script_count = 0;
  int repetitions = 0;
};

/// Computes the expected (considered, skipped) pair counts for a selective
/// run over `corpus` at `target`, from feature sets only.
void analytic_skip_counts(const std::vector<ScriptNode>& corpus, LanguageLevel target,
                          std::uint64_t& considered, std::uint64_t& skipped);

/// Runs the full pipeline in both modes, `repetitions` times each, over deep
/// copies of `corpus`. Throws std::runtime_error if any run fails (the
/// corpus is expected to be fully in-subset).
BenchResult run_bench(const std::vector<ScriptNode>& corpus, const BenchOptions& options);

/// Human-readable table, one line per mode plus the analytic and
/// differential summary lines.
std::string format_bench_table(const BenchResult& result);

/// The same content as a JSON document with deterministic field order.
std::string bench_to_json(const BenchResult& result);

}  // namespace esdown
