// esdown — lower MiniES sources to an older language level, selectively.
//
// Subcommands:
//   transpile   lower input files, optionally writing per-pass stats
//   features    print the static feature set of each input
//   gen-corpus  emit a deterministic synthetic corpus
//   bench       time selective vs legacy scheduling over a corpus

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "esdown/bench.hpp"
#include "esdown/codegen.hpp"
#include "esdown/corpus.hpp"
#include "esdown/diagnostics.hpp"
#include "esdown/parser.hpp"
#include "esdown/passes.hpp"
#include "esdown/scheduler.hpp"
#include "esdown/validator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseError = 1;
constexpr int kExitPipelineError = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return out.good();
}

// CLI11 validators keep the flag surface self-documenting; these convert the
// already-validated spellings.
esdown::LanguageLevel to_level(const std::string& name) {
  return *esdown::level_from_name(name);
}

esdown::RunMode to_mode(const std::string& name) {
  return name == "legacy" ? esdown::RunMode::Legacy : esdown::RunMode::Selective;
}

// "2" or "1..3" — a closed integer range.
bool parse_range(const std::string& text, esdown::IntRange& out) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      out.min = out.max = std::stoi(text);
    } else {
      out.min = std::stoi(text.substr(0, dots));
      out.max = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return out.min >= 0 && out.max >= out.min;
}

// Parses every input file; reports all failures, not just the first.
// Returns nullopt if any input failed.
std::optional<esdown::CompilationUnit> parse_inputs(const std::vector<std::string>& inputs) {
  esdown::CompilationUnit unit;
  bool failed = false;
  for (const std::string& path : inputs) {
    auto text = read_file(path);
    if (!text) {
      std::cerr << path << ": cannot read file\n";
      failed = true;
      continue;
    }
    auto result = esdown::parse(*text, path);
    if (!result.ok()) {
      std::cerr << esdown::format_diagnostics(result.diagnostics, path);
      failed = true;
      continue;
    }
    unit.scripts.push_back(std::move(*result.script));
  }
  if (failed) return std::nullopt;
  return unit;
}

std::string sorted_feature_line(esdown::FeatureSet features) {
  if (features.empty()) return "(none)";
  std::vector<std::string> names;
  for (esdown::Feature f : features.members()) {
    names.emplace_back(esdown::feature_name(f));
  }
  std::sort(names.begin(), names.end());
  std::string line;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) line += ", ";
    line += names[i];
  }
  return line;
}

int cmd_transpile(const std::vector<std::string>& inputs, const std::string& target,
                  const std::string& mode, bool validate, const std::string& out_dir,
                  const std::string& stats_path, int workers) {
  auto unit = parse_inputs(inputs);
  if (!unit) return kExitParseError;
  unit->target = to_level(target);
  unit->mode = to_mode(mode);
  unit->validate = validate;

  esdown::RunOptions options;
  options.workers = workers;
  auto outcome = esdown::run_pipeline(*unit, options);
  if (auto* err = std::get_if<esdown::PipelineError>(&outcome)) {
    std::cerr << "pass=" << err->pass_id << " script=" << err->script_name
              << " code=" << err->code << " detail=" << err->message << "\n";
    for (const esdown::ValidationError& v : err->validation) std::cerr << v.to_string() << "\n";
    return kExitPipelineError;
  }

  const auto& report = std::get<esdown::RunReport>(outcome);
  if (!stats_path.empty()) {
    if (!write_file(stats_path, esdown::emit_report(report))) {
      std::cerr << stats_path << ": cannot write stats\n";
      return kExitPipelineError;
    }
  }

  for (std::size_t i = 0; i < unit->scripts.size(); ++i) {
    std::vector<std::string> prelude;
    for (const esdown::RuntimeHelper& h : esdown::runtime_helpers()) {
      const auto& used = unit->helpers_used[i];
      if (std::find(used.begin(), used.end(), h.id) != used.end()) {
        prelude.push_back(h.es5_source);
      }
    }
    const std::string text = esdown::print_script_with_prelude(unit->scripts[i], prelude);
    if (out_dir.empty()) {
      std::cout << text;
    } else {
      std::filesystem::path dest =
          std::filesystem::path(out_dir) / std::filesystem::path(inputs[i]).filename();
      std::error_code ec;
      std::filesystem::create_directories(dest.parent_path(), ec);
      if (!write_file(dest, text)) {
        std::cerr << dest.string() << ": cannot write output\n";
        return kExitPipelineError;
      }
    }
  }
  return kExitOk;
}

int cmd_features(const std::vector<std::string>& inputs) {
  auto unit = parse_inputs(inputs);
  if (!unit) return kExitParseError;
  for (const esdown::ScriptNode& script : unit->scripts) {
    std::cout << script.source_name << ": " << sorted_feature_line(script.features) << "\n";
  }
  return kExitOk;
}

int cmd_gen_corpus(int count, const std::string& features, const std::string& statements,
                   unsigned long long seed, const std::string& out_dir) {
  esdown::CorpusSpec spec;
  spec.script_count = count;
  spec.seed = seed;
  if (!parse_range(features, spec.features_per_script)) {
    std::cerr << "--features: expected N or MIN..MAX, got '" << features << "'\n";
    return kExitParseError;
  }
  if (!parse_range(statements, spec.statements_per_script)) {
    std::cerr << "--statements: expected N or MIN..MAX, got '" << statements << "'\n";
    return kExitParseError;
  }
  if (spec.features_per_script.max > esdown::kFeatureCount) {
    std::cerr << "--features: at most " << esdown::kFeatureCount
              << " distinct features per script\n";
    return kExitParseError;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto corpus = esdown::generate_corpus(spec);
  for (const esdown::GeneratedScript& script : corpus) {
    const auto dest = std::filesystem::path(out_dir) / script.name;
    if (!write_file(dest, script.source)) {
      std::cerr << dest.string() << ": cannot write\n";
      return kExitPipelineError;
    }
  }
  std::cout << "wrote " << corpus.size() << " scripts to " << out_dir << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& corpus_dir, int count, const std::string& features,
              const std::string& statements, unsigned long long seed,
              const std::string& target, int reps, int workers, bool as_json) {
  std::vector<esdown::ScriptNode> corpus;
  if (!corpus_dir.empty()) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
      if (entry.path().extension() == ".js") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<std::string> names;
    names.reserve(paths.size());
    for (const auto& p : paths) names.push_back(p.string());
    auto unit = parse_inputs(names);
    if (!unit) return kExitParseError;
    corpus = std::move(unit->scripts);
  } else {
    esdown::CorpusSpec spec;
    spec.script_count = count;
    spec.seed = seed;
    if (!parse_range(features, spec.features_per_script) ||
        !parse_range(statements, spec.statements_per_script)) {
      std::cerr << "invalid --features/--statements range\n";
      return kExitParseError;
    }
    for (const esdown::GeneratedScript& g : esdown::generate_corpus(spec)) {
      auto parsed = esdown::parse(g.source, g.name);
      corpus.push_back(std::move(*parsed.script));
    }
  }
  if (corpus.empty()) {
    std::cerr << "bench: empty corpus\n";
    return kExitParseError;
  }

  esdown::BenchOptions options;
  options.target = to_level(target);
  options.repetitions = reps;
  options.workers = workers;
  esdown::BenchResult result;
  try {
    result = esdown::run_bench(corpus, options);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return kExitPipelineError;
  }

  std::cout << (as_json ? esdown::bench_to_json(result) + "\n"
                        : esdown::format_bench_table(result));
  if (!result.differential_ok) {
    std::cerr << "DIFFERENTIAL_MISMATCH at " << result.first_mismatch << "\n";
    return kExitPipelineError;
  }
  if (result.selective.pairs_skipped != result.analytic_skips ||
      result.selective.pairs_considered != result.analytic_considered) {
    std::cerr << "bench: measured skip counts diverge from the analytic model\n";
    return kExitPipelineError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lower modern scripts to a target language level"};
  app.require_subcommand(1);

  const std::vector<std::string> level_names = {"es5",    "es2015", "es2016",
                                                "es2017", "es2020", "esnext"};
  const std::vector<std::string> mode_names = {"selective", "legacy"};

  // transpile
  auto* transpile = app.add_subcommand("transpile", "lower input files");
  std::vector<std::string> t_inputs;
  std::string t_target = "es5";
  std::string t_mode = "selective";
  bool t_validate = false;
  std::string t_out;
  std::string t_stats;
  int t_workers = 1;
  transpile->add_option("inputs", t_inputs, "MiniES source files")
      ->required()
      ->check(CLI::ExistingFile);
  transpile->add_option("--target", t_target, "target language level")
      ->check(CLI::IsMember(level_names));
  transpile->add_option("--mode", t_mode, "pass scheduling mode")
      ->check(CLI::IsMember(mode_names));
  transpile->add_flag("--validate", t_validate, "run per-pass validation (dev mode)");
  transpile->add_option("--out", t_out, "output directory (default: stdout)");
  transpile->add_option("--stats", t_stats, "write per-pass stats JSON to this path");
  transpile->add_option("--workers", t_workers, "worker threads per pass")
      ->check(CLI::PositiveNumber);

  // features
  auto* features = app.add_subcommand("features", "print each script's feature set");
  std::vector<std::string> f_inputs;
  features->add_option("inputs", f_inputs, "MiniES source files")
      ->required()
      ->check(CLI::ExistingFile);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "emit a deterministic synthetic corpus");
  int g_count = 100;
  std::string g_features = "1..3";
  std::string g_statements = "8..16";
  unsigned long long g_seed = 42;
  std::string g_out;
  gen->add_option("--count", g_count, "number of scripts")->check(CLI::PositiveNumber);
  gen->add_option("--features", g_features, "distinct features per script (N or MIN..MAX)");
  gen->add_option("--statements", g_statements, "statement budget per script (N or MIN..MAX)");
  gen->add_option("--seed", g_seed, "corpus seed");
  gen->add_option("--out", g_out, "output directory")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "selective vs legacy timing comparison");
  std::string b_dir;
  int b_count = 1000;
  std::string b_features = "1..3";
  std::string b_statements = "8..16";
  unsigned long long b_seed = 42;
  std::string b_target = "es5";
  int b_reps = 3;
  int b_workers = 1;
  bool b_json = false;
  bench->add_option("--dir", b_dir, "benchmark an existing corpus directory")
      ->check(CLI::ExistingDirectory);
  bench->add_option("--count", b_count, "generated corpus size")->check(CLI::PositiveNumber);
  bench->add_option("--features", b_features, "features per generated script");
  bench->add_option("--statements", b_statements, "statements per generated script");
  bench->add_option("--seed", b_seed, "corpus seed");
  bench->add_option("--target", b_target, "target language level")
      ->check(CLI::IsMember(level_names));
  bench->add_option("--reps", b_reps, "repetitions per mode")->check(CLI::PositiveNumber);
  bench->add_option("--workers", b_workers, "worker threads per pass")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--json", b_json, "emit the report as JSON");

  CLI11_PARSE(app, argc, argv);

  if (transpile->parsed()) {
    return cmd_transpile(t_inputs, t_target, t_mode, t_validate, t_out, t_stats, t_workers);
  }
  if (features->parsed()) {
    return cmd_features(f_inputs);
  }
  if (gen->parsed()) {
    return cmd_gen_corpus(g_count, g_features, g_statements, g_seed, g_out);
  }
  return cmd_bench(b_dir, b_count, b_features, b_statements, b_seed, b_target, b_reps,
                   b_workers, b_json);
}
