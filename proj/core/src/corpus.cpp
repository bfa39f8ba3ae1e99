#include "esdown/corpus.hpp"

#include <array>
#include <random>
#include <stdexcept>
#include <string>

#include "esdown/parser.hpp"

namespace esdown {

namespace {

// Uniform draw in [lo, hi] using only the engine's raw output, so results
// are identical across standard libraries (distributions are not portable).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

int bounded_int(std::mt19937_64& rng, const IntRange& range) {
  if (range.max <= range.min) return range.min;
  return static_cast<int>(bounded(rng, static_cast<std::uint64_t>(range.min),
                                  static_cast<std::uint64_t>(range.max)));
}

struct Template {
  std::string (*make)(int n);
  int statements;
};

// Every template introduces exactly its own feature — no arrows inside class
// templates, no template literals inside async templates, and so on — since
// the generator promises Φ(S) == the drawn set. Names take a per-script
// counter so instantiations never collide. All bodies stay inside the
// lowering subset: yields and awaits sit in statement positions, no
// block-scoped binding is declared in a loop and captured, nothing spreads a
// string.
std::string num(int n) { return std::to_string(n); }

const std::array<Template, 2> kOptionalChaining = {{
    {[](int n) { return "var oc" + num(n) + " = data" + num(n) + "?.value;\n"; }, 1},
    {[](int n) {
       return "var oc" + num(n) + " = cfg" + num(n) + "?.items?.first;\n";
     },
     1},
}};

const std::array<Template, 2> kNullishCoalescing = {{
    {[](int n) { return "var nc" + num(n) + " = input" + num(n) + " ?? \"fallback\";\n"; }, 1},
    {[](int n) {
       return "var nc" + num(n) + " = pick" + num(n) + " ?? second" + num(n) + " ?? 0;\n";
     },
     1},
}};

const std::array<Template, 2> kAsyncFunctions = {{
    {[](int n) {
       return "async function af" + num(n) + "(p) {\n  var r = await p;\n  return r;\n}\n";
     },
     1},
    {[](int n) {
       return "async function af" + num(n) +
              "(a, b) {\n  var x = await a;\n  var y = await b;\n  return x + y;\n}\n";
     },
     1},
}};

const std::array<Template, 2> kExponentOperator = {{
    {[](int n) { return "var ex" + num(n) + " = base" + num(n) + " ** 2;\n"; }, 1},
    {[](int n) { return "var ex" + num(n) + " = 2 ** bits" + num(n) + " ** 1;\n"; }, 1},
}};

const std::array<Template, 2> kArrowFunctions = {{
    {[](int n) { return "var ar" + num(n) + " = x => x + " + num(n) + ";\n"; }, 1},
    {[](int n) {
       return "var ar" + num(n) + " = (a, b) => {\n  return a * b + " + num(n) + ";\n};\n";
     },
     1},
}};

const std::array<Template, 2> kClasses = {{
    {[](int n) {
       return "class Cl" + num(n) +
              " {\n  constructor(v) {\n    this.v = v;\n  }\n  value() {\n    return this.v;\n"
              "  }\n}\n";
     },
     1},
    {[](int n) {
       std::string base = "Base" + num(n);
       std::string derived = "Derived" + num(n);
       return "class " + base +
              " {\n  constructor(v) {\n    this.v = v;\n  }\n  value() {\n    return this.v;\n"
              "  }\n}\nclass " +
              derived + " extends " + base +
              " {\n  constructor(v) {\n    super(v + 1);\n  }\n  value() {\n"
              "    return super.value() * 2;\n  }\n}\n";
     },
     2},
}};

const std::array<Template, 2> kTemplateLiterals = {{
    {[](int n) { return "var tl" + num(n) + " = `item ${id" + num(n) + "}`;\n"; }, 1},
    {[](int n) {
       return "var tl" + num(n) + " = `${label" + num(n) + "}: ${count" + num(n) + "}`;\n";
     },
     1},
}};

const std::array<Template, 2> kDefaultParameters = {{
    {[](int n) {
       return "function dp" + num(n) + "(a, b = 10) {\n  return a + b;\n}\n";
     },
     1},
    {[](int n) {
       return "function dp" + num(n) + "(a, b = a + 1, c = 0) {\n  return a + b + c;\n}\n";
     },
     1},
}};

const std::array<Template, 2> kRestParameters = {{
    {[](int n) {
       return "function rp" + num(n) + "(head, ...tail) {\n  return tail.length;\n}\n";
     },
     1},
    {[](int n) {
       return "function rp" + num(n) + "(...all) {\n  return all.length + " + num(n) + ";\n}\n";
     },
     1},
}};

const std::array<Template, 2> kSpreadExpressions = {{
    {[](int n) {
       return "var sp" + num(n) + " = combine" + num(n) + "(...parts" + num(n) + ");\n";
     },
     1},
    {[](int n) { return "var sp" + num(n) + " = [0, ...more" + num(n) + "];\n"; }, 1},
}};

const std::array<Template, 2> kGenerators = {{
    {[](int n) {
       return "function* gn" + num(n) + "() {\n  yield 1;\n  yield 2;\n}\n";
     },
     1},
    {[](int n) {
       return "function* gn" + num(n) +
              "(limit) {\n  var i = 0;\n  while (i < limit) {\n    yield i;\n    i = i + 1;\n"
              "  }\n}\n";
     },
     1},
}};

const std::array<Template, 2> kBlockScoped = {{
    {[](int n) { return "let bs" + num(n) + " = " + num(n) + ";\n"; }, 1},
    {[](int n) {
       return "const bc" + num(n) + " = " + num(n) + ";\n{\n  let inner" + num(n) +
              " = bc" + num(n) + " + 1;\n  log(inner" + num(n) + ");\n}\n";
     },
     2},
}};

const std::array<Template, 2>& templates_for(Feature f) {
  switch (f) {
    case Feature::OptionalChaining: return kOptionalChaining;
    case Feature::NullishCoalescing: return kNullishCoalescing;
    case Feature::AsyncFunctions: return kAsyncFunctions;
    case Feature::ExponentOperator: return kExponentOperator;
    case Feature::ArrowFunctions: return kArrowFunctions;
    case Feature::Classes: return kClasses;
    case Feature::TemplateLiterals: return kTemplateLiterals;
    case Feature::DefaultParameters: return kDefaultParameters;
    case Feature::RestParameters: return kRestParameters;
    case Feature::SpreadExpressions: return kSpreadExpressions;
    case Feature::Generators: return kGenerators;
    case Feature::BlockScopedDeclarations: return kBlockScoped;
  }
  throw std::logic_error("unknown feature");
}

const std::array<Template, 5> kFiller = {{
    {[](int n) { return "var fl" + num(n) + " = " + num(n) + ";\n"; }, 1},
    {[](int n) {
       return "function ff" + num(n) + "(x) {\n  return x + " + num(n) + ";\n}\n";
     },
     1},
    {[](int n) {
       return "if (flag" + num(n) + ") {\n  total" + num(n) + " = total" + num(n) + " + 1;\n}\n";
     },
     1},
    {[](int n) {
       return "while (left" + num(n) + " > 0) {\n  left" + num(n) + " = left" + num(n) +
              " - 1;\n}\n";
     },
     1},
    {[](int n) { return "log(\"marker" + num(n) + "\");\n"; }, 1},
}};

std::string script_name(int index) {
  std::string digits = std::to_string(index);
  while (digits.size() < 4) digits.insert(digits.begin(), '0');
  return "corpus_" + digits + ".js";
}

}  // namespace

std::vector<GeneratedScript> generate_corpus(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<GeneratedScript> out;
  out.reserve(static_cast<std::size_t>(std::max(0, spec.script_count)));

  for (int i = 0; i < spec.script_count; ++i) {
    GeneratedScript script;
    script.name = script_name(i);

    const int want_features = bounded_int(rng, spec.features_per_script);
    const int want_statements = bounded_int(rng, spec.statements_per_script);

    // Distinct features via a partial shuffle; draw order is part of the
    // deterministic byte stream.
    std::array<int, kFeatureCount> order{};
    for (int f = 0; f < kFeatureCount; ++f) order[static_cast<std::size_t>(f)] = f;
    for (int f = 0; f < want_features && f < kFeatureCount; ++f) {
      const auto j = static_cast<std::size_t>(
          bounded(rng, static_cast<std::uint64_t>(f), kFeatureCount - 1));
      std::swap(order[static_cast<std::size_t>(f)], order[j]);
    }

    int statements = 0;
    int counter = 0;
    for (int f = 0; f < want_features && f < kFeatureCount; ++f) {
      const auto feature = static_cast<Feature>(order[static_cast<std::size_t>(f)]);
      script.drawn = script.drawn.with(feature);
      const auto& pool = templates_for(feature);
      const Template& t = pool[static_cast<std::size_t>(bounded(rng, 0, pool.size() - 1))];
      script.source += t.make(counter++);
      statements += t.statements;
    }
    while (statements < want_statements) {
      const Template& t =
          kFiller[static_cast<std::size_t>(bounded(rng, 0, kFiller.size() - 1))];
      script.source += t.make(counter++);
      statements += t.statements;
    }

    // Generator honesty is a hard guarantee, not a hope: check every file.
    auto parsed = parse(script.source, script.name);
    if (!parsed.ok()) {
      throw std::logic_error("generated script does not parse: " + script.name + "\n" +
                             format_diagnostics(parsed.diagnostics, script.name));
    }
    if (parsed.script->features != script.drawn) {
      throw std::logic_error("generated script " + script.name + " scans to [" +
                             to_string(parsed.script->features) + "] but drew [" +
                             to_string(script.drawn) + "]");
    }
    out.push_back(std::move(script));
  }
  return out;
}

}  // namespace esdown
