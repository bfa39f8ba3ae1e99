#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esdown/features.hpp"

namespace esdown {

// Seeded synthetic-corpus generator: stands in for a production codebase by
// making feature sparsity an explicit knob. Same spec, same bytes — the
// corpus is part of the measurement, so it must be reproducible anywhere.
struct IntRange {
  int min = 0;
  int max = 0;
};

struct CorpusSpec {
  int script_count = 0;
  IntRange features_per_script{1, 3};   // distinct features drawn per script
  std::uint64_t seed = 0;
  IntRange statements_per_script{8, 16};  // top-level statement budget
};

struct GeneratedScript {
  std::string name;     // "corpus_0000.js", ...
  std::string source;
  FeatureSet drawn;     // the features the generator intended
};

/// Generates `spec.script_count` scripts. Each draws a uniform number of
/// distinct features, instantiates one fixed template per drawn feature, and
/// pads with ES5 filler statements up to the statement budget. Every script
/// is self-checked: it must parse and its scanned feature set must equal
/// `drawn` exactly (throws std::logic_error otherwise — a template bug).
std::vector<GeneratedScript> generate_corpus(const CorpusSpec& spec);

}  // namespace esdown
