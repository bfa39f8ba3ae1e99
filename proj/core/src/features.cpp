#include "esdown/features.hpp"

#include <array>

namespace esdown {

namespace {

struct FeatureInfo {
  Feature feature;
  LanguageLevel level;
  std::string_view name;
};

constexpr std::array<FeatureInfo, kFeatureCount> kFeatures = {{
    {Feature::OptionalChaining, LanguageLevel::Es2020, "OPTIONAL_CHAINING"},
    {Feature::NullishCoalescing, LanguageLevel::Es2020, "NULLISH_COALESCING"},
    {Feature::AsyncFunctions, LanguageLevel::Es2017, "ASYNC_FUNCTIONS"},
    {Feature::ExponentOperator, LanguageLevel::Es2016, "EXPONENT_OPERATOR"},
    {Feature::ArrowFunctions, LanguageLevel::Es2015, "ARROW_FUNCTIONS"},
    {Feature::Classes, LanguageLevel::Es2015, "CLASSES"},
    {Feature::TemplateLiterals, LanguageLevel::Es2015, "TEMPLATE_LITERALS"},
    {Feature::DefaultParameters, LanguageLevel::Es2015, "DEFAULT_PARAMETERS"},
    {Feature::RestParameters, LanguageLevel::Es2015, "REST_PARAMETERS"},
    {Feature::SpreadExpressions, LanguageLevel::Es2015, "SPREAD_EXPRESSIONS"},
    {Feature::Generators, LanguageLevel::Es2015, "GENERATORS"},
    {Feature::BlockScopedDeclarations, LanguageLevel::Es2015, "BLOCK_SCOPED_DECLARATIONS"},
}};

constexpr std::array<std::string_view, 6> kLevelNames = {
    "es5", "es2015", "es2016", "es2017", "es2020", "esnext",
};

}  // namespace

LanguageLevel level_of(Feature f) { return kFeatures[static_cast<std::size_t>(f)].level; }

std::string_view feature_name(Feature f) { return kFeatures[static_cast<std::size_t>(f)].name; }

std::optional<Feature> feature_from_name(std::string_view name) {
  for (const auto& info : kFeatures) {
    if (info.name == name) return info.feature;
  }
  return std::nullopt;
}

std::string_view level_name(LanguageLevel level) {
  return kLevelNames[static_cast<std::size_t>(level)];
}

std::optional<LanguageLevel> level_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLevelNames.size(); ++i) {
    if (kLevelNames[i] == name) return static_cast<LanguageLevel>(i);
  }
  return std::nullopt;
}

std::vector<Feature> FeatureSet::members() const {
  std::vector<Feature> out;
  for (int i = 0; i < kFeatureCount; ++i) {
    Feature f = static_cast<Feature>(i);
    if (contains(f)) out.push_back(f);
  }
  return out;
}

FeatureSet features_of_level(LanguageLevel level) {
  FeatureSet out;
  for (const auto& info : kFeatures) {
    if (info.level <= level) out = out.with(info.feature);
  }
  return out;
}

std::string to_string(FeatureSet set) {
  if (set.empty()) return "(none)";
  std::string out;
  for (Feature f : set.members()) {
    if (!out.empty()) out += ", ";
    out += feature_name(f);
  }
  return out;
}

}  // namespace esdown
