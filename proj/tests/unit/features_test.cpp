#include <doctest.h>

#include "esdown/features.hpp"

using namespace esdown;

TEST_CASE("feature levels match the introduction table") {
  CHECK(level_of(Feature::OptionalChaining) == LanguageLevel::Es2020);
  CHECK(level_of(Feature::NullishCoalescing) == LanguageLevel::Es2020);
  CHECK(level_of(Feature::AsyncFunctions) == LanguageLevel::Es2017);
  CHECK(level_of(Feature::ExponentOperator) == LanguageLevel::Es2016);
  CHECK(level_of(Feature::ArrowFunctions) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::Classes) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::TemplateLiterals) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::DefaultParameters) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::RestParameters) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::SpreadExpressions) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::Generators) == LanguageLevel::Es2015);
  CHECK(level_of(Feature::BlockScopedDeclarations) == LanguageLevel::Es2015);
}

TEST_CASE("features_of_level") {
  CHECK(features_of_level(LanguageLevel::Es5) == FeatureSet{});
  CHECK(features_of_level(LanguageLevel::EsNext) == FeatureSet::all());
  CHECK(features_of_level(LanguageLevel::EsNext).size() == 12);

  // ES2016 = every ES2015 feature plus the exponent operator
  FeatureSet es2016{Feature::ArrowFunctions,    Feature::Classes,
                    Feature::TemplateLiterals,  Feature::DefaultParameters,
                    Feature::RestParameters,    Feature::SpreadExpressions,
                    Feature::Generators,        Feature::BlockScopedDeclarations,
                    Feature::ExponentOperator};
  CHECK(features_of_level(LanguageLevel::Es2016) == es2016);
  CHECK(features_of_level(LanguageLevel::Es2015) ==
        set_minus(es2016, FeatureSet{Feature::ExponentOperator}));
  CHECK(features_of_level(LanguageLevel::Es2020) == FeatureSet::all());
}

TEST_CASE("features_of_level is cumulative and tight") {
  const LanguageLevel levels[] = {LanguageLevel::Es5,    LanguageLevel::Es2015,
                                  LanguageLevel::Es2016, LanguageLevel::Es2017,
                                  LanguageLevel::Es2020, LanguageLevel::EsNext};
  for (std::size_t i = 1; i < std::size(levels); ++i)
    CHECK(is_subset(features_of_level(levels[i - 1]), features_of_level(levels[i])));

  for (int i = 0; i < kFeatureCount; ++i) {
    auto f = static_cast<Feature>(i);
    CHECK(features_of_level(level_of(f)).contains(f));
    // each feature is absent from the level right below its own
    for (std::size_t j = 1; j < std::size(levels); ++j)
      if (levels[j] == level_of(f)) CHECK(!features_of_level(levels[j - 1]).contains(f));
  }
}

TEST_CASE("set algebra") {
  FeatureSet async{Feature::AsyncFunctions};
  FeatureSet gens{Feature::Generators};
  CHECK(set_union(set_minus(async, async), gens) == gens);
  CHECK(set_union(FeatureSet{}, FeatureSet{}) == FeatureSet{});
  CHECK(!intersects(FeatureSet{Feature::Classes, Feature::ArrowFunctions},
                    FeatureSet{Feature::ExponentOperator}));

  // algebraic properties over an assortment of values
  const FeatureSet samples[] = {
      FeatureSet{},
      async,
      gens,
      FeatureSet{Feature::Classes, Feature::ArrowFunctions},
      features_of_level(LanguageLevel::Es2015),
      FeatureSet::all(),
  };
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      CHECK(is_subset(set_minus(set_union(a, b), b), a));
      CHECK(intersects(a, b) == !set_minus(a, set_minus(a, b)).empty());
      CHECK(set_union(a, FeatureSet{}) == a);
    }
  }
}

TEST_CASE("feature and level names") {
  CHECK(feature_name(Feature::OptionalChaining) == "OPTIONAL_CHAINING");
  CHECK(feature_name(Feature::BlockScopedDeclarations) == "BLOCK_SCOPED_DECLARATIONS");
  for (int i = 0; i < kFeatureCount; ++i) {
    auto f = static_cast<Feature>(i);
    CHECK(feature_from_name(feature_name(f)) == f);
  }
  CHECK(level_name(LanguageLevel::Es5) == "es5");
  CHECK(level_name(LanguageLevel::EsNext) == "esnext");
  for (auto l : {LanguageLevel::Es5, LanguageLevel::Es2015, LanguageLevel::Es2016,
                 LanguageLevel::Es2017, LanguageLevel::Es2020, LanguageLevel::EsNext})
    CHECK(level_from_name(level_name(l)) == l);
  CHECK(!level_from_name("es7").has_value());
  CHECK(!feature_from_name("BIGINT").has_value());
}

TEST_CASE("FeatureSet member listing is sorted by enum order") {
  FeatureSet set{Feature::Generators, Feature::OptionalChaining, Feature::Classes};
  auto members = set.members();
  REQUIRE(members.size() == 3);
  CHECK(members[0] == Feature::OptionalChaining);
  CHECK(members[1] == Feature::Classes);
  CHECK(members[2] == Feature::Generators);
  CHECK(to_string(set) == "OPTIONAL_CHAINING, CLASSES, GENERATORS");
  CHECK(to_string(FeatureSet{}) == "(none)");
}
