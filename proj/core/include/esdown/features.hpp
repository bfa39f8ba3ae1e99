#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esdown {

// Language levels, totally ordered by specification year. EsNext sits above
// every released level and supports every known feature.
enum class LanguageLevel : std::uint8_t {
  Es5 = 0,
  Es2015,
  Es2016,
  Es2017,
  Es2020,
  EsNext,
};

// The closed feature universe. Every construct the parser recognizes, every
// pass lowers, and every validator check references exactly these members.
enum class Feature : std::uint8_t {
  OptionalChaining = 0,     // ES2020
  NullishCoalescing,        // ES2020
  AsyncFunctions,           // ES2017
  ExponentOperator,         // ES2016
  ArrowFunctions,           // ES2015
  Classes,                  // ES2015
  TemplateLiterals,         // ES2015
  DefaultParameters,        // ES2015
  RestParameters,           // ES2015
  SpreadExpressions,        // ES2015
  Generators,               // ES2015
  BlockScopedDeclarations,  // ES2015
};

inline constexpr int kFeatureCount = 12;

/// The spec year that introduced the feature.
LanguageLevel level_of(Feature f);

/// SCREAMING_SNAKE_CASE name used in stats JSON and CLI output.
std::string_view feature_name(Feature f);
std::optional<Feature> feature_from_name(std::string_view name);

/// Lowercase level name used in CLI flags and stats JSON ("es5", "esnext", ...).
std::string_view level_name(LanguageLevel level);
std::optional<LanguageLevel> level_from_name(std::string_view name);

// Immutable small set of Features over the closed universe, stored as a
// fixed-width bitmask so it can live on a script node without heap traffic.
class FeatureSet {
 public:
  constexpr FeatureSet() = default;
  constexpr FeatureSet(std::initializer_list<Feature> fs) {
    for (Feature f : fs) bits_ |= bit(f);
  }

  static constexpr FeatureSet all() {
    FeatureSet s;
    s.bits_ = static_cast<std::uint16_t>((1u << kFeatureCount) - 1u);
    return s;
  }
  static constexpr FeatureSet from_bits(std::uint16_t bits) {
    FeatureSet s;
    s.bits_ = static_cast<std::uint16_t>(bits & ((1u << kFeatureCount) - 1u));
    return s;
  }

  constexpr bool contains(Feature f) const { return (bits_ & bit(f)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const {
    int n = 0;
    for (std::uint16_t b = bits_; b != 0; b &= static_cast<std::uint16_t>(b - 1)) ++n;
    return n;
  }

  constexpr FeatureSet with(Feature f) const {
    FeatureSet s = *this;
    s.bits_ |= bit(f);
    return s;
  }
  constexpr FeatureSet without(Feature f) const {
    FeatureSet s = *this;
    s.bits_ &= static_cast<std::uint16_t>(~bit(f));
    return s;
  }

  constexpr bool operator==(const FeatureSet&) const = default;

  constexpr std::uint16_t bits() const { return bits_; }

  /// Members in enumeration order.
  std::vector<Feature> members() const;

  friend constexpr FeatureSet set_union(FeatureSet a, FeatureSet b) {
    FeatureSet s;
    s.bits_ = static_cast<std::uint16_t>(a.bits_ | b.bits_);
    return s;
  }
  friend constexpr FeatureSet set_minus(FeatureSet a, FeatureSet b) {
    FeatureSet s;
    s.bits_ = static_cast<std::uint16_t>(a.bits_ & ~b.bits_);
    return s;
  }
  friend constexpr FeatureSet set_intersect(FeatureSet a, FeatureSet b) {
    FeatureSet s;
    s.bits_ = static_cast<std::uint16_t>(a.bits_ & b.bits_);
    return s;
  }
  friend constexpr bool intersects(FeatureSet a, FeatureSet b) {
    return (a.bits_ & b.bits_) != 0;
  }
  friend constexpr bool is_subset(FeatureSet a, FeatureSet b) {
    return (a.bits_ & ~b.bits_) == 0;
  }

 private:
  static constexpr std::uint16_t bit(Feature f) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(f));
  }

  std::uint16_t bits_ = 0;
};

/// All features introduced at or below `level`: { f | level_of(f) <= level }.
FeatureSet features_of_level(LanguageLevel level);

/// Comma-separated feature names in enum order, or "(none)" when empty —
/// the rendering used by the `features` command and diagnostics.
std::string to_string(FeatureSet set);

}  // namespace esdown
