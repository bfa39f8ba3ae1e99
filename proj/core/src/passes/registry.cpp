#include "esdown/passes.hpp"

namespace esdown {

namespace {

// Helper bodies are plain ES5 on purpose: parsing any of them yields an empty
// feature scan, so emitting a helper can never reintroduce a lowered feature.
const char* kInherits = R"JS(function $inherits(child, parent) {
  function ctor() {
  }
  ctor.prototype = parent.prototype;
  child.prototype = new ctor();
  child.prototype.constructor = child;
}
)JS";

const char* kArrayFrom = R"JS(function $arrayFrom(value) {
  if (value && typeof value.slice === "function" && typeof value.length === "number") {
    return value.slice(0);
  }
  if (value && typeof value.next === "function") {
    var out = [];
    var step = value.next();
    while (!step.done) {
      out.push(step.value);
      step = value.next();
    }
    return out;
  }
  throw new Error("value is not spreadable");
}
)JS";

const char* kMakeIterator = R"JS(function $makeIterator(step) {
  var done = false;
  return { next: function(value) {
    if (done) {
      return { value: void 0, done: true };
    }
    var result;
    try {
      result = step(value);
    } catch (error) {
      done = true;
      throw error;
    }
    if (result.done) {
      done = true;
    }
    return result;
  } };
}
)JS";

const char* kAsyncExecute = R"JS(function $asyncExecute(makeBody) {
  return new Promise(function(resolve, reject) {
    var iterator = makeBody();
    function step(value) {
      var result;
      try {
        result = iterator.next(value);
      } catch (error) {
        reject(error);
        return;
      }
      if (result.done) {
        resolve(result.value);
        return;
      }
      Promise.resolve(result.value).then(function(next) {
        step(next);
      }, function(error) {
        reject(error);
      });
    }
    step(void 0);
  });
}
)JS";

}  // namespace

const std::vector<RuntimeHelper>& runtime_helpers() {
  static const std::vector<RuntimeHelper> helpers = {
      {"$inherits", kInherits},
      {"$arrayFrom", kArrayFrom},
      {"$makeIterator", kMakeIterator},
      {"$asyncExecute", kAsyncExecute},
  };
  return helpers;
}

const RuntimeHelper* find_helper(std::string_view id) {
  for (const auto& h : runtime_helpers())
    if (h.id == id) return &h;
  return nullptr;
}

const std::vector<PassDescriptor>& pass_registry() {
  static const std::vector<PassDescriptor> registry = {
      {"rewrite_optional_chaining",
       {Feature::OptionalChaining},
       LanguageLevel::Es2020,
       {},
       {},
       &rewrite_optional_chaining},
      {"rewrite_nullish_coalescing",
       {Feature::NullishCoalescing},
       LanguageLevel::Es2020,
       {},
       {},
       &rewrite_nullish_coalescing},
      {"rewrite_async_functions",
       {Feature::AsyncFunctions},
       LanguageLevel::Es2017,
       {Feature::Generators},
       {"$asyncExecute"},
       &rewrite_async_functions},
      {"rewrite_exponential_operator",
       {Feature::ExponentOperator},
       LanguageLevel::Es2016,
       {},
       {},
       &rewrite_exponential_operator},
      {"rewrite_classes",
       {Feature::Classes},
       LanguageLevel::Es2015,
       {},
       {"$inherits"},
       &rewrite_classes},
      {"rewrite_default_parameters",
       {Feature::DefaultParameters},
       LanguageLevel::Es2015,
       {},
       {},
       &rewrite_default_parameters},
      {"rewrite_rest_and_spread",
       {Feature::RestParameters, Feature::SpreadExpressions},
       LanguageLevel::Es2015,
       {},
       {"$arrayFrom"},
       &rewrite_rest_and_spread},
      {"rewrite_arrow_functions",
       {Feature::ArrowFunctions},
       LanguageLevel::Es2015,
       {},
       {},
       &rewrite_arrow_functions},
      {"rewrite_template_literals",
       {Feature::TemplateLiterals},
       LanguageLevel::Es2015,
       {},
       {},
       &rewrite_template_literals},
      {"rewrite_generators",
       {Feature::Generators},
       LanguageLevel::Es2015,
       {},
       {"$makeIterator"},
       &rewrite_generators},
      {"rewrite_block_scoped",
       {Feature::BlockScopedDeclarations},
       LanguageLevel::Es2015,
       {},
       {},
       &rewrite_block_scoped},
  };
  return registry;
}

const PassDescriptor* find_pass(std::string_view id) {
  for (const auto& p : pass_registry())
    if (p.id == id) return &p;
  return nullptr;
}

}  // namespace esdown
