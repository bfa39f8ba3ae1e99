#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esdown/ast.hpp"
#include "esdown/diagnostics.hpp"

namespace esdown {

struct ParseOptions {
  // Lowering passes synthesize `$t<n>` temporaries and `$`-prefixed helper
  // bindings. User input must not collide with them, so the default parse
  // rejects those spellings; passes re-parsing their own output lift the
  // restriction.
  bool allow_reserved = false;
};

struct ParseResult {
  std::optional<ScriptNode> script;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return script.has_value(); }
};

ParseResult parse(std::string_view source, std::string source_name, ParseOptions options = {});

/// True for identifiers the transpiler reserves for itself: `$t<digits>`,
/// `$this`, `$state`, `$sent`, `$v`, and the runtime helper names.
bool is_reserved_identifier(std::string_view name);

}  // namespace esdown
