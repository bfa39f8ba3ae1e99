#pragma once

#include <string>
#include <vector>

#include "esdown/ast.hpp"

namespace esdown {

/// Deterministic pretty-printer: 2-space indent, one statement per line,
/// mandatory semicolons, parentheses derived from operator precedence
/// (minimal, but re-parsing always yields a structurally equal tree).
std::string print_script(const ScriptNode& script);

/// Same, with runtime-helper sources spliced in front of the script body.
/// Each helper source is itself MiniES text and is printed canonically.
std::string print_script_with_prelude(const ScriptNode& script,
                                      const std::vector<std::string>& helper_sources);

std::string print_statement(const Node& stmt);

std::string print_expression(const Node& expr);

}  // namespace esdown
