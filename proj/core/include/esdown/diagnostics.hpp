#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "esdown/ast.hpp"

namespace esdown {

enum class DiagCode : std::uint8_t {
  SyntaxError,
  UnsupportedConstruct,
  UnterminatedString,
  UnterminatedTemplate,
  UnknownCharacter,
  // Pass-level rejections: input is outside the supported lowering subset and
  // would miscompile if we pressed on.
  UnsupportedYieldPosition,
  UnsupportedCapture,
};

std::string_view diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code;
  std::string message;
  Span span;
};

/// `source_name:line:col: CODE: message`
std::string format_diagnostic(const Diagnostic& d, std::string_view source_name);

std::string format_diagnostics(const std::vector<Diagnostic>& list, std::string_view source_name);

}  // namespace esdown
