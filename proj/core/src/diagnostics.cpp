#include "esdown/diagnostics.hpp"

namespace esdown {

std::string_view diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::SyntaxError: return "SYNTAX_ERROR";
    case DiagCode::UnsupportedConstruct: return "UNSUPPORTED_CONSTRUCT";
    case DiagCode::UnterminatedString: return "UNTERMINATED_STRING";
    case DiagCode::UnterminatedTemplate: return "UNTERMINATED_TEMPLATE";
    case DiagCode::UnknownCharacter: return "UNKNOWN_CHARACTER";
    case DiagCode::UnsupportedYieldPosition: return "UNSUPPORTED_YIELD_POSITION";
    case DiagCode::UnsupportedCapture: return "UNSUPPORTED_CAPTURE";
  }
  return "UNKNOWN";
}

std::string format_diagnostic(const Diagnostic& d, std::string_view source_name) {
  std::string out;
  out += source_name;
  out += ':';
  out += std::to_string(d.span.line);
  out += ':';
  out += std::to_string(d.span.column);
  out += ": ";
  out += diag_code_name(d.code);
  out += ": ";
  out += d.message;
  return out;
}

std::string format_diagnostics(const std::vector<Diagnostic>& list, std::string_view source_name) {
  std::string out;
  for (const auto& d : list) {
    out += format_diagnostic(d, source_name);
    out += '\n';
  }
  return out;
}

}  // namespace esdown
