#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tfmst/model.hpp"

namespace tfmst {

struct SourceSpan {
  std::string file;
  int line = 1;    // 1-based
  int column = 1;  // 1-based

  bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
  SourceSpan span;
  std::string expected;
  std::string found;

  /// `file:line:col: expected X, found Y` (file omitted when empty).
  std::string message() const;

  bool operator==(const ParseError&) const = default;
};

/// Either a fully expanded model or every syntax error found. The parser
/// recovers at statement boundaries, so independent errors all surface.
class ParseResult {
 public:
  ParseResult(Model model) : value_(std::move(model)) {}  // NOLINT(implicit)
  ParseResult(std::vector<ParseError> errors) : value_(std::move(errors)) {}  // NOLINT

  bool ok() const { return std::holds_alternative<Model>(value_); }
  explicit operator bool() const { return ok(); }

  const Model& model() const { return std::get<Model>(value_); }
  Model& model() { return std::get<Model>(value_); }
  const std::vector<ParseError>& errors() const {
    return std::get<std::vector<ParseError>>(value_);
  }

 private:
  std::variant<Model, std::vector<ParseError>> value_;
};

/// Parses `.tfm` text. `file` only labels error spans.
ParseResult parse_model(std::string_view source, const std::string& file = "");

/// Canonical text form: one statement per line, feature fields in tuple
/// order, empty fields omitted. parse_model(serialize_model(m)) == m for
/// every model the parser can produce.
std::string serialize_model(const Model& model);

}  // namespace tfmst
