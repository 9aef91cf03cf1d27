#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tfmst::dsl {

enum class TokenKind {
  kName,    // identifiers, keywords and dotted names such as d.1 or R$i
  kNumber,  // 12, 2.5, 3/4
  kString,  // "..." with the quotes and escapes removed
  kColon,
  kComma,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kArrow,   // ->
  kRange,   // ..
  kInvalid,
  kEnd,
};

std::string describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits source text into tokens. Always ends with a kEnd token positioned
/// on the last character of the source. Unrecognized characters and
/// unterminated strings come back as kInvalid tokens for the parser to report.
std::vector<Token> tokenize(std::string_view source);

}  // namespace tfmst::dsl
