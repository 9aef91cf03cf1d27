#include "dsl_lexer.hpp"

#include <cctype>

namespace tfmst::dsl {

std::string describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kName: return "name";
    case TokenKind::kNumber: return "number";
    case TokenKind::kString: return "string";
    case TokenKind::kColon: return "':'";
    case TokenKind::kComma: return "','";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kRange: return "'..'";
    case TokenKind::kInvalid: return "invalid input";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(end_token());
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token end_token() const {
    Token tok{TokenKind::kEnd, "", 1, 1};
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    tok.line = line;
    tok.column = col;
    return tok;
  }

  Token next() {
    Token tok;
    tok.line = line_;
    tok.column = col_;
    const std::size_t start = pos_;
    char c = peek();

    auto single = [&](TokenKind kind) {
      advance();
      tok.kind = kind;
      tok.text = std::string(src_.substr(start, 1));
      return tok;
    };

    switch (c) {
      case ':': return single(TokenKind::kColon);
      case ',': return single(TokenKind::kComma);
      case '{': return single(TokenKind::kLBrace);
      case '}': return single(TokenKind::kRBrace);
      case '[': return single(TokenKind::kLBracket);
      case ']': return single(TokenKind::kRBracket);
      default: break;
    }
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      tok.kind = TokenKind::kArrow;
      tok.text = "->";
      return tok;
    }
    if (c == '.' && peek(1) == '.') {
      advance();
      advance();
      tok.kind = TokenKind::kRange;
      tok.text = "..";
      return tok;
    }
    if (c == '"') return string_token(tok);
    if (is_digit(c)) {
      while (is_digit(peek())) advance();
      if ((peek() == '.' || peek() == '/') && is_digit(peek(1))) {
        advance();
        while (is_digit(peek())) advance();
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (is_name_start(c)) {
      // A trailing '.' belongs to a following '..' rather than the name.
      while (is_name_char(peek()) && !(peek() == '.' && peek(1) == '.')) advance();
      tok.kind = TokenKind::kName;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    advance();
    // Swallow the rest of a multi-byte UTF-8 sequence so one bad glyph is one error.
    while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80)
      advance();
    tok.kind = TokenKind::kInvalid;
    tok.text = std::string(src_.substr(start, pos_ - start));
    return tok;
  }

  Token string_token(Token tok) {
    advance();  // opening quote
    std::string value;
    while (pos_ < src_.size() && peek() != '"' && peek() != '\n') {
      char c = peek();
      if (c == '\\' && pos_ + 1 < src_.size()) {
        advance();
        char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          default: value += e; break;
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    if (peek() != '"') {
      tok.kind = TokenKind::kInvalid;
      tok.text = "unterminated string";
      return tok;
    }
    advance();
    tok.kind = TokenKind::kString;
    tok.text = std::move(value);
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace tfmst::dsl
