#include <cctype>
#include <algorithm>

#include <optional>
#include <set>

#include "dsl_lexer.hpp"
#include "tfmst/dsl.hpp"

namespace tfmst {

std::string ParseError::message() const {
  std::string out;
  if (!span.file.empty()) out += span.file + ":";
  out += std::to_string(span.line) + ":" + std::to_string(span.column) + ": expected " +
         expected + ", found " + found;
  return out;
}

namespace {

using dsl::Token;
using dsl::TokenKind;

const std::set<std::string> kStatementKeywords = {
    "spobject", "location", "condition", "feature", "cer", "usecase", "forall"};

// Thrown inside a statement; caught at the statement boundary.
struct SyntaxError {
  ParseError error;
};

class Parser {
 public:
  Parser(std::string_view source, std::string file)
      : tokens_(dsl::tokenize(source)), file_(std::move(file)) {}

  ParseResult run() {
    while (!at(TokenKind::kEnd)) {
      const std::size_t start = pos_;
      try {
        statement();
      } catch (const SyntaxError& e) {
        record(e.error);
        synchronize(start);
      }
    }
    if (!errors_.empty()) return ParseResult(std::move(errors_));
    return ParseResult(std::move(model_));
  }

 private:
  // --- token helpers -----------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_word(const std::string& word) const {
    return at(TokenKind::kName) && peek().text == word;
  }
  // NAME ':' introduces a field.
  bool at_label() const {
    return at(TokenKind::kName) && peek(1).kind == TokenKind::kColon;
  }
  bool at_label(const std::string& word) const { return at_label() && peek().text == word; }

  const Token& advance() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }

  static std::string show(const Token& tok) {
    switch (tok.kind) {
      case TokenKind::kEnd: return "end of input";
      case TokenKind::kString: return "string \"" + tok.text + "\"";
      case TokenKind::kInvalid:
        return tok.text == "unterminated string" ? tok.text : "'" + tok.text + "'";
      default: return "'" + tok.text + "'";
    }
  }

  [[noreturn]] void fail(const Token& at_tok, std::string expected, std::string found = "") const {
    if (found.empty()) found = show(at_tok);
    throw SyntaxError{{SourceSpan{file_, at_tok.line, at_tok.column}, std::move(expected),
                       std::move(found)}};
  }
  [[noreturn]] void fail(std::string expected) const { fail(peek(), std::move(expected)); }

  const Token& expect(TokenKind kind) {
    if (!at(kind)) fail(dsl::describe(kind));
    return advance();
  }

  void expect_word(const std::string& word) {
    if (!at_word(word)) fail("'" + word + "'");
    advance();
  }

  void expect_label(const std::string& word) {
    if (!at_label(word)) fail("'" + word + ":'");
    advance();
    advance();
  }

  void record(ParseError error) {
    if (std::find(errors_.begin(), errors_.end(), error) == errors_.end())
      errors_.push_back(std::move(error));
  }

  // Skips to the next statement keyword outside any braces opened since
  // `start`. Always makes progress.
  void synchronize(std::size_t start) {
    int depth = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      if (tokens_[i].kind == TokenKind::kLBrace) ++depth;
      if (tokens_[i].kind == TokenKind::kRBrace) depth = std::max(0, depth - 1);
    }
    if (pos_ == start) advance();
    while (!at(TokenKind::kEnd)) {
      if (depth == 0 && at(TokenKind::kName) && kStatementKeywords.count(peek().text) &&
          !at_label())
        return;
      if (at(TokenKind::kLBrace)) ++depth;
      if (at(TokenKind::kRBrace)) depth = std::max(0, depth - 1);
      advance();
    }
  }

  // --- names -------------------------------------------------------------

  // Substitutes the bound forall index; any other `$` is an error.
  std::string resolve(const Token& tok) const {
    std::string out;
    const std::string& text = tok.text;
    for (std::size_t i = 0; i < text.size();) {
      if (text[i] != '$') {
        out += text[i++];
        continue;
      }
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string var = text.substr(i + 1, j - i - 1);
      if (!binding_ || binding_->first != var || var.empty())
        fail(tok, var.empty() ? "index variable after '$'"
                              : "'$" + var + "' bound by an enclosing forall",
             "'" + text + "'");
      out += binding_->second;
      i = j;
    }
    return out;
  }

  // Statement keywords are reserved so a missing name cannot swallow the
  // next statement.
  std::string name() {
    if (at(TokenKind::kName) && kStatementKeywords.count(peek().text)) fail("name");
    return resolve(expect(TokenKind::kName));
  }

  // Possibly empty; stops before a field label.
  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    if (!at(TokenKind::kName) || at_label()) return out;
    out.push_back(name());
    while (at(TokenKind::kComma)) {
      advance();
      out.push_back(name());
    }
    return out;
  }

  NameSet name_set() {
    auto list = name_list();
    return NameSet(list.begin(), list.end());
  }

  Rational number() {
    const Token& tok = expect(TokenKind::kNumber);
    auto value = Rational::parse(tok.text);
    if (!value) fail(tok, "number representable as a 64-bit rational");
    return *value;
  }

  int index_number() {
    const Token& tok = peek();
    Rational value = number();
    if (!value.is_integer() || value < Rational(1) || value > Rational(1'000'000))
      fail(tok, "positive event index", "'" + tok.text + "'");
    return static_cast<int>(value.num());
  }

  // --- statements --------------------------------------------------------

  void statement() {
    if (!at(TokenKind::kName) || !kStatementKeywords.count(peek().text))
      fail("statement keyword (spobject, location, condition, feature, cer, usecase, forall)");
    const std::string kw = peek().text;
    advance();
    if (kw == "spobject") spobject();
    else if (kw == "location") location();
    else if (kw == "condition") condition();
    else if (kw == "feature") feature();
    else if (kw == "cer") cer();
    else if (kw == "usecase") usecase();
    else forall();
  }

  void spobject() {
    SpObject obj;
    obj.name = name();
    if (at_word("at") && peek(1).kind == TokenKind::kName) {
      advance();
      obj.initial_location = name();
    }
    model_.sp_objects.push_back(std::move(obj));
  }

  void location() {
    Location loc;
    loc.name = name();
    if (at_word("adjacent") && peek(1).kind == TokenKind::kName && !kStatementKeywords.count(peek(1).text)) {
      advance();
      loc.adjacent = name_set();
    }
    model_.locations.push_back(std::move(loc));
  }

  void condition() {
    Condition cond;
    cond.name = name();
    if (at_word("excludes") && peek(1).kind == TokenKind::kName && !kStatementKeywords.count(peek(1).text)) {
      advance();
      cond.excludes = name_set();
    }
    model_.conditions.push_back(std::move(cond));
  }

  void cer() {
    std::string from = name();
    expect(TokenKind::kArrow);
    std::string to = name();
    model_.declared_cers.emplace(std::move(from), std::move(to));
  }

  AffectedRef affected_ref() {
    if (at(TokenKind::kLBracket)) {
      advance();
      AffectedRef ref{name(), true};
      expect(TokenKind::kRBracket);
      return ref;
    }
    return {name(), false};
  }

  void feature() {
    FunctionalFeature f;
    f.id = name();
    expect(TokenKind::kLBrace);
    std::set<std::string> seen;
    while (!at(TokenKind::kRBrace)) {
      if (!at_label())
        fail("feature field (action, affects, obj, pre, post, prov, exec, duration, timing, loc) or '}'");
      const Token& label = advance();
      advance();  // ':'
      if (!seen.insert(label.text).second)
        fail(label, "each field at most once", "second '" + label.text + ":'");
      const std::string& field = label.text;
      if (field == "action") {
        f.action = name();
      } else if (field == "affects") {
        f.affected.push_back(affected_ref());
        while (at(TokenKind::kComma)) {
          advance();
          f.affected.push_back(affected_ref());
        }
      } else if (field == "obj") {
        f.objects.push_back(name());
        while (at(TokenKind::kComma)) {
          advance();
          f.objects.push_back(name());
        }
      } else if (field == "pre") {
        f.pre = name_set();
      } else if (field == "post") {
        f.post = name_set();
      } else if (field == "prov") {
        f.prov = name_set();
      } else if (field == "exec") {
        f.exec = name_set();
      } else if (field == "duration") {
        f.duration.dmin = number();
        expect(TokenKind::kRange);
        f.duration.dmax = number();
      } else if (field == "timing") {
        if (at_word("none")) {
          advance();
          f.timing = TimingConstraint::none();
        } else if (at_word("every")) {
          advance();
          f.timing = TimingConstraint::every(number());
        } else {
          fail("'none' or 'every'");
        }
      } else if (field == "loc") {
        f.loc = name_set();
      } else {
        fail(label, "feature field (action, affects, obj, pre, post, prov, exec, duration, timing, loc)",
             "'" + field + ":'");
      }
    }
    advance();  // '}'
    model_.features.push_back(std::move(f));
  }

  std::vector<std::string> bracket_names() {
    expect(TokenKind::kLBracket);
    std::vector<std::string> out{name()};
    while (at(TokenKind::kComma)) {
      advance();
      out.push_back(name());
    }
    expect(TokenKind::kRBracket);
    return out;
  }

  void usecase() {
    UseCase uc;
    uc.name = name();
    expect(TokenKind::kLBrace);
    expect_label("actors");
    uc.actors = name_set();
    expect_label("pre");
    uc.ucpre = name_set();
    expect_label("events");
    expect(TokenKind::kLBracket);
    do {
      if (!uc.events.empty()) advance();  // ','
      EventEntry ev;
      ev.index = static_cast<int>(uc.events.size()) + 1;
      ev.feature = name();
      if (at(TokenKind::kString)) ev.description = advance().text;
      uc.events.push_back(std::move(ev));
    } while (at(TokenKind::kComma));
    expect(TokenKind::kRBracket);
    while (at_word("alt")) {
      advance();
      AltFlow alt;
      alt.at_index = index_number();
      expect(TokenKind::kArrow);
      alt.events = bracket_names();
      uc.alts.push_back(std::move(alt));
    }
    expect(TokenKind::kRBrace);
    model_.use_cases.push_back(std::move(uc));
  }

  void forall() {
    const Token& var_tok = expect(TokenKind::kName);
    const std::string var = var_tok.text;
    if (var.find_first_of(".$") != std::string::npos) fail(var_tok, "index variable name");
    expect_word("in");
    expect(TokenKind::kLBrace);
    std::vector<std::string> values;
    do {
      if (!values.empty()) advance();  // ','
      if (!at(TokenKind::kName) && !at(TokenKind::kNumber)) fail("index value");
      const Token& tok = advance();
      if (std::find(values.begin(), values.end(), tok.text) != values.end())
        fail(tok, "distinct index values", "duplicate '" + tok.text + "'");
      values.push_back(tok.text);
    } while (at(TokenKind::kComma));
    expect(TokenKind::kRBrace);
    sort_index_values(values);

    expect(TokenKind::kLBrace);
    const std::size_t body = pos_;
    std::size_t body_end = body;
    for (int depth = 1; depth > 0; ++body_end) {
      if (tokens_[body_end].kind == TokenKind::kEnd) {
        pos_ = body_end;
        fail("'}' closing the forall body");
      }
      if (tokens_[body_end].kind == TokenKind::kLBrace) ++depth;
      if (tokens_[body_end].kind == TokenKind::kRBrace) --depth;
    }
    const std::size_t close = body_end - 1;  // index of the matching '}'

    for (const auto& value : values) {
      binding_ = std::make_pair(var, value);
      pos_ = body;
      while (pos_ < close) {
        try {
          if (at_word("feature")) {
            advance();
            feature();
          } else if (at_word("cer")) {
            advance();
            cer();
          } else {
            fail("'feature', 'cer' or '}'");
          }
          if (pos_ > close) {
            pos_ = close;
            fail(tokens_[close], "end of statement before the forall body closes");
          }
        } catch (const SyntaxError& e) {
          record(e.error);
          break;
        }
      }
    }
    binding_.reset();
    pos_ = close;
    advance();
  }

  // Integer index sets expand numerically, anything else lexicographically.
  static void sort_index_values(std::vector<std::string>& values) {
    const bool numeric = std::all_of(values.begin(), values.end(), [](const std::string& v) {
      auto r = Rational::parse(v);
      return r && r->is_integer();
    });
    if (numeric) {
      std::sort(values.begin(), values.end(), [](const std::string& a, const std::string& b) {
        return *Rational::parse(a) < *Rational::parse(b);
      });
    } else {
      std::sort(values.begin(), values.end());
    }
  }

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t pos_ = 0;
  Model model_;
  std::vector<ParseError> errors_;
  std::optional<std::pair<std::string, std::string>> binding_;
};

}  // namespace

ParseResult parse_model(std::string_view source, const std::string& file) {
  return Parser(source, file).run();
}

}  // namespace tfmst
