#include <cctype>
#include <map>

#include "adfd/ast.hpp"

namespace adfd {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const std::map<std::string, TokenKind>& keyword_table() {
  static const std::map<std::string, TokenKind> table = {
      {"element", TokenKind::KwElement},     {"asset", TokenKind::KwAsset},
      {"boundary", TokenKind::KwBoundary},   {"connector", TokenKind::KwConnector},
      {"flow", TokenKind::KwFlow},           {"source", TokenKind::KwSource},
      {"target", TokenKind::KwTarget},       {"holds", TokenKind::KwHolds},
      {"contains", TokenKind::KwContains},   {"contained", TokenKind::KwContained},
      {"by", TokenKind::KwBy},               {"has", TokenKind::KwHas},
      {"crosses", TokenKind::KwCrosses},     {"includes", TokenKind::KwIncludes},
      {"in", TokenKind::KwIn},               {"not", TokenKind::KwNot},
      {"no", TokenKind::KwNo},               {"only", TokenKind::KwOnly},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_whitespace();
      if (pos_ >= text_.size()) break;
      tokens.push_back(next_token());
    }
    tokens.push_back(make_token(TokenKind::End, pos_, pos_, ""));
    return tokens;
  }

 private:
  [[noreturn]] void error(ParseErrorCode code, const std::string& message, std::size_t offset) {
    auto [line, column] = position_of(offset);
    throw ParseError(code, message, SourceSpan{offset, pos_ > offset ? pos_ - offset : 1}, line,
                     column);
  }

  std::pair<std::size_t, std::size_t> position_of(std::size_t offset) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

  Token make_token(TokenKind kind, std::size_t begin, std::size_t end, std::string text) {
    auto [line, column] = position_of(begin);
    return Token{kind, std::move(text), SourceSpan{begin, end - begin}, line, column};
  }

  void skip_whitespace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  Token next_token() {
    const std::size_t begin = pos_;
    const char c = text_[pos_];
    switch (c) {
      case '&': ++pos_; return make_token(TokenKind::Amp, begin, pos_, "&");
      case '|': ++pos_; return make_token(TokenKind::Pipe, begin, pos_, "|");
      case '(': ++pos_; return make_token(TokenKind::LParen, begin, pos_, "(");
      case ')': ++pos_; return make_token(TokenKind::RParen, begin, pos_, ")");
      case '{': ++pos_; return make_token(TokenKind::LBrace, begin, pos_, "{");
      case '}': ++pos_; return make_token(TokenKind::RBrace, begin, pos_, "}");
      case '[': ++pos_; return make_token(TokenKind::LBracket, begin, pos_, "[");
      case ']': ++pos_; return make_token(TokenKind::RBracket, begin, pos_, "]");
      case ',': ++pos_; return make_token(TokenKind::Comma, begin, pos_, ",");
      case ':': ++pos_; return make_token(TokenKind::Colon, begin, pos_, ":");
      case '=': ++pos_; return make_token(TokenKind::Eq, begin, pos_, "=");
      case '!':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          return make_token(TokenKind::NotEq, begin, pos_, "!=");
        }
        ++pos_;
        error(ParseErrorCode::IllegalCharacter, "stray '!'; did you mean '!='?", begin);
      case '"': return string_token();
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return word_token();
    ++pos_;
    error(ParseErrorCode::IllegalCharacter,
          std::string("unexpected character '") + c + "'", begin);
  }

  Token string_token() {
    const std::size_t begin = pos_;
    ++pos_;  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        return make_token(TokenKind::String, begin, pos_, std::move(value));
      }
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) break;
        const char escaped = text_[pos_ + 1];
        if (escaped != '"' && escaped != '\\')
          error(ParseErrorCode::IllegalCharacter,
                std::string("unsupported escape '\\") + escaped + "' in string", pos_);
        value += escaped;
        pos_ += 2;
        continue;
      }
      value += c;
      ++pos_;
    }
    error(ParseErrorCode::UnterminatedString, "string starting here never closes", begin);
  }

  Token word_token() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string word = text_.substr(begin, pos_ - begin);
    auto it = keyword_table().find(lower(word));
    if (it == keyword_table().end())
      error(ParseErrorCode::UnknownKeyword,
            "'" + word + "' is not a keyword; names must be double-quoted", begin);
    return make_token(it->second, begin, pos_, word);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(const std::string& text) { return Lexer(text).run(); }

}  // namespace adfd
