// Copyright 2026 The satriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satriage/frontend/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "satriage/common/error.hpp"

namespace satriage::frontend {
namespace {

constexpr std::array<std::string_view, 32> kKeywords{
    "auto",     "break",  "case",    "char",   "const",    "continue",
    "default",  "do",     "double",  "else",   "enum",     "extern",
    "float",    "for",    "goto",    "if",     "int",      "long",
    "register", "return", "short",   "signed", "sizeof",   "static",
    "struct",   "switch", "typedef", "union",  "unsigned", "void",
    "volatile", "while",
};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 46> kPuncts{
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "(",  ")",
    "{",   "}",   "[",   "]",  ";",  ",",  ".",  "+",  "-",  "*",  "/",  "%",
    "&",   "|",   "^",   "!",  "~",  "<",  ">",  "=",  "?",  ":",
};

class Lexer {
public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_trivia();
      const SourcePos pos{line_, column_};
      if (at_end()) {
        tokens.push_back(Token{TokenKind::End, "", pos});
        return tokens;
      }
      const char c = peek();
      if (c == '#')
        throw ParseError(pos.line, pos.column,
                         "preprocessor directives are not supported");
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tokens.push_back(word(pos));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        tokens.push_back(number(pos));
      } else if (c == '"') {
        tokens.push_back(quoted(pos, '"', TokenKind::StrLit));
      } else if (c == '\'') {
        tokens.push_back(quoted(pos, '\'', TokenKind::CharLit));
      } else {
        tokens.push_back(punct(pos));
      }
    }
  }

private:
  bool at_end() const { return offset_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return offset_ + ahead < src_.size() ? src_[offset_ + ahead] : '\0';
  }

  void advance() {
    if (src_[offset_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++offset_;
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
          c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n')
          advance();
      } else if (c == '/' && peek(1) == '*') {
        const SourcePos start{line_, column_};
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end())
            throw ParseError(start.line, start.column, "unterminated comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token word(SourcePos pos) {
    const std::size_t start = offset_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_'))
      advance();
    std::string text(src_.substr(start, offset_ - start));
    const auto kind = is_keyword(text) ? TokenKind::Keyword : TokenKind::Identifier;
    return Token{kind, std::move(text), pos};
  }

  Token number(SourcePos pos) {
    const std::size_t start = offset_;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      if (!std::isxdigit(static_cast<unsigned char>(peek())))
        throw ParseError(pos.line, pos.column, "malformed hexadecimal literal");
      while (std::isxdigit(static_cast<unsigned char>(peek())))
        advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())))
        advance();
    }
    if (peek() == '.')
      throw ParseError(line_, column_, "floating-point literals are not supported");
    while (peek() == 'u' || peek() == 'U' || peek() == 'l' || peek() == 'L')
      advance();
    if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      throw ParseError(line_, column_,
                       std::string("invalid suffix '") + peek() + "' on integer literal");
    return Token{TokenKind::IntLit, std::string(src_.substr(start, offset_ - start)),
                 pos};
  }

  Token quoted(SourcePos pos, char quote, TokenKind kind) {
    const std::size_t start = offset_;
    advance();
    while (peek() != quote) {
      if (at_end() || peek() == '\n')
        throw ParseError(pos.line, pos.column,
                         quote == '"' ? "unterminated string literal"
                                      : "unterminated character literal");
      if (peek() == '\\')
        advance();
      advance();
    }
    advance();
    return Token{kind, std::string(src_.substr(start, offset_ - start)), pos};
  }

  Token punct(SourcePos pos) {
    for (std::string_view p : kPuncts) {
      if (src_.substr(offset_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i)
          advance();
        return Token{TokenKind::Punct, std::string(p), pos};
      }
    }
    throw ParseError(pos.line, pos.column,
                     std::string("unexpected character '") + peek() + "'");
  }

  std::string_view src_;
  std::size_t offset_ = 0;
  int line_ = 1;
  int column_ = 1;
};

} // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

} // namespace satriage::frontend
