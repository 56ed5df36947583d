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

#include "satriage/frontend/parser.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>

#include "satriage/common/error.hpp"
#include "satriage/frontend/lexer.hpp"

namespace satriage::frontend {
namespace {

constexpr std::array<std::string_view, 15> kTypeKeywords{
    "void",  "char",     "short",  "int",    "long",
    "float", "double",   "signed", "unsigned", "const",
    "volatile", "static", "struct", "union",  "enum",
};

// Typedef names accepted without resolution.
constexpr std::array<std::string_view, 16> kKnownTypedefs{
    "size_t",  "ssize_t",  "int8_t",   "int16_t",  "int32_t",  "int64_t",
    "uint8_t", "uint16_t", "uint32_t", "uint64_t", "uintptr_t", "intptr_t",
    "bool",    "FILE",     "off_t",    "ptrdiff_t",
};

constexpr std::array<std::string_view, 8> kUnsupportedStatements{
    "break", "continue", "do", "switch", "case", "default", "goto", "typedef",
};

int binary_precedence(std::string_view op) {
  if (op == "||")
    return 1;
  if (op == "&&")
    return 2;
  if (op == "|")
    return 3;
  if (op == "^")
    return 4;
  if (op == "&")
    return 5;
  if (op == "==" || op == "!=")
    return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=")
    return 7;
  if (op == "<<" || op == ">>")
    return 8;
  if (op == "+" || op == "-")
    return 9;
  if (op == "*" || op == "/" || op == "%")
    return 10;
  return 0;
}

bool is_assign_op(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
         op == "%=" || op == "&=" || op == "|=" || op == "^=" || op == "<<=" ||
         op == ">>=";
}

std::string describe(const Token &token) {
  if (token.kind == TokenKind::End)
    return "end of input";
  return "'" + token.text + "'";
}

// Turns a childless inner node into a leaf so that leaf <=> terminal holds.
AstNode finish(NodeKind kind, std::vector<AstNode> children, SourcePos pos,
               std::string_view spelling, std::string attr = {}) {
  if (children.empty())
    return AstNode::leaf(kind, std::string(spelling), pos);
  return AstNode::inner(kind, std::move(children), pos, std::move(attr));
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AstNode function() {
    const SourcePos start = peek().pos;
    if (!starts_type())
      fail("expected return type");
    std::vector<AstNode> children;
    children.push_back(type_name());
    const Token &name = expect_identifier("function name");
    std::string fn_name = name.text;
    expect("(");
    params(children);
    expect(")");
    expect("{");
    while (!check("}")) {
      if (peek().kind == TokenKind::End)
        fail("expected '}'");
      for (auto &node : statement())
        children.push_back(std::move(node));
    }
    expect("}");
    if (peek().kind != TokenKind::End)
      fail("expected end of input after function definition");
    return AstNode::inner(NodeKind::FunctionDef, std::move(children), start,
                          std::move(fn_name));
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token &advance() {
    const Token &token = tokens_[pos_];
    if (pos_ + 1 < tokens_.size())
      ++pos_;
    return token;
  }

  bool check(std::string_view text) const {
    const Token &token = peek();
    return (token.kind == TokenKind::Punct || token.kind == TokenKind::Keyword) &&
           token.text == text;
  }

  bool accept(std::string_view text) {
    if (!check(text))
      return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string &what) const {
    const Token &token = peek();
    throw ParseError(token.pos.line, token.pos.column,
                     what + ", found " + describe(token));
  }

  const Token &expect(std::string_view text) {
    if (!check(text))
      fail("expected '" + std::string(text) + "'");
    return advance();
  }

  const Token &expect_identifier(const std::string &what) {
    if (peek().kind != TokenKind::Identifier)
      fail("expected " + what);
    return advance();
  }

  bool starts_type(std::size_t ahead = 0) const {
    const Token &token = peek(ahead);
    if (token.kind == TokenKind::Keyword)
      return std::find(kTypeKeywords.begin(), kTypeKeywords.end(), token.text) !=
             kTypeKeywords.end();
    if (token.kind == TokenKind::Identifier)
      return std::find(kKnownTypedefs.begin(), kKnownTypedefs.end(),
                       token.text) != kKnownTypedefs.end();
    return false;
  }

  std::string type_base() {
    std::string text;
    bool has_specifier = false;
    while (starts_type()) {
      const Token &token = advance();
      if (!text.empty())
        text += ' ';
      text += token.text;
      if (token.text == "struct" || token.text == "union" || token.text == "enum") {
        text += ' ';
        text += expect_identifier("tag name after " + token.text).text;
        has_specifier = true;
      } else if (token.text != "const" && token.text != "volatile" &&
                 token.text != "static") {
        has_specifier = true;
      }
    }
    if (!has_specifier)
      fail("expected type specifier");
    return text;
  }

  std::string pointers() {
    std::string stars;
    while (accept("*")) {
      stars += '*';
      while (accept("const") || accept("volatile")) {
      }
    }
    return stars;
  }

  AstNode type_name() {
    const SourcePos pos = peek().pos;
    std::string text = type_base();
    text += pointers();
    return AstNode::leaf(NodeKind::TypeName, std::move(text), pos);
  }

  std::string array_suffix() {
    std::string suffix;
    while (accept("[")) {
      suffix += '[';
      if (peek().kind == TokenKind::IntLit)
        suffix += advance().text;
      else if (peek().kind == TokenKind::Identifier)
        suffix += advance().text;
      expect("]");
      suffix += ']';
    }
    return suffix;
  }

  void params(std::vector<AstNode> &out) {
    if (check(")"))
      return;
    if (check("void") && peek(1).kind == TokenKind::Punct && peek(1).text == ")") {
      advance();
      return;
    }
    for (;;) {
      if (!starts_type())
        fail("expected parameter type");
      const SourcePos pos = peek().pos;
      AstNode type = type_name();
      const Token &name = expect_identifier("parameter name");
      AstNode ident = AstNode::leaf(NodeKind::Identifier, name.text, name.pos);
      type.terminal_value = *type.terminal_value + array_suffix();
      out.push_back(AstNode::inner(NodeKind::ParamDecl,
                                   {std::move(type), std::move(ident)}, pos));
      if (!accept(","))
        return;
    }
  }

  std::vector<AstNode> declaration() {
    const SourcePos type_pos = peek().pos;
    const std::string base = type_base();
    std::vector<AstNode> decls;
    bool first = true;
    for (;;) {
      const SourcePos decl_pos = first ? type_pos : peek().pos;
      const SourcePos stars_pos = first ? type_pos : peek().pos;
      std::string text = base + pointers();
      const Token &name = expect_identifier("variable name");
      AstNode ident = AstNode::leaf(NodeKind::Identifier, name.text, name.pos);
      text += array_suffix();
      std::vector<AstNode> children;
      children.push_back(AstNode::leaf(NodeKind::TypeName, std::move(text), stars_pos));
      children.push_back(std::move(ident));
      if (accept("="))
        children.push_back(assignment());
      decls.push_back(AstNode::inner(NodeKind::VarDecl, std::move(children), decl_pos));
      first = false;
      if (!accept(","))
        break;
    }
    expect(";");
    return decls;
  }

  AstNode body_statement() {
    const SourcePos pos = peek().pos;
    auto nodes = statement();
    if (nodes.size() == 1)
      return std::move(nodes.front());
    return finish(NodeKind::Block, std::move(nodes), pos, "{}");
  }

  std::vector<AstNode> statement() {
    const Token &token = peek();
    const SourcePos pos = token.pos;
    if (token.kind == TokenKind::Keyword &&
        std::find(kUnsupportedStatements.begin(), kUnsupportedStatements.end(),
                  token.text) != kUnsupportedStatements.end())
      fail("unsupported statement");
    if (accept(";"))
      return {};
    if (accept("{")) {
      std::vector<AstNode> children;
      while (!check("}")) {
        if (peek().kind == TokenKind::End)
          fail("expected '}'");
        for (auto &node : statement())
          children.push_back(std::move(node));
      }
      expect("}");
      std::vector<AstNode> out;
      out.push_back(finish(NodeKind::Block, std::move(children), pos, "{}"));
      return out;
    }
    if (accept("if")) {
      expect("(");
      std::vector<AstNode> children;
      children.push_back(expression());
      expect(")");
      children.push_back(body_statement());
      if (accept("else"))
        children.push_back(body_statement());
      std::vector<AstNode> out;
      out.push_back(AstNode::inner(NodeKind::If, std::move(children), pos));
      return out;
    }
    if (accept("while")) {
      expect("(");
      std::vector<AstNode> children;
      children.push_back(expression());
      expect(")");
      children.push_back(body_statement());
      std::vector<AstNode> out;
      out.push_back(AstNode::inner(NodeKind::While, std::move(children), pos));
      return out;
    }
    if (accept("for")) {
      expect("(");
      std::vector<AstNode> children;
      if (starts_type()) {
        for (auto &decl : declaration())
          children.push_back(std::move(decl));
      } else {
        if (!check(";"))
          children.push_back(expression());
        expect(";");
      }
      if (!check(";"))
        children.push_back(expression());
      expect(";");
      if (!check(")"))
        children.push_back(expression());
      expect(")");
      children.push_back(body_statement());
      std::vector<AstNode> out;
      out.push_back(finish(NodeKind::For, std::move(children), pos, "for"));
      return out;
    }
    if (accept("return")) {
      std::vector<AstNode> children;
      if (!check(";"))
        children.push_back(expression());
      expect(";");
      std::vector<AstNode> out;
      out.push_back(finish(NodeKind::Return, std::move(children), pos, "return"));
      return out;
    }
    if (starts_type())
      return declaration();
    std::vector<AstNode> children;
    children.push_back(expression());
    expect(";");
    std::vector<AstNode> out;
    out.push_back(AstNode::inner(NodeKind::ExprStmt, std::move(children), pos));
    return out;
  }

  AstNode expression() {
    AstNode node = assignment();
    if (check(","))
      fail("comma expressions are not supported");
    return node;
  }

  AstNode assignment() {
    const SourcePos pos = peek().pos;
    AstNode lhs = binary(1);
    if (peek().kind == TokenKind::Punct && is_assign_op(peek().text)) {
      std::string op = advance().text;
      AstNode rhs = assignment();
      return AstNode::inner(NodeKind::Assign, {std::move(lhs), std::move(rhs)}, pos,
                            std::move(op));
    }
    if (check("?"))
      fail("conditional expressions are not supported");
    return lhs;
  }

  AstNode binary(int min_precedence) {
    const SourcePos pos = peek().pos;
    AstNode lhs = unary();
    for (;;) {
      const Token &token = peek();
      if (token.kind != TokenKind::Punct)
        return lhs;
      const int precedence = binary_precedence(token.text);
      if (precedence == 0 || precedence < min_precedence)
        return lhs;
      std::string op = advance().text;
      AstNode rhs = binary(precedence + 1);
      lhs = AstNode::inner(NodeKind::BinaryOp, {std::move(lhs), std::move(rhs)},
                           pos, std::move(op));
    }
  }

  AstNode unary() {
    const Token &token = peek();
    const SourcePos pos = token.pos;
    if (token.kind == TokenKind::Punct) {
      if (token.text == "*") {
        advance();
        return AstNode::inner(NodeKind::Deref, {unary()}, pos);
      }
      if (token.text == "!" || token.text == "-" || token.text == "+" ||
          token.text == "~" || token.text == "&" || token.text == "++" ||
          token.text == "--") {
        std::string op = advance().text;
        return AstNode::inner(NodeKind::UnaryOp, {unary()}, pos, std::move(op));
      }
      if (token.text == "(" && starts_type(1)) {
        advance();
        AstNode type = type_name();
        expect(")");
        return AstNode::inner(NodeKind::UnaryOp, {std::move(type), unary()}, pos,
                              "cast");
      }
    }
    if (token.kind == TokenKind::Keyword && token.text == "sizeof") {
      advance();
      if (check("(") && starts_type(1)) {
        advance();
        AstNode type = type_name();
        expect(")");
        return AstNode::inner(NodeKind::UnaryOp, {std::move(type)}, pos, "sizeof");
      }
      return AstNode::inner(NodeKind::UnaryOp, {unary()}, pos, "sizeof");
    }
    return postfix();
  }

  AstNode postfix() {
    const SourcePos pos = peek().pos;
    AstNode node = primary();
    for (;;) {
      if (accept("(")) {
        std::vector<AstNode> children;
        children.push_back(std::move(node));
        if (!check(")")) {
          for (;;) {
            children.push_back(assignment());
            if (!accept(","))
              break;
          }
        }
        expect(")");
        node = AstNode::inner(NodeKind::Call, std::move(children), pos);
      } else if (accept("[")) {
        AstNode index = expression();
        expect("]");
        node = AstNode::inner(NodeKind::Index, {std::move(node), std::move(index)}, pos);
      } else if (check(".") || check("->")) {
        std::string op = advance().text;
        const Token &field = expect_identifier("member name");
        AstNode ident = AstNode::leaf(NodeKind::Identifier, field.text, field.pos);
        node = AstNode::inner(NodeKind::Member, {std::move(node), std::move(ident)},
                              pos, std::move(op));
      } else if (check("++") || check("--")) {
        std::string op = "post" + advance().text;
        node = AstNode::inner(NodeKind::UnaryOp, {std::move(node)}, pos, std::move(op));
      } else {
        return node;
      }
    }
  }

  AstNode primary() {
    const Token &token = peek();
    switch (token.kind) {
    case TokenKind::Identifier:
      advance();
      return AstNode::leaf(NodeKind::Identifier, token.text, token.pos);
    case TokenKind::IntLit:
    case TokenKind::CharLit:
      advance();
      return AstNode::leaf(NodeKind::IntLit, token.text, token.pos);
    case TokenKind::StrLit:
      advance();
      return AstNode::leaf(NodeKind::StrLit, token.text, token.pos);
    case TokenKind::Punct:
      if (token.text == "(") {
        advance();
        AstNode inner = expression();
        expect(")");
        return inner;
      }
      break;
    default:
      break;
    }
    fail("expected expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

AstNode parse_function(std::string_view source) {
  if (source.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos)
    throw ParseError(1, 1, "empty input");
  return Parser(tokenize(source)).function();
}

} // namespace satriage::frontend
