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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satriage::frontend {

enum class NodeKind {
  TranslationUnit,
  FunctionDef,
  ParamDecl,
  VarDecl,
  Block,
  If,
  While,
  For,
  Return,
  ExprStmt,
  Call,
  BinaryOp,
  UnaryOp,
  Assign,
  Index,
  Member,
  Deref,
  Identifier,
  IntLit,
  StrLit,
  TypeName,
};

std::string_view to_string(NodeKind kind);

/// 1-based line and column of the first token of a node.
struct SourcePos {
  int line = 0;
  int column = 0;

  bool operator==(const SourcePos &) const = default;
};

/// Syntax tree node with value semantics.
///
/// Leaves (identifiers, literals, type names) carry `terminal_value` and
/// have no children. Inner nodes may carry an `attr`: the operator spelling
/// for BinaryOp/UnaryOp/Assign/Member and the function name for
/// FunctionDef.
struct AstNode {
  NodeKind kind = NodeKind::TranslationUnit;
  std::vector<AstNode> children;
  std::optional<std::string> terminal_value;
  std::string attr;
  SourcePos pos;

  bool is_leaf() const { return terminal_value.has_value(); }

  static AstNode leaf(NodeKind kind, std::string value, SourcePos pos);
  static AstNode inner(NodeKind kind, std::vector<AstNode> children,
                       SourcePos pos, std::string attr = {});

  bool operator==(const AstNode &) const = default;
};

/// Indented debug rendering, one node per line:
/// `Kind[:value] @line:col`, two spaces per depth level. `value` is the
/// terminal for leaves and `attr` for inner nodes that have one.
std::string dump(const AstNode &root);

std::size_t count_nodes(const AstNode &root);

/// Leaves in pre-order (source order).
std::vector<const AstNode *> leaves(const AstNode &root);

} // namespace satriage::frontend
