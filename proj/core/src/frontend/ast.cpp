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

#include "satriage/frontend/ast.hpp"

#include <array>

namespace satriage::frontend {
namespace {

constexpr std::array<std::string_view, 21> kKindNames{
    "TranslationUnit", "FunctionDef", "ParamDecl", "VarDecl",  "Block",
    "If",              "While",       "For",       "Return",   "ExprStmt",
    "Call",            "BinaryOp",    "UnaryOp",   "Assign",   "Index",
    "Member",          "Deref",       "Identifier", "IntLit",  "StrLit",
    "TypeName",
};

void dump_into(const AstNode &node, int depth, std::string &out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += to_string(node.kind);
  if (node.terminal_value) {
    out += ':';
    out += *node.terminal_value;
  } else if (!node.attr.empty()) {
    out += ':';
    out += node.attr;
  }
  out += " @";
  out += std::to_string(node.pos.line);
  out += ':';
  out += std::to_string(node.pos.column);
  out += '\n';
  for (const auto &child : node.children)
    dump_into(child, depth + 1, out);
}

void collect_leaves(const AstNode &node, std::vector<const AstNode *> &out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const auto &child : node.children)
    collect_leaves(child, out);
}

} // namespace

std::string_view to_string(NodeKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

AstNode AstNode::leaf(NodeKind kind, std::string value, SourcePos pos) {
  AstNode node;
  node.kind = kind;
  node.terminal_value = std::move(value);
  node.pos = pos;
  return node;
}

AstNode AstNode::inner(NodeKind kind, std::vector<AstNode> children,
                       SourcePos pos, std::string attr) {
  AstNode node;
  node.kind = kind;
  node.children = std::move(children);
  node.pos = pos;
  node.attr = std::move(attr);
  return node;
}

std::string dump(const AstNode &root) {
  std::string out;
  dump_into(root, 0, out);
  return out;
}

std::size_t count_nodes(const AstNode &root) {
  std::size_t total = 1;
  for (const auto &child : root.children)
    total += count_nodes(child);
  return total;
}

std::vector<const AstNode *> leaves(const AstNode &root) {
  std::vector<const AstNode *> out;
  collect_leaves(root, out);
  return out;
}

} // namespace satriage::frontend
