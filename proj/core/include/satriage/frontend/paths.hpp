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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "satriage/frontend/ast.hpp"

namespace satriage::frontend {

enum class Direction { up, down };

/// One node on a path together with the move that entered it.
struct PathStep {
  NodeKind kind;
  Direction direction;

  bool operator==(const PathStep &) const = default;
};

/// (left terminal, AST path, right terminal) triple.
///
/// `path` lists the inner nodes from the left leaf's parent up to the
/// lowest common ancestor and back down to the right leaf's parent; the
/// leaves themselves are represented by their terminals.
struct PathContext {
  std::string left;
  std::vector<PathStep> path;
  std::string right;
  SourcePos left_pos;
  SourcePos right_pos;

  /// "KIND↑KIND↓KIND" rendering; the arrow before a kind is the move that
  /// entered it.
  std::string path_string() const;
  bool operator==(const PathContext &) const = default;
};

struct ContextBag {
  std::string function_name;
  std::vector<PathContext> contexts;
};

struct ExtractionCaps {
  /// Maximum number of nodes on a path.
  std::size_t max_path_length = 8;
  /// Maximum distance between the two child slots taken at the common
  /// ancestor.
  std::size_t max_path_width = 2;
  std::size_t max_contexts = 200;
};

/// Kind-aware token normalization: string literals lose their enclosing
/// quotes, integer and character literals become their decimal value,
/// identifiers and type names are lowercased. Idempotent.
std::string normalize_terminal(NodeKind kind, std::string_view text);

/// Enumerates every pair of distinct leaves (left before right in source
/// order), keeps those within the caps, removes duplicate triples and,
/// if more than max_contexts remain, keeps a seeded uniform subsample in
/// enumeration order.
ContextBag extract_path_contexts(const AstNode &function,
                                 const ExtractionCaps &caps,
                                 std::uint64_t seed);

} // namespace satriage::frontend
