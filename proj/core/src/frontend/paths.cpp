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

#include "satriage/frontend/paths.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <unordered_set>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::frontend {
namespace {

constexpr std::string_view kUp = "↑";
constexpr std::string_view kDown = "↓";

// Flattened tree: parent links and child slots for fast LCA walks.
struct FlatTree {
  std::vector<const AstNode *> nodes;
  std::vector<int> parent;
  std::vector<int> depth;
  std::vector<int> slot;
  std::vector<int> leaf_ids;

  explicit FlatTree(const AstNode &root) { add(root, -1, 0, 0); }

  void add(const AstNode &node, int parent_id, int node_depth, int child_slot) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(&node);
    parent.push_back(parent_id);
    depth.push_back(node_depth);
    slot.push_back(child_slot);
    if (node.is_leaf())
      leaf_ids.push_back(id);
    int index = 0;
    for (const auto &child : node.children)
      add(child, id, node_depth + 1, index++);
  }
};

std::string decimal_of_char_literal(std::string_view text) {
  // text is 'x' or '\n'-style escape.
  std::string_view body = text.substr(1, text.size() - 2);
  long value = 0;
  if (body.size() >= 2 && body[0] == '\\') {
    switch (body[1]) {
    case 'n': value = '\n'; break;
    case 't': value = '\t'; break;
    case 'r': value = '\r'; break;
    case '0': value = std::strtol(std::string(body.substr(1)).c_str(), nullptr, 8); break;
    case '\\': value = '\\'; break;
    case '\'': value = '\''; break;
    case '"': value = '"'; break;
    case 'x': value = std::strtol(std::string(body.substr(2)).c_str(), nullptr, 16); break;
    default: value = static_cast<unsigned char>(body[1]); break;
    }
  } else if (!body.empty()) {
    value = static_cast<unsigned char>(body[0]);
  }
  return std::to_string(value);
}

std::string decimal_of_int_literal(std::string_view text) {
  std::string digits(text);
  while (!digits.empty() && (digits.back() == 'u' || digits.back() == 'U' ||
                             digits.back() == 'l' || digits.back() == 'L'))
    digits.pop_back();
  if (digits.empty())
    return std::string(text);
  unsigned long long value = 0;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X'))
    value = std::strtoull(digits.c_str() + 2, nullptr, 16);
  else if (digits.size() > 1 && digits[0] == '0')
    value = std::strtoull(digits.c_str() + 1, nullptr, 8);
  else
    value = std::strtoull(digits.c_str(), nullptr, 10);
  return std::to_string(value);
}

} // namespace

std::string PathContext::path_string() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0)
      out += path[i].direction == Direction::up ? kUp : kDown;
    out += to_string(path[i].kind);
  }
  return out;
}

std::string normalize_terminal(NodeKind kind, std::string_view text) {
  switch (kind) {
  case NodeKind::StrLit:
    while (text.size() >= 2 && text.front() == '"' && text.back() == '"')
      text = text.substr(1, text.size() - 2);
    return std::string(text);
  case NodeKind::IntLit:
    if (text.size() >= 3 && text.front() == '\'' && text.back() == '\'')
      return decimal_of_char_literal(text);
    return decimal_of_int_literal(text);
  default: {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    return out;
  }
  }
}

ContextBag extract_path_contexts(const AstNode &function,
                                 const ExtractionCaps &caps,
                                 std::uint64_t seed) {
  ContextBag bag;
  bag.function_name = function.attr;
  const FlatTree tree(function);
  const auto &leaf_ids = tree.leaf_ids;

  std::vector<std::string> terminals;
  terminals.reserve(leaf_ids.size());
  for (int id : leaf_ids)
    terminals.push_back(
        normalize_terminal(tree.nodes[id]->kind, *tree.nodes[id]->terminal_value));

  std::vector<PathContext> kept;
  std::unordered_set<std::string> seen;
  std::vector<int> up_chain;
  std::vector<int> down_chain;
  for (std::size_t i = 0; i < leaf_ids.size(); ++i) {
    for (std::size_t j = i + 1; j < leaf_ids.size(); ++j) {
      int a = leaf_ids[i];
      int b = leaf_ids[j];
      up_chain.clear();
      down_chain.clear();
      // Climb the deeper side first, then both in lockstep.
      int slot_a = -1;
      int slot_b = -1;
      while (tree.depth[a] > tree.depth[b]) {
        slot_a = tree.slot[a];
        a = tree.parent[a];
        up_chain.push_back(a);
      }
      while (tree.depth[b] > tree.depth[a]) {
        slot_b = tree.slot[b];
        b = tree.parent[b];
        down_chain.push_back(b);
      }
      while (a != b) {
        slot_a = tree.slot[a];
        slot_b = tree.slot[b];
        a = tree.parent[a];
        b = tree.parent[b];
        up_chain.push_back(a);
        down_chain.push_back(b);
      }
      // up_chain ends with the LCA; down_chain too (drop its copy).
      down_chain.pop_back();
      const std::size_t length = up_chain.size() + down_chain.size();
      const std::size_t width =
          static_cast<std::size_t>(std::abs(slot_b - slot_a));
      if (length > caps.max_path_length || width > caps.max_path_width)
        continue;

      PathContext context;
      context.left = terminals[i];
      context.right = terminals[j];
      context.left_pos = tree.nodes[leaf_ids[i]]->pos;
      context.right_pos = tree.nodes[leaf_ids[j]]->pos;
      context.path.reserve(length);
      for (int id : up_chain)
        context.path.push_back({tree.nodes[id]->kind, Direction::up});
      for (auto it = down_chain.rbegin(); it != down_chain.rend(); ++it)
        context.path.push_back({tree.nodes[*it]->kind, Direction::down});

      std::string key = context.left;
      key += '\x1f';
      key += context.path_string();
      key += '\x1f';
      key += context.right;
      if (!seen.insert(std::move(key)).second)
        continue;
      kept.push_back(std::move(context));
    }
  }

  if (kept.size() > caps.max_contexts) {
    Rng rng(seed);
    const auto chosen = rng.sample_without_replacement(kept.size(), caps.max_contexts);
    bag.contexts.reserve(chosen.size());
    for (std::size_t index : chosen)
      bag.contexts.push_back(std::move(kept[index]));
  } else {
    bag.contexts = std::move(kept);
  }
  return bag;
}

} // namespace satriage::frontend
