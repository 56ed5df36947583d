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

#include "satriage/learners/tree.hpp"

#include <algorithm>

#include "satriage/common/error.hpp"

namespace satriage::learners {
namespace {

Json node_to_json(const Tree &tree, int index) {
  const TreeNode &node = tree.nodes[static_cast<std::size_t>(index)];
  if (node.is_leaf())
    return Json{{"leaf", node.value}};
  return Json{{"feature", node.feature},
              {"threshold", node.threshold},
              {"left", node_to_json(tree, node.left)},
              {"right", node_to_json(tree, node.right)}};
}

int node_from_json(const Json &value, Tree &tree, int depth) {
  if (depth > 256)
    throw SchemaError("tree nesting too deep");
  if (!value.is_object())
    throw SchemaError("tree node must be an object");
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (auto leaf = value.find("leaf"); leaf != value.end()) {
    tree.nodes[static_cast<std::size_t>(index)].value = leaf->get<double>();
    return index;
  }
  TreeNode node;
  node.feature = value.at("feature").get<int>();
  node.threshold = value.at("threshold").get<double>();
  if (node.feature < 0)
    throw SchemaError("tree split feature must be non-negative");
  node.left = node_from_json(value.at("left"), tree, depth + 1);
  node.right = node_from_json(value.at("right"), tree, depth + 1);
  tree.nodes[static_cast<std::size_t>(index)] = node;
  return index;
}

std::size_t depth_of(const Tree &tree, int index) {
  const TreeNode &node = tree.nodes[static_cast<std::size_t>(index)];
  if (node.is_leaf())
    return 0;
  return 1 + std::max(depth_of(tree, node.left), depth_of(tree, node.right));
}

} // namespace

double Tree::predict(std::span<const double> x) const {
  int index = 0;
  for (;;) {
    const TreeNode &node = nodes[static_cast<std::size_t>(index)];
    if (node.is_leaf())
      return node.value;
    index = x[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                        : node.right;
  }
}

std::size_t Tree::depth() const { return nodes.empty() ? 0 : depth_of(*this, 0); }

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const TreeNode &n) { return n.is_leaf(); }));
}

Json Tree::to_json() const {
  if (nodes.empty())
    throw Error("cannot serialize an empty tree");
  return node_to_json(*this, 0);
}

Tree Tree::from_json(const Json &value) {
  Tree tree;
  node_from_json(value, tree, 0);
  return tree;
}

double midpoint(double lo, double hi) {
  // Keep lo < threshold <= hi even for adjacent doubles.
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

} // namespace satriage::learners
