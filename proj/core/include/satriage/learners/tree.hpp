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

#include <span>
#include <vector>

#include "satriage/common/json_io.hpp"

namespace satriage::learners {

/// Flat binary decision tree. A node with feature < 0 is a leaf holding
/// `value`; otherwise samples with x[feature] < threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode &) const = default;
};

struct Tree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;

  /// Nested record form: {"feature", "threshold", "left", "right"} or
  /// {"leaf": value}.
  Json to_json() const;
  static Tree from_json(const Json &value);

  bool operator==(const Tree &) const = default;
};

/// Midpoint threshold between two consecutive distinct sorted values.
double midpoint(double lo, double hi);

} // namespace satriage::learners
