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

#include <cstdint>
#include <span>
#include <vector>

#include "satriage/learners/data.hpp"
#include "satriage/learners/hyper.hpp"
#include "satriage/learners/tree.hpp"

namespace satriage::learners {

/// 1 - p^2 - (1-p)^2 for `positives` out of `count` samples; 0 for count 0.
double gini_impurity(std::size_t positives, std::size_t count);

struct ForestModel {
  /// Leaf values hold the positive-class fraction of the leaf's samples.
  std::vector<Tree> trees;

  double predict_proba(std::span<const double> x) const;
};

/// Bootstrap-resampled Gini trees; each node considers ceil(sqrt(d))
/// features drawn without replacement.
ForestModel train_forest(const FeatureMatrix &x, std::span<const int> y,
                         const ForestHyper &hyper, std::uint64_t seed);

} // namespace satriage::learners
