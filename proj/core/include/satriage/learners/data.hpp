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

#include <Eigen/Dense>

namespace satriage::learners {

/// One sample per row.
using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::span<const double> row_span(const FeatureMatrix &x, Eigen::Index row) {
  return {x.data() + row * x.cols(), static_cast<std::size_t>(x.cols())};
}

/// Rejects empty or mismatched inputs, non-binary labels and single-class
/// label vectors ("degenerate labels").
void check_training_inputs(const FeatureMatrix &x, std::span<const int> y);

/// Mean logistic loss of probabilities clipped to [1e-15, 1 - 1e-15].
double log_loss(std::span<const double> probabilities, std::span<const int> y);

double sigmoid(double z);

} // namespace satriage::learners
