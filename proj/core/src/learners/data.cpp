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

#include "satriage/learners/data.hpp"

#include <algorithm>
#include <cmath>

#include "satriage/common/error.hpp"

namespace satriage::learners {

void check_training_inputs(const FeatureMatrix &x, std::span<const int> y) {
  if (x.rows() != static_cast<Eigen::Index>(y.size()))
    throw TrainingError("feature rows and labels differ in length");
  if (y.size() < 2)
    throw TrainingError("need at least 2 samples");
  if (x.cols() == 0)
    throw TrainingError("need at least 1 feature");
  bool seen[2] = {false, false};
  for (int label : y) {
    if (label != 0 && label != 1)
      throw TrainingError("labels must be 0 or 1");
    seen[label] = true;
  }
  if (!seen[0] || !seen[1])
    throw TrainingError("degenerate labels");
  if (!x.allFinite())
    throw TrainingError("features must be finite");
}

double log_loss(std::span<const double> probabilities, std::span<const int> y) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = std::clamp(probabilities[i], 1e-15, 1.0 - 1e-15);
    total -= y[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(y.size());
}

double sigmoid(double z) {
  if (z >= 0.0)
    return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

} // namespace satriage::learners
