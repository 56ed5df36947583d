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
#include <vector>

#include "satriage/embedder/params.hpp"

namespace satriage::embedder {

struct PretrainOptions {
  std::size_t epochs = 30;
  double learning_rate = 0.01;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

struct PretrainResult {
  EmbedderParams params;
  /// Mean training cross-entropy per epoch.
  std::vector<double> epoch_loss;
};

/// Function-name prediction by mini-batch gradient descent. Bags without
/// contexts are skipped. Requires at least two distinct tags; a non-finite
/// loss aborts with TrainingError("divergence at epoch E").
PretrainResult pretrain(EmbedderParams params, const std::vector<EncodedBag> &bags,
                        const std::vector<std::size_t> &tags,
                        const PretrainOptions &options);

/// Fraction of bags whose most probable tag is the true one.
double tag_accuracy(const EmbedderParams &params, const std::vector<EncodedBag> &bags,
                    const std::vector<std::size_t> &tags);

} // namespace satriage::embedder
