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

#include "satriage/embedder/pretrain.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"
#include "satriage/embedder/model.hpp"

namespace satriage::embedder {
namespace {

void apply_step(EmbedderParams &params, const EmbedderParams &grad, double rate) {
  params.value_embeddings -= rate * grad.value_embeddings;
  params.path_embeddings -= rate * grad.path_embeddings;
  params.combine -= rate * grad.combine;
  params.attention -= rate * grad.attention;
  params.tag_weights -= rate * grad.tag_weights;
}

void reset(EmbedderParams &grad) {
  grad.value_embeddings.setZero();
  grad.path_embeddings.setZero();
  grad.combine.setZero();
  grad.attention.setZero();
  grad.tag_weights.setZero();
}

} // namespace

PretrainResult pretrain(EmbedderParams params, const std::vector<EncodedBag> &bags,
                        const std::vector<std::size_t> &tags,
                        const PretrainOptions &options) {
  if (bags.size() != tags.size())
    throw Error("bags and tags differ in length");
  std::vector<std::size_t> usable;
  std::set<std::size_t> distinct;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    if (bags[i].empty())
      continue;
    usable.push_back(i);
    distinct.insert(tags[i]);
  }
  if (distinct.size() < 2)
    throw TrainingError("pretraining needs at least 2 distinct tags");
  if (options.batch_size == 0)
    throw Error("batch size must be positive");

  PretrainResult result;
  Rng rng(options.seed);
  EmbedderParams grad = zeros_like(params);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    rng.shuffle(usable);
    double total = 0.0;
    for (std::size_t start = 0; start < usable.size(); start += options.batch_size) {
      const std::size_t end = std::min(usable.size(), start + options.batch_size);
      const double weight = 1.0 / static_cast<double>(end - start);
      reset(grad);
      for (std::size_t k = start; k < end; ++k)
        total += accumulate_gradient(params, bags[usable[k]], tags[usable[k]], weight, grad);
      apply_step(params, grad, options.learning_rate);
    }
    const double mean = total / static_cast<double>(usable.size());
    if (!std::isfinite(mean) || !params.all_finite())
      throw TrainingError("divergence at epoch " + std::to_string(epoch));
    result.epoch_loss.push_back(mean);
  }
  result.params = std::move(params);
  return result;
}

double tag_accuracy(const EmbedderParams &params, const std::vector<EncodedBag> &bags,
                    const std::vector<std::size_t> &tags) {
  std::size_t correct = 0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    if (bags[i].empty())
      continue;
    ++seen;
    Eigen::Index best = 0;
    forward(params, bags[i]).tag_distribution.maxCoeff(&best);
    if (static_cast<std::size_t>(best) == tags[i])
      ++correct;
  }
  return seen == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(seen);
}

} // namespace satriage::embedder
