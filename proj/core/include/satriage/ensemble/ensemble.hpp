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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "satriage/learners/learner.hpp"

namespace satriage::ensemble {

using learners::FeatureMatrix;
using learners::LearnerModel;

inline constexpr std::size_t kMembers = 3;

/// Rows of code vectors with labels and the warning ids they came from.
struct LabeledMatrix {
  FeatureMatrix x;
  std::vector<int> y;
  std::vector<std::string> ids;

  std::size_t size() const { return y.size(); }
};

/// Member order is fixed: gbt, forest, net.
struct EnsembleModel {
  std::string cwe;
  std::array<LearnerModel, kMembers> members;
  std::array<std::uint64_t, kMembers> bootstrap_seeds{};
  int version = 1;
  std::string trained_at;
  /// Number of feedback-log events already folded into training.
  std::size_t feedback_cursor = 0;

  std::size_t input_dim() const { return members[0].input_dim; }
};

struct Prediction {
  std::string warning_id;
  std::array<double, kMembers> member_probs{};
  std::array<int, kMembers> votes{};
  int final_label = 0;
  double score = 0.0;
};

/// N indices drawn uniformly with replacement from [0, n).
std::vector<std::size_t> bootstrap_sample(std::size_t n, std::uint64_t seed);

/// Votes are probs >= 0.5; label is the majority; score the mean probability.
Prediction vote(const std::array<double, kMembers> &member_probs);

/// Trains gbt, forest and net on independent bootstrap resamples of
/// `train`. Member i resamples with mix_seed(master_seed, i); if that draw
/// holds a single class it is redrawn from further derived seeds, and the
/// seed actually used is recorded. `val` (possibly empty) only sets each
/// member's final_loss.
EnsembleModel train_cwe_ensemble(const std::string &cwe, const LabeledMatrix &train,
                                 const LabeledMatrix &val,
                                 const learners::HyperTriple &hyper,
                                 std::uint64_t master_seed);

Prediction predict(const EnsembleModel &model, std::span<const double> x,
                   const std::string &warning_id = {});

std::vector<Prediction> predict_all(const EnsembleModel &model, const LabeledMatrix &rows);

} // namespace satriage::ensemble
