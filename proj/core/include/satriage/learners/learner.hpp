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
#include <variant>

#include "satriage/common/json_io.hpp"
#include "satriage/learners/data.hpp"
#include "satriage/learners/forest.hpp"
#include "satriage/learners/gbt.hpp"
#include "satriage/learners/hyper.hpp"
#include "satriage/learners/net.hpp"

namespace satriage::learners {

/// A trained member classifier plus its training metadata.
struct LearnerModel {
  LearnerKind kind = LearnerKind::gbt;
  std::size_t input_dim = 0;
  std::uint64_t seed = 0;
  Json hyper = Json::object();
  /// Log loss on the validation split, when one was available.
  double final_loss = 0.0;
  std::variant<GbtModel, ForestModel, NetModel> model;

  /// Throws Error when x.size() differs from input_dim.
  double predict_proba(std::span<const double> x) const;
};

LearnerModel train_learner(LearnerKind kind, const FeatureMatrix &x, std::span<const int> y,
                           const HyperTriple &hyper, std::uint64_t seed);

Json to_json(const LearnerModel &model);
LearnerModel learner_from_json(const Json &value);

} // namespace satriage::learners
