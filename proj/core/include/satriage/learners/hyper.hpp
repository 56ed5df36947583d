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
#include <cstddef>
#include <string>
#include <string_view>

#include "satriage/common/json_io.hpp"

namespace satriage::learners {

enum class LearnerKind { gbt, forest, net };

std::string_view to_string(LearnerKind kind);
LearnerKind parse_learner_kind(std::string_view text);

inline constexpr std::array<int, 4> kGbtMaxDepthGrid{3, 5, 7, 9};
inline constexpr std::array<double, 3> kGbtMinChildWeightGrid{1, 3, 5};
inline constexpr std::array<double, 5> kGbtL2LambdaGrid{0.1, 0.2, 0.3, 0.4, 0.5};

struct GbtHyper {
  int max_depth = 3;
  double min_child_weight = 1.0;
  double l2_lambda = 0.1;
  std::size_t n_rounds = 100;
  double eta = 0.1;
  double base_score = 0.5;

  bool operator==(const GbtHyper &) const = default;
};

inline constexpr std::array<std::size_t, 3> kForestMinSamplesSplitGrid{2, 4, 6};
inline constexpr std::array<int, 3> kForestMaxDepthGrid{5, 10, 15};
inline constexpr std::array<std::size_t, 3> kForestEstimatorsGrid{10, 100, 500};

struct ForestHyper {
  std::size_t min_samples_split = 2;
  int max_depth = 10;
  std::size_t n_estimators = 100;

  bool operator==(const ForestHyper &) const = default;
};

enum class Optimizer { adam, sgd, adadelta };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view text);

inline constexpr std::array<double, 3> kNetDecayGrid{0.95, 0.5, 0.1};
inline constexpr std::array<Optimizer, 3> kNetOptimizerGrid{Optimizer::adam, Optimizer::sgd,
                                                            Optimizer::adadelta};
inline constexpr std::array<std::size_t, 4> kNetHiddenGrid{2, 3, 4, 5};
inline constexpr std::array<std::size_t, 3> kNetUnitsGrid{128, 256, 512};
inline constexpr std::size_t kNetPatience = 5;

/// Default initial rate per optimizer: 0.001 Adam, 0.01 SGD, 1.0 AdaDelta.
double default_initial_lr(Optimizer optimizer);

struct NetHyper {
  double lr_decay_factor = 0.5;
  Optimizer optimizer = Optimizer::adam;
  std::size_t n_hidden = 2;
  std::size_t units = 128;
  /// Zero selects default_initial_lr(optimizer).
  double initial_lr = 0.0;
  std::size_t patience = kNetPatience;
  std::size_t max_epochs = 100;
  std::size_t batch_size = 32;

  double effective_initial_lr() const {
    return initial_lr > 0.0 ? initial_lr : default_initial_lr(optimizer);
  }
  bool operator==(const NetHyper &) const = default;
};

/// The default configuration of each member learner.
struct HyperTriple {
  GbtHyper gbt;
  ForestHyper forest;
  NetHyper net;

  bool operator==(const HyperTriple &) const = default;
};

Json to_json(const GbtHyper &h);
Json to_json(const ForestHyper &h);
Json to_json(const NetHyper &h);
Json to_json(const HyperTriple &h);
GbtHyper gbt_hyper_from_json(const Json &value);
ForestHyper forest_hyper_from_json(const Json &value);
NetHyper net_hyper_from_json(const Json &value);
HyperTriple hyper_triple_from_json(const Json &value);

} // namespace satriage::learners
