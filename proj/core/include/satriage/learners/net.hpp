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

#include <Eigen/Dense>

#include "satriage/learners/data.hpp"
#include "satriage/learners/hyper.hpp"

namespace satriage::learners {

struct DenseLayer {
  Eigen::MatrixXd weights; // out x in
  Eigen::VectorXd bias;

  bool operator==(const DenseLayer &other) const {
    return weights == other.weights && bias == other.bias;
  }
};

/// ReLU hidden layers followed by a single sigmoid output unit.
struct NetModel {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const;
  double logit(std::span<const double> x) const;
  double predict_proba(std::span<const double> x) const;
  bool operator==(const NetModel &) const = default;
};

/// He-uniform weights and zero biases.
NetModel init_net(std::size_t input_dim, const NetHyper &hyper, std::uint64_t seed);

/// Same shapes as `model`, all zeros.
NetModel zeros_like(const NetModel &model);

/// Mean binary cross-entropy over `rows` of (x, y).
double net_loss(const NetModel &model, const FeatureMatrix &x, std::span<const int> y,
                std::span<const std::size_t> rows);

/// Mean loss over `rows`; writes d(loss)/d(parameter) into `grad`.
double net_loss_and_gradient(const NetModel &model, const FeatureMatrix &x,
                             std::span<const int> y, std::span<const std::size_t> rows,
                             NetModel &grad);

/// Multiplies the rate by `factor` once `patience` consecutive epochs pass
/// without a strict improvement of the monitored loss.
class PlateauScheduler {
public:
  PlateauScheduler(double initial_lr, double factor, std::size_t patience);

  /// Records one epoch's loss; returns true when the rate was reduced.
  bool step(double loss);

  double lr() const { return lr_; }
  std::size_t firings() const { return firings_; }

  static constexpr double kImprovementEpsilon = 1e-12;

private:
  double lr_;
  double factor_;
  std::size_t patience_;
  double best_;
  std::size_t stale_ = 0;
  std::size_t firings_ = 0;
};

struct NetTrainLog {
  std::vector<double> train_loss;
  std::vector<double> monitor_loss;
  std::vector<double> lr;
};

/// Mini-batch training with a seeded 90:10 train/monitor split. Stops at
/// max_epochs or once the rate drops below 1e-6.
NetModel train_net(const FeatureMatrix &x, std::span<const int> y, const NetHyper &hyper,
                   std::uint64_t seed, NetTrainLog *log = nullptr);

inline constexpr double kNetMinLr = 1e-6;

} // namespace satriage::learners
