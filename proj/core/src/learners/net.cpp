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

#include "satriage/learners/net.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::learners {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd gather(const FeatureMatrix &x, std::span<const std::size_t> rows) {
  MatrixXd batch(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    batch.row(static_cast<Index>(i)) = x.row(static_cast<Index>(rows[i]));
  return batch;
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

/// Activations per layer, one sample per row; acts[0] is the input.
std::vector<MatrixXd> forward(const NetModel &model, MatrixXd input) {
  std::vector<MatrixXd> acts;
  acts.reserve(model.layers.size() + 1);
  acts.push_back(std::move(input));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto &layer = model.layers[l];
    MatrixXd z = acts.back() * layer.weights.transpose();
    z.rowwise() += layer.bias.transpose();
    if (l + 1 < model.layers.size())
      z = z.cwiseMax(0.0);
    acts.push_back(std::move(z));
  }
  return acts;
}

double batch_loss(const MatrixXd &logits, std::span<const int> y,
                  std::span<const std::size_t> rows) {
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double z = logits(static_cast<Index>(i), 0);
    total += softplus(z) - y[rows[i]] * z;
  }
  return total / static_cast<double>(rows.size());
}

class Updater {
public:
  Updater(Optimizer kind, const NetModel &shape)
      : kind_(kind), m_(zeros_like(shape)), v_(zeros_like(shape)) {}

  void apply(NetModel &model, const NetModel &grad, double lr) {
    ++t_;
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      update(model.layers[l].weights, grad.layers[l].weights, m_.layers[l].weights,
             v_.layers[l].weights, lr);
      update(model.layers[l].bias, grad.layers[l].bias, m_.layers[l].bias,
             v_.layers[l].bias, lr);
    }
  }

private:
  template <typename T> void update(T &param, const T &g, T &m, T &v, double lr) {
    switch (kind_) {
    case Optimizer::sgd:
      param -= lr * g;
      break;
    case Optimizer::adam: {
      constexpr double beta1 = 0.9;
      constexpr double beta2 = 0.999;
      constexpr double eps = 1e-8;
      m = beta1 * m + (1.0 - beta1) * g;
      v = beta2 * v + (1.0 - beta2) * g.cwiseProduct(g);
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
      param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
      break;
    }
    case Optimizer::adadelta: {
      // m holds the running mean of squared gradients, v of squared steps.
      constexpr double rho = 0.95;
      constexpr double eps = 1e-6;
      m = rho * m + (1.0 - rho) * g.cwiseProduct(g);
      T delta = (-((v.array() + eps).sqrt() / (m.array() + eps).sqrt()) * g.array()).matrix();
      v = rho * v + (1.0 - rho) * delta.cwiseProduct(delta);
      param += lr * delta;
      break;
    }
    }
  }

  Optimizer kind_;
  NetModel m_;
  NetModel v_;
  std::size_t t_ = 0;
};

} // namespace

std::size_t NetModel::input_dim() const {
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().weights.cols());
}

double NetModel::logit(std::span<const double> x) const {
  VectorXd a = Eigen::Map<const VectorXd>(x.data(), static_cast<Index>(x.size()));
  for (std::size_t l = 0; l < layers.size(); ++l) {
    VectorXd z = layers[l].weights * a + layers[l].bias;
    a = l + 1 < layers.size() ? VectorXd(z.cwiseMax(0.0)) : z;
  }
  return a(0);
}

double NetModel::predict_proba(std::span<const double> x) const {
  return sigmoid(logit(x));
}

NetModel init_net(std::size_t input_dim, const NetHyper &hyper, std::uint64_t seed) {
  if (input_dim == 0 || hyper.units == 0)
    throw TrainingError("network dimensions must be positive");
  Rng rng(seed);
  NetModel model;
  std::size_t fan_in = input_dim;
  for (std::size_t l = 0; l <= hyper.n_hidden; ++l) {
    const std::size_t out = l < hyper.n_hidden ? hyper.units : 1;
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    DenseLayer layer;
    layer.weights.resize(static_cast<Index>(out), static_cast<Index>(fan_in));
    for (Index r = 0; r < layer.weights.rows(); ++r)
      for (Index c = 0; c < layer.weights.cols(); ++c)
        layer.weights(r, c) = rng.uniform(-limit, limit);
    layer.bias = VectorXd::Zero(static_cast<Index>(out));
    model.layers.push_back(std::move(layer));
    fan_in = out;
  }
  return model;
}

NetModel zeros_like(const NetModel &model) {
  NetModel zero;
  for (const auto &layer : model.layers)
    zero.layers.push_back({MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()),
                           VectorXd::Zero(layer.bias.size())});
  return zero;
}

double net_loss(const NetModel &model, const FeatureMatrix &x, std::span<const int> y,
                std::span<const std::size_t> rows) {
  const auto acts = forward(model, gather(x, rows));
  return batch_loss(acts.back(), y, rows);
}

double net_loss_and_gradient(const NetModel &model, const FeatureMatrix &x,
                             std::span<const int> y, std::span<const std::size_t> rows,
                             NetModel &grad) {
  const auto acts = forward(model, gather(x, rows));
  const double n = static_cast<double>(rows.size());
  if (grad.layers.size() != model.layers.size())
    grad = zeros_like(model);

  MatrixXd delta(static_cast<Index>(rows.size()), 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    delta(static_cast<Index>(i), 0) =
        (sigmoid(acts.back()(static_cast<Index>(i), 0)) - y[rows[i]]) / n;

  for (std::size_t l = model.layers.size(); l-- > 0;) {
    grad.layers[l].weights = delta.transpose() * acts[l];
    grad.layers[l].bias = delta.colwise().sum().transpose();
    if (l == 0)
      break;
    MatrixXd back = delta * model.layers[l].weights;
    delta = back.cwiseProduct((acts[l].array() > 0.0).cast<double>().matrix());
  }
  return batch_loss(acts.back(), y, rows);
}

PlateauScheduler::PlateauScheduler(double initial_lr, double factor, std::size_t patience)
    : lr_(initial_lr), factor_(factor), patience_(patience),
      best_(std::numeric_limits<double>::infinity()) {}

bool PlateauScheduler::step(double loss) {
  if (loss < best_ - kImprovementEpsilon) {
    best_ = loss;
    stale_ = 0;
    return false;
  }
  if (++stale_ < patience_)
    return false;
  lr_ *= factor_;
  stale_ = 0;
  ++firings_;
  return true;
}

NetModel train_net(const FeatureMatrix &x, std::span<const int> y, const NetHyper &hyper,
                   std::uint64_t seed, NetTrainLog *log) {
  check_training_inputs(x, y);
  if (hyper.batch_size == 0 || hyper.patience == 0 || !(hyper.lr_decay_factor > 0.0) ||
      !(hyper.lr_decay_factor < 1.0))
    throw TrainingError("invalid network hyperparameters");

  Rng rng(mix_seed(seed, 0));
  NetModel model = init_net(static_cast<std::size_t>(x.cols()), hyper, mix_seed(seed, 1));

  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  const std::size_t n_monitor = order.size() / 10;
  std::vector<std::size_t> monitor(order.begin(), order.begin() + static_cast<long>(n_monitor));
  std::vector<std::size_t> train(order.begin() + static_cast<long>(n_monitor), order.end());
  if (monitor.empty())
    monitor = train;

  PlateauScheduler scheduler(hyper.effective_initial_lr(), hyper.lr_decay_factor,
                             hyper.patience);
  Updater updater(hyper.optimizer, model);
  NetModel grad = zeros_like(model);

  for (std::size_t epoch = 1; epoch <= hyper.max_epochs; ++epoch) {
    if (scheduler.lr() < kNetMinLr)
      break;
    rng.shuffle(train);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < train.size(); start += hyper.batch_size) {
      const std::size_t stop = std::min(train.size(), start + hyper.batch_size);
      std::span<const std::size_t> batch(train.data() + start, stop - start);
      const double loss = net_loss_and_gradient(model, x, y, batch, grad);
      epoch_loss += loss * static_cast<double>(batch.size());
      updater.apply(model, grad, scheduler.lr());
    }
    epoch_loss /= static_cast<double>(train.size());
    const double monitor_loss = net_loss(model, x, y, monitor);
    if (!std::isfinite(epoch_loss) || !std::isfinite(monitor_loss))
      throw TrainingError("divergence at epoch " + std::to_string(epoch));
    if (log) {
      log->train_loss.push_back(epoch_loss);
      log->monitor_loss.push_back(monitor_loss);
      log->lr.push_back(scheduler.lr());
    }
    scheduler.step(monitor_loss);
  }
  return model;
}

} // namespace satriage::learners
