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

#include "satriage/learners/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "satriage/common/error.hpp"

namespace satriage::learners {
namespace {

bool beats(double gain, double best) {
  return gain > best + kGainTieTolerance * std::max(1.0, std::abs(best));
}

struct PendingNode {
  int index;
  int depth;
  std::vector<std::size_t> rows;
};

Tree grow_tree(const FeatureMatrix &x, std::span<const double> grad,
               std::span<const double> hess, const GbtHyper &hyper) {
  Tree tree;
  std::vector<std::size_t> all(static_cast<std::size_t>(x.rows()));
  std::iota(all.begin(), all.end(), std::size_t{0});
  tree.nodes.emplace_back();
  std::vector<PendingNode> level;
  level.push_back({0, 0, std::move(all)});

  while (!level.empty()) {
    std::vector<PendingNode> next;
    for (auto &pending : level) {
      SplitChoice split;
      if (pending.depth < hyper.max_depth)
        split = best_gbt_split(x, grad, hess, pending.rows, hyper.l2_lambda,
                               hyper.min_child_weight);
      if (!split.found()) {
        double g = 0.0;
        double h = 0.0;
        for (std::size_t r : pending.rows) {
          g += grad[r];
          h += hess[r];
        }
        tree.nodes[static_cast<std::size_t>(pending.index)].value =
            hyper.eta * gbt_leaf_weight(g, h, hyper.l2_lambda);
        continue;
      }
      std::vector<std::size_t> left_rows;
      std::vector<std::size_t> right_rows;
      for (std::size_t r : pending.rows) {
        if (x(static_cast<Eigen::Index>(r), split.feature) < split.threshold)
          left_rows.push_back(r);
        else
          right_rows.push_back(r);
      }
      const int left = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      const int right = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      TreeNode &node = tree.nodes[static_cast<std::size_t>(pending.index)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = left;
      node.right = right;
      next.push_back({left, pending.depth + 1, std::move(left_rows)});
      next.push_back({right, pending.depth + 1, std::move(right_rows)});
    }
    level = std::move(next);
  }
  return tree;
}

} // namespace

double gbt_leaf_weight(double grad_sum, double hess_sum, double l2_lambda) {
  const double denom = hess_sum + l2_lambda;
  if (denom == 0.0)
    throw Error("leaf weight undefined: hessian sum plus lambda is zero");
  return -grad_sum / denom;
}

double gbt_split_gain(double grad_left, double hess_left, double grad_right,
                      double hess_right, double l2_lambda) {
  const double total = grad_left + grad_right;
  return 0.5 * (grad_left * grad_left / (hess_left + l2_lambda) +
                grad_right * grad_right / (hess_right + l2_lambda) -
                total * total / (hess_left + hess_right + l2_lambda));
}

SplitChoice best_gbt_split(const FeatureMatrix &x, std::span<const double> grad,
                           std::span<const double> hess,
                           std::span<const std::size_t> rows, double l2_lambda,
                           double min_child_weight) {
  SplitChoice best;
  if (rows.size() < 2)
    return best;
  double grad_total = 0.0;
  double hess_total = 0.0;
  for (std::size_t r : rows) {
    grad_total += grad[r];
    hess_total += hess[r];
  }
  std::vector<std::size_t> order(rows.begin(), rows.end());
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return x(static_cast<Eigen::Index>(a), f) < x(static_cast<Eigen::Index>(b), f);
    });
    double grad_left = 0.0;
    double hess_left = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      grad_left += grad[order[k]];
      hess_left += hess[order[k]];
      const double lo = x(static_cast<Eigen::Index>(order[k]), f);
      const double hi = x(static_cast<Eigen::Index>(order[k + 1]), f);
      if (!(hi > lo))
        continue;
      const double hess_right = hess_total - hess_left;
      if (hess_left < min_child_weight || hess_right < min_child_weight)
        continue;
      const double gain = gbt_split_gain(grad_left, hess_left, grad_total - grad_left,
                                         hess_right, l2_lambda);
      if (!best.found() || beats(gain, best.gain)) {
        best.feature = static_cast<int>(f);
        best.threshold = midpoint(lo, hi);
        best.gain = gain;
      }
    }
  }
  return best;
}

double GbtModel::margin(std::span<const double> x) const {
  double total = base_margin;
  for (const auto &tree : trees)
    total += tree.predict(x);
  return total;
}

double GbtModel::predict_proba(std::span<const double> x) const {
  return sigmoid(margin(x));
}

GbtModel train_gbt(const FeatureMatrix &x, std::span<const int> y, const GbtHyper &hyper) {
  check_training_inputs(x, y);
  if (!(hyper.base_score > 0.0 && hyper.base_score < 1.0))
    throw TrainingError("base_score must lie strictly between 0 and 1");
  if (hyper.max_depth < 0 || hyper.l2_lambda < 0.0 || hyper.eta <= 0.0)
    throw TrainingError("invalid gradient boosting hyperparameters");

  const std::size_t n = y.size();
  GbtModel model;
  model.base_margin = std::log(hyper.base_score / (1.0 - hyper.base_score));
  std::vector<double> margins(n, model.base_margin);
  std::vector<double> probs(n);
  std::vector<double> grad(n);
  std::vector<double> hess(n);

  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      probs[i] = sigmoid(margins[i]);
      grad[i] = probs[i] - y[i];
      hess[i] = probs[i] * (1.0 - probs[i]);
    }
    model.round_loss.push_back(log_loss(probs, y));
  };
  refresh();

  for (std::size_t round = 0; round < hyper.n_rounds; ++round) {
    Tree tree = grow_tree(x, grad, hess, hyper);
    if (tree.nodes.size() == 1)
      break;
    for (std::size_t i = 0; i < n; ++i)
      margins[i] += tree.predict(row_span(x, static_cast<Eigen::Index>(i)));
    model.trees.push_back(std::move(tree));
    refresh();
  }
  return model;
}

} // namespace satriage::learners
