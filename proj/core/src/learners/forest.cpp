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

#include "satriage/learners/forest.hpp"

#include <algorithm>
#include <cmath>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::learners {
namespace {

struct GiniSplit {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

class TreeBuilder {
public:
  TreeBuilder(const FeatureMatrix &x, std::span<const int> y, const ForestHyper &hyper,
              Rng &rng)
      : x_(x), y_(y), hyper_(hyper), rng_(rng),
        n_features_(static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(x.cols()))))) {}

  Tree build(std::vector<std::size_t> rows) {
    tree_.nodes.clear();
    tree_.nodes.emplace_back();
    grow(0, 0, rows);
    return std::move(tree_);
  }

private:
  void grow(int index, int depth, std::vector<std::size_t> &rows) {
    std::size_t positives = 0;
    for (std::size_t r : rows)
      positives += static_cast<std::size_t>(y_[r]);
    const double parent = gini_impurity(positives, rows.size());
    const double fraction =
        static_cast<double>(positives) / static_cast<double>(rows.size());
    tree_.nodes[static_cast<std::size_t>(index)].value = fraction;
    if (parent == 0.0 || depth >= hyper_.max_depth || rows.size() < hyper_.min_samples_split)
      return;

    const auto split = best_split(rows, positives, parent);
    if (split.feature < 0)
      return;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) {
      if (x_(static_cast<Eigen::Index>(r), split.feature) < split.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int left = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const int right = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    TreeNode &node = tree_.nodes[static_cast<std::size_t>(index)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    grow(left, depth + 1, left_rows);
    grow(right, depth + 1, right_rows);
  }

  GiniSplit best_split(const std::vector<std::size_t> &rows, std::size_t positives,
                       double parent) {
    GiniSplit best;
    best.impurity = parent;
    const auto features =
        rng_.sample_without_replacement(static_cast<std::size_t>(x_.cols()), n_features_);
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(rows);
    for (std::size_t f : features) {
      const auto col = static_cast<Eigen::Index>(f);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x_(static_cast<Eigen::Index>(a), col) < x_(static_cast<Eigen::Index>(b), col);
      });
      std::size_t left_pos = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_pos += static_cast<std::size_t>(y_[order[k]]);
        const double lo = x_(static_cast<Eigen::Index>(order[k]), col);
        const double hi = x_(static_cast<Eigen::Index>(order[k + 1]), col);
        if (!(hi > lo))
          continue;
        const std::size_t left_n = k + 1;
        const double weighted =
            (static_cast<double>(left_n) * gini_impurity(left_pos, left_n) +
             static_cast<double>(n - left_n) *
                 gini_impurity(positives - left_pos, n - left_n)) /
            static_cast<double>(n);
        if (weighted < best.impurity - 1e-12) {
          best.feature = static_cast<int>(f);
          best.threshold = midpoint(lo, hi);
          best.impurity = weighted;
        }
      }
    }
    return best;
  }

  const FeatureMatrix &x_;
  std::span<const int> y_;
  const ForestHyper &hyper_;
  Rng &rng_;
  std::size_t n_features_;
  Tree tree_;
};

} // namespace

double gini_impurity(std::size_t positives, std::size_t count) {
  if (count == 0)
    return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(count);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

double ForestModel::predict_proba(std::span<const double> x) const {
  if (trees.empty())
    return 0.5;
  double total = 0.0;
  for (const auto &tree : trees)
    total += tree.predict(x);
  return std::clamp(total / static_cast<double>(trees.size()), 0.0, 1.0);
}

ForestModel train_forest(const FeatureMatrix &x, std::span<const int> y,
                         const ForestHyper &hyper, std::uint64_t seed) {
  check_training_inputs(x, y);
  if (hyper.n_estimators == 0 || hyper.max_depth < 0)
    throw TrainingError("invalid random forest hyperparameters");
  Rng rng(seed);
  TreeBuilder builder(x, y, hyper, rng);
  const std::size_t n = y.size();
  ForestModel model;
  model.trees.reserve(hyper.n_estimators);
  for (std::size_t t = 0; t < hyper.n_estimators; ++t) {
    std::vector<std::size_t> rows(n);
    for (auto &r : rows)
      r = rng.below(n);
    model.trees.push_back(builder.build(std::move(rows)));
  }
  return model;
}

} // namespace satriage::learners
