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

#include <span>
#include <vector>

#include "satriage/learners/data.hpp"
#include "satriage/learners/hyper.hpp"
#include "satriage/learners/tree.hpp"

namespace satriage::learners {

/// -G / (H + lambda). Throws when H + lambda is zero.
double gbt_leaf_weight(double grad_sum, double hess_sum, double l2_lambda);

/// 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)].
double gbt_split_gain(double grad_left, double hess_left, double grad_right,
                      double hess_right, double l2_lambda);

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;

  bool found() const { return feature >= 0; }
};

/// Relative slack used when comparing candidate gains; earlier candidates
/// (lower feature, then lower threshold) win anything within it.
inline constexpr double kGainTieTolerance = 1e-12;

/// Exact greedy search over every feature and every midpoint between
/// consecutive distinct values of `rows`. Candidates whose child hessian
/// sums fall below min_child_weight are skipped; the best remaining
/// candidate is returned whatever the sign of its gain.
SplitChoice best_gbt_split(const FeatureMatrix &x, std::span<const double> grad,
                           std::span<const double> hess,
                           std::span<const std::size_t> rows, double l2_lambda,
                           double min_child_weight);

struct GbtModel {
  double base_margin = 0.0;
  /// Leaf values already include the shrinkage factor.
  std::vector<Tree> trees;
  /// Training logistic loss after each round (index 0 is the base score).
  std::vector<double> round_loss;

  double margin(std::span<const double> x) const;
  double predict_proba(std::span<const double> x) const;
};

/// Boosting on logistic loss. Each round grows one tree level by level
/// with best_gbt_split; a node at depth max_depth is not split. When the
/// root admits no split, boosting stops (the model keeps what it has, so a
/// first-round stop leaves an intercept-only model at base_score).
GbtModel train_gbt(const FeatureMatrix &x, std::span<const int> y, const GbtHyper &hyper);

} // namespace satriage::learners
