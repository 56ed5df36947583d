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
#include <string>
#include <vector>

#include "satriage/ensemble/ensemble.hpp"
#include "satriage/learners/hyper.hpp"

namespace satriage::evaluation {

using ensemble::LabeledMatrix;
using learners::LearnerKind;

/// Full grids in listing order (first field outermost). Fields outside the
/// grid are copied from `base`.
std::vector<learners::GbtHyper> gbt_grid(const learners::GbtHyper &base = {});
std::vector<learners::ForestHyper> forest_grid(const learners::ForestHyper &base = {});
std::vector<learners::NetHyper> net_grid(const learners::NetHyper &base = {});

struct GridRow {
  Json hyper;
  /// Validation F1 in [0, 1]; -1 when the combo failed to train.
  double f1 = -1.0;
  std::string error;
};

struct GridResult {
  LearnerKind kind = LearnerKind::gbt;
  std::vector<GridRow> table;
  std::size_t best = 0;

  const GridRow &best_row() const { return table.at(best); }
};

/// Trains one `kind` learner per combo on `train` with a shared seed and
/// keeps the highest validation F1 (earliest combo on ties). Throws when
/// every combo fails or `val` lacks a class.
GridResult grid_search(LearnerKind kind, const learners::HyperTriple &base,
                       const LabeledMatrix &train, const LabeledMatrix &val,
                       std::uint64_t seed);

/// Overload over an explicit list of combos for `kind` (as JSON hypers).
GridResult grid_search(LearnerKind kind, const std::vector<learners::HyperTriple> &combos,
                       const LabeledMatrix &train, const LabeledMatrix &val,
                       std::uint64_t seed);

/// Joint tuning: every triple is trained as a full ensemble and scored by
/// ensemble validation F1. Meant for small candidate lists.
struct JointResult {
  std::vector<learners::HyperTriple> combos;
  std::vector<GridRow> table;
  std::size_t best = 0;
};

JointResult joint_grid_search(const std::vector<learners::HyperTriple> &combos,
                              const LabeledMatrix &train, const LabeledMatrix &val,
                              std::uint64_t seed);

/// Cartesian product of per-learner candidate lists, gbt outermost.
std::vector<learners::HyperTriple>
cartesian_triples(const std::vector<learners::GbtHyper> &gbt,
                  const std::vector<learners::ForestHyper> &forest,
                  const std::vector<learners::NetHyper> &net);

Json to_json(const GridResult &result);

} // namespace satriage::evaluation
