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

#include "satriage/evaluation/grid.hpp"

#include "satriage/common/error.hpp"
#include "satriage/evaluation/metrics.hpp"

namespace satriage::evaluation {
namespace {

using learners::HyperTriple;

void require_both_classes(const LabeledMatrix &val) {
  bool seen[2] = {false, false};
  for (int label : val.y)
    seen[label != 0] = true;
  if (!seen[0] || !seen[1])
    throw Error("validation split must contain both classes");
}

Json member_hyper(LearnerKind kind, const HyperTriple &h) {
  switch (kind) {
  case LearnerKind::gbt:
    return learners::to_json(h.gbt);
  case LearnerKind::forest:
    return learners::to_json(h.forest);
  case LearnerKind::net:
    break;
  }
  return learners::to_json(h.net);
}

std::size_t select_best(const std::vector<GridRow> &table) {
  std::size_t best = table.size();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i].error.empty())
      continue;
    if (best == table.size() || table[i].f1 > table[best].f1)
      best = i;
  }
  if (best == table.size())
    throw TrainingError("every grid combination failed to train: " + table.front().error);
  return best;
}

} // namespace

std::vector<learners::GbtHyper> gbt_grid(const learners::GbtHyper &base) {
  std::vector<learners::GbtHyper> out;
  for (int depth : learners::kGbtMaxDepthGrid)
    for (double mcw : learners::kGbtMinChildWeightGrid)
      for (double lambda : learners::kGbtL2LambdaGrid) {
        auto h = base;
        h.max_depth = depth;
        h.min_child_weight = mcw;
        h.l2_lambda = lambda;
        out.push_back(h);
      }
  return out;
}

std::vector<learners::ForestHyper> forest_grid(const learners::ForestHyper &base) {
  std::vector<learners::ForestHyper> out;
  for (std::size_t mss : learners::kForestMinSamplesSplitGrid)
    for (int depth : learners::kForestMaxDepthGrid)
      for (std::size_t trees : learners::kForestEstimatorsGrid) {
        auto h = base;
        h.min_samples_split = mss;
        h.max_depth = depth;
        h.n_estimators = trees;
        out.push_back(h);
      }
  return out;
}

std::vector<learners::NetHyper> net_grid(const learners::NetHyper &base) {
  std::vector<learners::NetHyper> out;
  for (double decay : learners::kNetDecayGrid)
    for (auto optimizer : learners::kNetOptimizerGrid)
      for (std::size_t hidden : learners::kNetHiddenGrid)
        for (std::size_t units : learners::kNetUnitsGrid) {
          auto h = base;
          h.lr_decay_factor = decay;
          h.optimizer = optimizer;
          h.n_hidden = hidden;
          h.units = units;
          out.push_back(h);
        }
  return out;
}

GridResult grid_search(LearnerKind kind, const HyperTriple &base, const LabeledMatrix &train,
                       const LabeledMatrix &val, std::uint64_t seed) {
  std::vector<HyperTriple> combos;
  auto push = [&](auto &&member, auto field) {
    for (const auto &h : member) {
      HyperTriple t = base;
      t.*field = h;
      combos.push_back(t);
    }
  };
  switch (kind) {
  case LearnerKind::gbt:
    push(gbt_grid(base.gbt), &HyperTriple::gbt);
    break;
  case LearnerKind::forest:
    push(forest_grid(base.forest), &HyperTriple::forest);
    break;
  case LearnerKind::net:
    push(net_grid(base.net), &HyperTriple::net);
    break;
  }
  return grid_search(kind, combos, train, val, seed);
}

GridResult grid_search(LearnerKind kind, const std::vector<HyperTriple> &combos,
                       const LabeledMatrix &train, const LabeledMatrix &val,
                       std::uint64_t seed) {
  if (combos.empty())
    throw Error("grid is empty");
  require_both_classes(val);
  GridResult result;
  result.kind = kind;
  for (const auto &combo : combos) {
    GridRow row;
    row.hyper = member_hyper(kind, combo);
    try {
      const auto model = learners::train_learner(kind, train.x, train.y, combo, seed);
      std::vector<int> predicted(val.size());
      for (std::size_t i = 0; i < val.size(); ++i)
        predicted[i] =
            model.predict_proba(learners::row_span(val.x, static_cast<Eigen::Index>(i))) >= 0.5;
      row.f1 = f1_score(val.y, predicted);
    } catch (const Error &e) {
      row.f1 = -1.0;
      row.error = e.what();
    }
    result.table.push_back(std::move(row));
  }
  result.best = select_best(result.table);
  return result;
}

JointResult joint_grid_search(const std::vector<HyperTriple> &combos,
                              const LabeledMatrix &train, const LabeledMatrix &val,
                              std::uint64_t seed) {
  if (combos.empty())
    throw Error("grid is empty");
  require_both_classes(val);
  JointResult result;
  result.combos = combos;
  for (const auto &combo : combos) {
    GridRow row;
    row.hyper = learners::to_json(combo);
    try {
      const auto model = ensemble::train_cwe_ensemble("", train, LabeledMatrix{}, combo, seed);
      std::vector<int> predicted;
      for (const auto &p : ensemble::predict_all(model, val))
        predicted.push_back(p.final_label);
      row.f1 = f1_score(val.y, predicted);
    } catch (const Error &e) {
      row.f1 = -1.0;
      row.error = e.what();
    }
    result.table.push_back(std::move(row));
  }
  result.best = select_best(result.table);
  return result;
}

std::vector<HyperTriple> cartesian_triples(const std::vector<learners::GbtHyper> &gbt,
                                           const std::vector<learners::ForestHyper> &forest,
                                           const std::vector<learners::NetHyper> &net) {
  std::vector<HyperTriple> out;
  for (const auto &g : gbt)
    for (const auto &f : forest)
      for (const auto &n : net)
        out.push_back({g, f, n});
  return out;
}

Json to_json(const GridResult &result) {
  Json table = Json::array();
  for (const auto &row : result.table) {
    Json item = {{"hyper", row.hyper}, {"f1", row.f1}};
    if (!row.error.empty())
      item["error"] = row.error;
    table.push_back(std::move(item));
  }
  return {{"learner", std::string(learners::to_string(result.kind))},
          {"best", result.best},
          {"best_hyper", result.best_row().hyper},
          {"best_f1", result.best_row().f1},
          {"table", std::move(table)}};
}

} // namespace satriage::evaluation
