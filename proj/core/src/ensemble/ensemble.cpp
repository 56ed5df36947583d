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

#include "satriage/ensemble/ensemble.hpp"

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::ensemble {
namespace {

constexpr std::array<learners::LearnerKind, kMembers> kOrder{
    learners::LearnerKind::gbt, learners::LearnerKind::forest, learners::LearnerKind::net};
constexpr std::uint64_t kMaxRedraws = 64;

bool has_both_labels(const std::vector<int> &y, const std::vector<std::size_t> &rows) {
  bool seen[2] = {false, false};
  for (std::size_t r : rows)
    seen[y[r] != 0] = true;
  return seen[0] && seen[1];
}

} // namespace

std::vector<std::size_t> bootstrap_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> rows(n);
  for (auto &r : rows)
    r = rng.below(n);
  return rows;
}

Prediction vote(const std::array<double, kMembers> &member_probs) {
  Prediction p;
  p.member_probs = member_probs;
  int positive = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < kMembers; ++i) {
    p.votes[i] = member_probs[i] >= 0.5 ? 1 : 0;
    positive += p.votes[i];
    total += member_probs[i];
  }
  p.final_label = 2 * positive > static_cast<int>(kMembers) ? 1 : 0;
  p.score = total / static_cast<double>(kMembers);
  return p;
}

EnsembleModel train_cwe_ensemble(const std::string &cwe, const LabeledMatrix &train,
                                 const LabeledMatrix &val,
                                 const learners::HyperTriple &hyper,
                                 std::uint64_t master_seed) {
  std::vector<std::size_t> all(train.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  if (train.size() < 2 || !has_both_labels(train.y, all))
    throw TrainingError("degenerate labels");

  EnsembleModel model;
  model.cwe = cwe;
  for (std::size_t m = 0; m < kMembers; ++m) {
    const std::uint64_t child = mix_seed(master_seed, m);
    std::uint64_t seed = child;
    std::vector<std::size_t> rows = bootstrap_sample(train.size(), seed);
    for (std::uint64_t attempt = 1; !has_both_labels(train.y, rows); ++attempt) {
      if (attempt > kMaxRedraws)
        throw TrainingError("degenerate labels");
      seed = mix_seed(child, attempt);
      rows = bootstrap_sample(train.size(), seed);
    }
    FeatureMatrix x(static_cast<Eigen::Index>(rows.size()), train.x.cols());
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      x.row(static_cast<Eigen::Index>(i)) = train.x.row(static_cast<Eigen::Index>(rows[i]));
      y[i] = train.y[rows[i]];
    }
    model.bootstrap_seeds[m] = seed;
    model.members[m] = learners::train_learner(kOrder[m], x, y, hyper, seed);
    if (val.size() > 0) {
      std::vector<double> probs(val.size());
      for (std::size_t i = 0; i < val.size(); ++i)
        probs[i] = model.members[m].predict_proba(
            learners::row_span(val.x, static_cast<Eigen::Index>(i)));
      model.members[m].final_loss = learners::log_loss(probs, val.y);
    }
  }
  return model;
}

Prediction predict(const EnsembleModel &model, std::span<const double> x,
                   const std::string &warning_id) {
  std::array<double, kMembers> probs{};
  for (std::size_t m = 0; m < kMembers; ++m)
    probs[m] = model.members[m].predict_proba(x);
  Prediction p = vote(probs);
  p.warning_id = warning_id;
  return p;
}

std::vector<Prediction> predict_all(const EnsembleModel &model, const LabeledMatrix &rows) {
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(rows.x.rows()); ++i)
    out.push_back(predict(model, learners::row_span(rows.x, static_cast<Eigen::Index>(i)),
                          i < rows.ids.size() ? rows.ids[i] : std::string{}));
  return out;
}

} // namespace satriage::ensemble
