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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "reference_tables.hpp"
#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"
#include "satriage/evaluation/grid.hpp"
#include "satriage/evaluation/metrics.hpp"
#include "satriage/evaluation/report.hpp"

using namespace satriage;
using namespace satriage::evaluation;

namespace {

LabeledMatrix blobs(std::size_t n, double gap, std::uint64_t seed) {
  Rng rng(seed);
  LabeledMatrix m;
  m.x.resize(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    m.y.push_back(label);
    m.ids.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < 3; ++j)
      m.x(static_cast<Eigen::Index>(i), j) = rng.normal() + (label ? gap : -gap);
  }
  return m;
}

double pairwise_auroc(const std::vector<int> &labels, const std::vector<double> &scores) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (labels[i] == 1 && labels[j] == 0) {
        pairs += 1.0;
        wins += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
      }
  return wins / pairs;
}

} // namespace

TEST(Metrics, FromCounts) {
  const auto r = metrics_from_counts(8, 2, 6, 4);
  EXPECT_DOUBLE_EQ(r.precision, 80.0);
  EXPECT_NEAR(r.recall, 200.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.accuracy, 70.0);
  EXPECT_NEAR(r.f1, 2 * 80.0 * (200.0 / 3.0) / (80.0 + 200.0 / 3.0), 1e-9);
  const auto empty = metrics_from_counts(0, 0, 5, 0);
  EXPECT_DOUBLE_EQ(empty.precision, 0.0);
  EXPECT_DOUBLE_EQ(empty.f1, 0.0);
}

TEST(Metrics, F1FromReportedPrecisionRecall) {
  // tp = a*b, fp = b*(10000-a), fn = a*(10000-b) realizes precision a/100 and recall b/100.
  const std::size_t a = 8517;
  const std::size_t b = 9325;
  const auto r = metrics_from_counts(a * b, b * (10000 - a), 0, a * (10000 - b));
  EXPECT_NEAR(r.precision, 85.17, 1e-9);
  EXPECT_NEAR(r.recall, 93.25, 1e-9);
  EXPECT_NEAR(r.f1, 89.02, 0.01);
}

TEST(Metrics, ReportedTableIsInternallyConsistent) {
  double f1 = 0.0;
  double recall = 0.0;
  double auroc = 0.0;
  for (const auto &row : oracle::kResultTable) {
    const double harmonic = 2.0 * row.precision * row.recall / (row.precision + row.recall);
    EXPECT_NEAR(harmonic, row.f1, 0.02) << row.cwe;
    f1 += row.f1;
    recall += row.recall;
    auroc += row.auroc;
  }
  EXPECT_NEAR(f1 / 10.0, oracle::kReportedF1Mean, 1e-9);
  EXPECT_NEAR(recall / 10.0, oracle::kReportedRecallMean, 1e-9);
  EXPECT_NEAR(auroc / 10.0, oracle::kReportedAurocMean, 1e-9);
}

TEST(Metrics, ComputeMetricsCounts) {
  const std::vector<int> labels{1, 1, 0, 0, 1};
  const std::vector<int> predicted{1, 0, 0, 1, 1};
  const std::vector<double> scores{0.9, 0.4, 0.2, 0.7, 0.8};
  const auto r = compute_metrics(labels, predicted, scores);
  EXPECT_EQ(r.tp, 2u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_EQ(r.tn, 1u);
  EXPECT_EQ(r.fp, 1u);
  ASSERT_TRUE(r.has_auroc);
  EXPECT_NEAR(r.auroc, 100.0 * 5.0 / 6.0, 1e-9);

  const std::vector<int> one_class{1, 1};
  const std::vector<int> p2{1, 0};
  const std::vector<double> s2{0.3, 0.2};
  EXPECT_FALSE(compute_metrics(one_class, p2, s2).has_auroc);
  EXPECT_THROW(compute_metrics(labels, p2, s2), Error);
}

TEST(Auroc, Examples) {
  const std::vector<int> labels{1, 0, 1, 0};
  const std::vector<double> scores{0.9, 0.8, 0.7, 0.1};
  EXPECT_DOUBLE_EQ(auroc(labels, scores), 0.75);
  const std::vector<double> ties{0.4, 0.4, 0.4, 0.4};
  EXPECT_DOUBLE_EQ(auroc(labels, ties), 0.5);
  const std::vector<int> one{1, 1};
  const std::vector<double> s{0.1, 0.2};
  EXPECT_THROW(auroc(one, s), Error);
}

TEST(Auroc, MatchesPairwiseOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + rng.below(40);
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = i < 2 ? static_cast<int>(i) : static_cast<int>(rng.below(2));
      scores[i] = static_cast<double>(rng.below(6)) / 5.0;
    }
    EXPECT_NEAR(auroc(labels, scores), pairwise_auroc(labels, scores), 1e-12);
  }
}

TEST(F1, Fraction) {
  const std::vector<int> labels{1, 1, 0, 0};
  const std::vector<int> predicted{1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(f1_score(labels, predicted), 0.5);
  const std::vector<int> none{0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(f1_score(labels, none), 0.0);
}

TEST(Grid, SizesAndOrder) {
  const auto g = gbt_grid();
  ASSERT_EQ(g.size(), 60u);
  EXPECT_EQ(g.front().max_depth, 3);
  EXPECT_DOUBLE_EQ(g.front().min_child_weight, 1.0);
  EXPECT_DOUBLE_EQ(g.front().l2_lambda, 0.1);
  EXPECT_EQ(g.back().max_depth, 9);
  EXPECT_DOUBLE_EQ(g.back().l2_lambda, 0.5);
  EXPECT_EQ(forest_grid().size(), 27u);
  EXPECT_EQ(net_grid().size(), 108u);
  for (const auto &h : net_grid())
    EXPECT_EQ(h.max_epochs, learners::NetHyper{}.max_epochs);
}

TEST(Grid, BestIsArgmaxWithEarliestTie) {
  const auto train = blobs(40, 0.8, 1);
  const auto val = blobs(20, 0.8, 2);
  auto base = oracle::small_hypers();
  std::vector<learners::HyperTriple> combos;
  for (std::size_t trees : {1u, 3u, 5u, 8u}) {
    auto h = base;
    h.forest.n_estimators = trees;
    h.forest.max_depth = 3;
    combos.push_back(h);
  }
  const auto result = grid_search(learners::LearnerKind::forest, combos, train, val, 4);
  ASSERT_EQ(result.table.size(), combos.size());
  double best = -2.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < result.table.size(); ++i)
    if (result.table[i].f1 > best) {
      best = result.table[i].f1;
      arg = i;
    }
  EXPECT_EQ(result.best, arg);
  EXPECT_EQ(result.best_row().hyper["n_estimators"], combos[arg].forest.n_estimators);
  const auto json = to_json(result);
  EXPECT_EQ(json["table"].size(), combos.size());
}

TEST(Grid, FailingCombosAreRecorded) {
  const auto train = blobs(30, 1.0, 5);
  const auto val = blobs(10, 1.0, 6);
  auto good = oracle::small_hypers();
  auto bad = good;
  bad.gbt.base_score = 2.0;
  const auto result = grid_search(learners::LearnerKind::gbt, {bad, good}, train, val, 1);
  EXPECT_DOUBLE_EQ(result.table[0].f1, -1.0);
  EXPECT_FALSE(result.table[0].error.empty());
  EXPECT_EQ(result.best, 1u);
  EXPECT_THROW(grid_search(learners::LearnerKind::gbt, {bad}, train, val, 1), Error);
}

TEST(Grid, JointSearchCoversCartesianProduct) {
  auto base = oracle::small_hypers();
  auto g2 = base.gbt;
  g2.max_depth = 5;
  auto n2 = base.net;
  n2.units = 8;
  const auto combos = cartesian_triples({base.gbt, g2}, {base.forest}, {base.net, n2});
  ASSERT_EQ(combos.size(), 4u);
  const auto result = joint_grid_search(combos, blobs(40, 1.0, 7), blobs(16, 1.0, 8), 3);
  ASSERT_EQ(result.table.size(), 4u);
  for (const auto &row : result.table)
    EXPECT_LE(row.f1, result.table[result.best].f1);
}

TEST(Report, SummaryAndRendering) {
  std::vector<MetricsReport> reports;
  for (const auto &row : oracle::kResultTable) {
    MetricsReport r;
    r.cwe = row.cwe;
    r.accuracy = row.accuracy;
    r.precision = row.precision;
    r.recall = row.recall;
    r.f1 = row.f1;
    r.has_auroc = true;
    r.auroc = row.auroc;
    reports.push_back(r);
  }
  const auto s = summary_report(reports);
  EXPECT_NEAR(s.f1, 82.725, 1e-9);
  EXPECT_NEAR(s.recall, 83.765, 1e-9);
  EXPECT_NEAR(s.auroc, 79.295, 1e-9);
  const auto text = render_text(reports);
  EXPECT_NE(text.find("CWE-476"), std::string::npos);
  EXPECT_NE(text.find("82.725"), std::string::npos);
  EXPECT_NE(text.find("89.95"), std::string::npos);
  const auto json = render_json(reports);
  EXPECT_EQ(json["reports"].size(), 10u);
  EXPECT_NEAR(json["mean"]["f1"].get<double>(), 82.725, 1e-9);
  EXPECT_THROW(summary_report({}), Error);
  EXPECT_EQ(format_fixed(1.0 / 3.0, 3), "0.333");
}
