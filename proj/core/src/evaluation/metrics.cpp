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

#include "satriage/evaluation/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "satriage/common/error.hpp"

namespace satriage::evaluation {
namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

} // namespace

MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn,
                                  std::size_t fn) {
  MetricsReport r;
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  const double dtp = static_cast<double>(tp);
  const double p = ratio(dtp, dtp + static_cast<double>(fp));
  const double rec = ratio(dtp, dtp + static_cast<double>(fn));
  r.precision = 100.0 * p;
  r.recall = 100.0 * rec;
  r.f1 = 100.0 * ratio(2.0 * p * rec, p + rec);
  r.accuracy = 100.0 * ratio(dtp + static_cast<double>(tn),
                             static_cast<double>(tp + fp + tn + fn));
  return r;
}

MetricsReport compute_metrics(std::span<const int> labels, std::span<const int> predicted,
                              std::span<const double> scores) {
  if (labels.size() != predicted.size() || labels.size() != scores.size())
    throw Error("labels, predictions and scores differ in length");
  if (labels.empty())
    throw Error("no samples to evaluate");
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  bool seen[2] = {false, false};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool actual = labels[i] != 0;
    const bool guess = predicted[i] != 0;
    seen[actual] = true;
    if (actual && guess)
      ++tp;
    else if (!actual && guess)
      ++fp;
    else if (!actual)
      ++tn;
    else
      ++fn;
  }
  MetricsReport r = metrics_from_counts(tp, fp, tn, fn);
  if (seen[0] && seen[1]) {
    r.has_auroc = true;
    r.auroc = 100.0 * auroc(labels, scores);
  }
  return r;
}

double auroc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size())
    throw Error("labels and scores differ in length");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Mann-Whitney U with mid-ranks for ties.
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]])
      ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        positive_rank_sum += mid_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0)
    throw Error("AUROC undefined");
  const double np = static_cast<double>(positives);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(negatives));
}

double f1_score(std::span<const int> labels, std::span<const int> predicted) {
  if (labels.size() != predicted.size())
    throw Error("labels and predictions differ in length");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predicted[i] != 0)
      (labels[i] != 0 ? tp : fp)++;
    else if (labels[i] != 0)
      ++fn;
  }
  return metrics_from_counts(tp, fp, 0, fn).f1 / 100.0;
}

Json to_json(const MetricsReport &r) {
  Json out = {{"cwe", r.cwe},           {"accuracy", r.accuracy}, {"precision", r.precision},
              {"recall", r.recall},     {"f1", r.f1},             {"tp", r.tp},
              {"fp", r.fp},             {"tn", r.tn},             {"fn", r.fn}};
  out["auroc"] = r.has_auroc ? Json(r.auroc) : Json(nullptr);
  return out;
}

} // namespace satriage::evaluation
