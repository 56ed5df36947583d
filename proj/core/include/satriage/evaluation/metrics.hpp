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

#include <cstddef>
#include <span>
#include <string>

#include "satriage/common/json_io.hpp"

namespace satriage::evaluation {

/// Percentages in [0, 100]; label 1 is the positive (true warning) class.
struct MetricsReport {
  std::string cwe;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Absent when the labels hold a single class.
  bool has_auroc = false;
  double auroc = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

/// Metrics from a confusion matrix; 0/0 ratios are 0.
MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn,
                                  std::size_t fn);

/// Throws Error on length mismatch or empty input. AUROC is filled in when
/// both classes are present.
MetricsReport compute_metrics(std::span<const int> labels, std::span<const int> predicted,
                              std::span<const double> scores);

/// Probability in [0, 1] that a random positive outscores a random
/// negative, ties counted 1/2. Throws "AUROC undefined" for a single class.
double auroc(std::span<const int> labels, std::span<const double> scores);

/// Binary F1 in [0, 1] of predicted labels; used for model selection.
double f1_score(std::span<const int> labels, std::span<const int> predicted);

Json to_json(const MetricsReport &report);

} // namespace satriage::evaluation
