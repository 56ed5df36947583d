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

#include <string>
#include <vector>

#include "satriage/evaluation/metrics.hpp"

namespace satriage::evaluation {

/// Unweighted column means over per-CWE reports.
struct SummaryReport {
  std::size_t count = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Mean over the reports that carry an AUROC.
  bool has_auroc = false;
  double auroc = 0.0;
};

/// Throws Error on an empty list.
SummaryReport summary_report(const std::vector<MetricsReport> &reports);

/// Fixed-point rendering, e.g. format_fixed(82.725, 3) == "82.725".
std::string format_fixed(double value, int decimals);

/// Aligned columns: per-CWE rows with 2 decimals, then a mean row with 3.
std::string render_text(const std::vector<MetricsReport> &reports);
Json render_json(const std::vector<MetricsReport> &reports);

} // namespace satriage::evaluation
