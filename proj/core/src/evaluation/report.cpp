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

#include "satriage/evaluation/report.hpp"

#include <cstdio>
#include <sstream>

#include "satriage/common/error.hpp"

namespace satriage::evaluation {
namespace {

std::string pad(const std::string &text, std::size_t width) {
  return text.size() >= width ? text : std::string(width - text.size(), ' ') + text;
}

} // namespace

SummaryReport summary_report(const std::vector<MetricsReport> &reports) {
  if (reports.empty())
    throw Error("no reports to summarize");
  SummaryReport s;
  s.count = reports.size();
  std::size_t with_auroc = 0;
  for (const auto &r : reports) {
    s.accuracy += r.accuracy;
    s.precision += r.precision;
    s.recall += r.recall;
    s.f1 += r.f1;
    if (r.has_auroc) {
      s.auroc += r.auroc;
      ++with_auroc;
    }
  }
  const double n = static_cast<double>(reports.size());
  s.accuracy /= n;
  s.precision /= n;
  s.recall /= n;
  s.f1 /= n;
  if (with_auroc > 0) {
    s.has_auroc = true;
    s.auroc /= static_cast<double>(with_auroc);
  }
  return s;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string render_text(const std::vector<MetricsReport> &reports) {
  std::ostringstream out;
  constexpr std::size_t kName = 10;
  constexpr std::size_t kCol = 10;
  out << std::string(kName - 3, ' ') << "CWE";
  for (const char *h : {"Accuracy", "Precision", "Recall", "F1", "AUROC"})
    out << pad(h, kCol);
  out << '\n';
  auto row = [&](const std::string &name, double acc, double prec, double rec, double f1,
                 bool has_auroc, double auroc, int decimals) {
    out << pad(name, kName);
    for (double v : {acc, prec, rec, f1})
      out << pad(format_fixed(v, decimals), kCol);
    out << pad(has_auroc ? format_fixed(auroc, decimals) : "-", kCol) << '\n';
  };
  for (const auto &r : reports)
    row(r.cwe, r.accuracy, r.precision, r.recall, r.f1, r.has_auroc, r.auroc, 2);
  if (!reports.empty()) {
    const auto s = summary_report(reports);
    row("mean", s.accuracy, s.precision, s.recall, s.f1, s.has_auroc, s.auroc, 3);
  }
  return out.str();
}

Json render_json(const std::vector<MetricsReport> &reports) {
  Json rows = Json::array();
  for (const auto &r : reports)
    rows.push_back(to_json(r));
  Json out = {{"reports", std::move(rows)}};
  if (!reports.empty()) {
    const auto s = summary_report(reports);
    out["mean"] = {{"accuracy", s.accuracy}, {"precision", s.precision}, {"recall", s.recall},
                   {"f1", s.f1}, {"auroc", s.has_auroc ? Json(s.auroc) : Json(nullptr)}};
  }
  return out;
}

} // namespace satriage::evaluation
