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

#include "satriage/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::corpus {
namespace {

constexpr std::size_t kMinStratifiedRecords = 5;

std::vector<std::size_t> distribute(const std::vector<std::size_t> &class_sizes,
                                    double ratio, std::size_t target, bool both_sides) {
  std::vector<std::size_t> lo(class_sizes.size());
  std::vector<std::size_t> hi(class_sizes.size());
  std::vector<std::size_t> counts(class_sizes.size());
  std::vector<double> remainder(class_sizes.size());
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    const std::size_t n = class_sizes[c];
    lo[c] = n == 0 ? 0 : 1;
    hi[c] = both_sides && n >= 2 ? n - 1 : n;
    const double exact = ratio * static_cast<double>(n);
    counts[c] = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(exact)), lo[c], hi[c]);
    remainder[c] = exact - std::floor(exact);
  }

  // Largest remainder first; the higher label wins ties.
  std::vector<std::size_t> order(class_sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (remainder[a] != remainder[b])
      return remainder[a] > remainder[b];
    return a > b;
  });
  std::size_t assigned = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  bool moved = true;
  while (assigned < target && moved) {
    moved = false;
    for (std::size_t c : order) {
      if (assigned >= target)
        break;
      if (counts[c] < hi[c]) {
        ++counts[c];
        ++assigned;
        moved = true;
      }
    }
  }
  moved = true;
  while (assigned > target && moved) {
    moved = false;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (assigned <= target)
        break;
      if (counts[*it] > lo[*it]) {
        --counts[*it];
        --assigned;
        moved = true;
      }
    }
  }
  return counts;
}

} // namespace

std::vector<std::size_t>
stratified_train_counts(const std::vector<std::size_t> &class_sizes,
                        double ratio) {
  const std::size_t total =
      std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0});
  const auto target =
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(total)));
  auto counts = distribute(class_sizes, ratio, target, total >= kMinStratifiedRecords);
  if (std::accumulate(counts.begin(), counts.end(), std::size_t{0}) != target)
    counts = distribute(class_sizes, ratio, target, false);
  return counts;
}

SplitOutcome stratified_split(CweDataset dataset, double ratio,
                              std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error("split ratio must lie strictly between 0 and 1");
  if (dataset.records.size() < 2)
    throw Error("dataset " + dataset.cwe + " needs at least 2 records to split");

  SplitOutcome outcome;
  std::vector<std::vector<std::size_t>> by_label(2);
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const auto &record = dataset.records[i];
    if (!record.label)
      throw Error("record " + record.id + " is unlabeled");
    by_label[static_cast<std::size_t>(*record.label)].push_back(i);
  }

  const auto counts =
      stratified_train_counts({by_label[0].size(), by_label[1].size()}, ratio);

  Rng rng(seed);
  dataset.split.clear();
  for (std::size_t label = 0; label < 2; ++label) {
    auto &members = by_label[label];
    if (members.size() == 1)
      outcome.warnings.push_back(dataset.cwe + ": label " +
                                 std::to_string(label) +
                                 " has a single record; placed in train");
    rng.shuffle(members);
    for (std::size_t k = 0; k < members.size(); ++k)
      dataset.split[dataset.records[members[k]].id] =
          k < counts[label] ? Split::train : Split::val;
  }
  outcome.dataset = std::move(dataset);
  return outcome;
}

} // namespace satriage::corpus
