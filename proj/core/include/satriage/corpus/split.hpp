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

#include "satriage/corpus/records.hpp"

namespace satriage::corpus {

struct SplitOutcome {
  CweDataset dataset;
  std::vector<std::string> warnings;
};

/// Label-stratified train/validation split.
///
/// The train side holds round(ratio * N) records overall. Each label class
/// gets floor(ratio * n_c) and the remaining seats go to the classes with the
/// largest fractional parts (positive class first on ties). Every class
/// keeps at least one train record. In datasets of five or more records a
/// class with at least two records also keeps one validation record,
/// unless that would change the train size. A singleton class goes to
/// train and produces a warning.
SplitOutcome stratified_split(CweDataset dataset, double ratio,
                              std::uint64_t seed);

/// Per-class train counts used by stratified_split, exposed for testing.
/// `class_sizes[c]` is the size of label class c.
std::vector<std::size_t> stratified_train_counts(
    const std::vector<std::size_t> &class_sizes, double ratio);

} // namespace satriage::corpus
