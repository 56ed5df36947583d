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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "satriage/corpus/ingest.hpp"
#include "satriage/embedder/model.hpp"
#include "satriage/embedder/pretrain.hpp"
#include "satriage/ensemble/ensemble.hpp"
#include "satriage/ensemble/registry.hpp"
#include "satriage/evaluation/metrics.hpp"
#include "satriage/learners/hyper.hpp"
#include "satriage/workflow/bands.hpp"

namespace satriage::service {

using ensemble::LabeledMatrix;

/// File layout of a data directory.
struct DataPaths {
  std::filesystem::path root;

  std::filesystem::path labeled() const { return root / "labeled.jsonl"; }
  std::filesystem::path open() const { return root / "open.jsonl"; }
  std::filesystem::path embedder() const { return root / "embedder.json"; }
  std::filesystem::path registry() const { return root / "registry.json"; }
  std::filesystem::path feedback() const { return root / "feedback.jsonl"; }
  std::filesystem::path hypers() const { return root / "hypers.json"; }
};

inline constexpr double kTrainRatio = 0.8;

/// Splits every dataset that has no split yet, with a per-CWE seed.
/// Returns the split warnings.
std::vector<std::string> ensure_splits(corpus::Corpus &corpus, std::uint64_t seed);

/// Seed for one CWE, independent of which other CWEs are processed.
std::uint64_t cwe_seed(std::uint64_t master, const std::string &cwe);

struct EmbedderBuildOptions {
  embedder::EmbedderDims dims;
  embedder::PretrainOptions pretrain;
  frontend::ExtractionCaps caps;
  std::size_t min_count = 1;
};

struct EmbedderBuild {
  embedder::EmbedderModel model;
  std::vector<double> epoch_loss;
  double tag_accuracy = 0.0;
  /// Records whose source failed to parse.
  std::size_t skipped = 0;
};

/// Builds the vocabulary from every parsable record in the corpus (labeled
/// and open) and pretrains on function-name tags.
EmbedderBuild build_embedder(const corpus::Corpus &corpus, const EmbedderBuildOptions &options);

/// Embeds records in order. Sources that fail to parse or yield no contexts
/// embed to the zero vector; their ids are appended to `unembeddable`.
LabeledMatrix embed_records(const embedder::EmbedderModel &model,
                            const std::vector<const corpus::WarningRecord *> &records,
                            std::vector<std::string> *unembeddable = nullptr);

struct SplitMatrices {
  LabeledMatrix train;
  LabeledMatrix val;
};

SplitMatrices embed_dataset(const embedder::EmbedderModel &model,
                            const corpus::CweDataset &dataset);

/// Tuned hypers per CWE (hypers.json); missing CWEs get the defaults.
std::map<std::string, learners::HyperTriple> load_hypers(const std::filesystem::path &path);
void save_hypers(const std::map<std::string, learners::HyperTriple> &hypers,
                 const std::filesystem::path &path);
learners::HyperTriple hypers_for(const std::map<std::string, learners::HyperTriple> &hypers,
                                 const std::string &cwe);

/// Validation-split metrics of an ensemble.
evaluation::MetricsReport evaluate_ensemble(const ensemble::EnsembleModel &model,
                                            const LabeledMatrix &val);

struct ScoredWarning {
  corpus::WarningRecord record;
  ensemble::Prediction prediction;
  workflow::Band band = workflow::Band::low;
};

struct ScoredPool {
  workflow::BandThresholds thresholds;
  std::vector<ScoredWarning> items;
};

/// Scores the records with the ensemble and fits bands over their scores.
ScoredPool score_records(const embedder::EmbedderModel &embedder,
                         const ensemble::EnsembleModel &model,
                         const std::vector<const corpus::WarningRecord *> &records);

/// Open-pool records of one CWE.
std::vector<const corpus::WarningRecord *> open_records(const corpus::Corpus &corpus,
                                                        const std::string &cwe);

/// Seconds since the epoch taken from SOURCE_DATE_EPOCH, or 0 when unset,
/// so repeated runs stamp identical registry bytes.
std::int64_t reproducible_epoch();

} // namespace satriage::service
