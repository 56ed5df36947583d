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
#include <optional>
#include <string>
#include <vector>

#include "satriage/corpus/records.hpp"
#include "satriage/evaluation/grid.hpp"
#include "satriage/evaluation/metrics.hpp"
#include "satriage/service/pipeline.hpp"
#include "satriage/workflow/bands.hpp"

// Operations behind the command-line subcommands, usable without a process.
namespace satriage::service {

struct IngestSummary {
  std::vector<corpus::CountsRow> counts;
  std::vector<std::string> warnings;
};

/// Reads a corpus file, splits each CWE 80:20 and writes the data directory.
IngestSummary run_ingest(const std::filesystem::path &input, const std::filesystem::path &data_dir,
                         std::uint64_t seed);

struct PretrainSummary {
  std::vector<double> epoch_loss;
  double tag_accuracy = 0.0;
  std::size_t skipped = 0;
  std::size_t tokens = 0;
  std::size_t paths = 0;
  std::size_t tags = 0;
};

PretrainSummary run_pretrain(const std::filesystem::path &data_dir, std::uint64_t seed,
                             std::size_t epochs = 30, double learning_rate = 0.01);

struct TrainSummary {
  std::string cwe;
  int version = 0;
  evaluation::MetricsReport report;
};

/// Trains "all" or one CWE. A model identical to the live one keeps its
/// version and timestamp, so repeated runs leave the registry unchanged.
std::vector<TrainSummary> run_train(const std::filesystem::path &data_dir, const std::string &cwe,
                                    std::uint64_t seed);

struct TuneOptions {
  /// "gbt", "forest", "net" or "all".
  std::string learner = "all";
  std::uint64_t seed = 42;
  /// Tune the three learners together by ensemble F1 over the Cartesian
  /// product of the per-learner candidates given below.
  bool joint = false;
  std::vector<learners::GbtHyper> joint_gbt;
  std::vector<learners::ForestHyper> joint_forest;
  std::vector<learners::NetHyper> joint_net;
};

struct TuneSummary {
  std::vector<evaluation::GridResult> grids;
  std::optional<evaluation::JointResult> joint;
  learners::HyperTriple chosen;
};

/// Grid-searches on the CWE's train/validation split and stores the best
/// hypers in hypers.json.
TuneSummary run_tune(const std::filesystem::path &data_dir, const std::string &cwe,
                     const TuneOptions &options);

/// Scores every record of `input`, fitting bands per CWE over the input's
/// scores. Writes one JSONL row per record, in input order.
std::size_t run_score(const std::filesystem::path &data_dir, const std::filesystem::path &input,
                      const std::filesystem::path &output);

std::vector<evaluation::MetricsReport> run_eval(const std::filesystem::path &data_dir,
                                                const std::string &cwe);

struct BandsSummary {
  workflow::BandThresholds thresholds;
  std::map<std::string, std::size_t> counts;
};

BandsSummary run_bands(const std::filesystem::path &data_dir, const std::string &cwe);

struct FeedbackSummary {
  std::string cwe;
  std::size_t staged = 0;
  bool retrain_due = false;
};

FeedbackSummary run_feedback(const std::filesystem::path &data_dir, const std::string &id,
                             const std::string &verdict, const std::string &user,
                             std::size_t threshold = 50);

} // namespace satriage::service
