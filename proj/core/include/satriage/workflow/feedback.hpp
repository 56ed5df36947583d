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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satriage/common/json_io.hpp"
#include "satriage/corpus/ingest.hpp"
#include "satriage/workflow/bands.hpp"

namespace satriage::workflow {

enum class Verdict { true_positive, false_positive };

std::string_view to_string(Verdict verdict);
Verdict parse_verdict(std::string_view text);
int label_for(Verdict verdict);

struct FeedbackEvent {
  std::string warning_id;
  std::string cwe;
  Verdict verdict = Verdict::true_positive;
  std::string user;
  std::string timestamp;
  int model_version_at_verdict = 0;

  bool operator==(const FeedbackEvent &) const = default;
};

Json to_json(const FeedbackEvent &event);
FeedbackEvent feedback_from_json(const Json &value, std::size_t line_number = 0);

/// An open warning converted into a labeled record by developer verdicts.
struct StagedLabel {
  corpus::WarningRecord record;
  Verdict verdict = Verdict::true_positive;
};

/// Append-only verdict log. Events are numbered by their position in the
/// log; a model records how many events its training consumed (its
/// cursor), and events for its CWE past that cursor are staged.
class FeedbackStore {
public:
  /// In-memory store.
  FeedbackStore() = default;
  /// Loads `log` if it exists; later appends are written through to it.
  explicit FeedbackStore(std::filesystem::path log);

  void append(const FeedbackEvent &event);

  const std::vector<FeedbackEvent> &events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// Latest verdict per (warning, user).
  std::map<std::pair<std::string, std::string>, Verdict> effective_verdicts() const;
  /// Latest verdict on a warning from any user.
  std::optional<Verdict> latest_verdict(const std::string &warning_id) const;

  /// Warning ids of `cwe` with events at positions >= cursor, mapped to the
  /// latest such verdict.
  std::map<std::string, Verdict> staged(const std::string &cwe, std::size_t cursor) const;

private:
  std::optional<std::filesystem::path> log_;
  std::vector<FeedbackEvent> events_;
};

/// Validates the warning against the open pool (unknown id -> NotFoundError)
/// and appends the event, filling in its CWE.
void record_feedback(FeedbackStore &store, FeedbackEvent event, const corpus::Corpus &corpus);

/// Staged verdicts turned into labeled records (true_positive -> 1 via
/// reported_fixed, false_positive -> 0 via dismissed).
std::vector<StagedLabel> staged_labels(const FeedbackStore &store, const std::string &cwe,
                                       std::size_t cursor, const corpus::Corpus &corpus);

struct RetrainPolicy {
  std::size_t min_new_labels = 50;
};

bool should_retrain(const FeedbackStore &store, const std::string &cwe, std::size_t cursor,
                    const RetrainPolicy &policy = {});

struct BandedPrediction {
  std::string warning_id;
  int final_label = 0;
  Band band = Band::low;
};

/// Ids whose latest verdict is false_positive while the ensemble says
/// label 1 in the high band.
std::vector<std::string> highlight_disagreements(const std::vector<BandedPrediction> &predictions,
                                                 const FeedbackStore &store);

} // namespace satriage::workflow
