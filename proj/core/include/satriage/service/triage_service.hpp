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

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "satriage/common/error.hpp"
#include "satriage/ensemble/registry.hpp"
#include "satriage/evaluation/metrics.hpp"
#include "satriage/service/config.hpp"
#include "satriage/service/pipeline.hpp"
#include "satriage/workflow/feedback.hpp"

namespace satriage::service {

/// A state change that conflicts with the current state (HTTP 409).
class ConflictError : public Error {
public:
  using Error::Error;
};

/// Invalid request content (HTTP 400).
class BadRequestError : public Error {
public:
  using Error::Error;
};

struct TriageItem {
  std::string warning_id;
  std::string cwe;
  std::string file_path;
  int line = 0;
  workflow::Band band = workflow::Band::low;
  double score = 0.0;
  std::array<double, ensemble::kMembers> member_probs{};
  int final_label = 0;
  /// "none", "true_positive" or "false_positive".
  std::string verdict_status = "none";
  bool disagreement = false;
  int model_version = 0;
};

struct ContextView {
  std::string left;
  std::string path;
  std::string right;
  int left_line = 0;
  int left_column = 0;
  int right_line = 0;
  int right_column = 0;
  double weight = 0.0;
};

struct WarningDetail {
  TriageItem item;
  std::string source;
  std::string checker;
  std::vector<ContextView> contexts;
};

struct WarningPage {
  std::size_t total = 0;
  std::vector<TriageItem> items;
};

struct CweSummary {
  std::string cwe;
  int version = 0;
  std::string trained_at;
  std::size_t open = 0;
  std::size_t staged = 0;
  std::map<std::string, std::size_t> bands;
  workflow::BandThresholds thresholds;
};

struct VerdictAck {
  std::string warning_id;
  std::string cwe;
  std::size_t staged = 0;
  bool retrain_triggered = false;
  bool duplicate = false;
};

struct CweMetrics {
  evaluation::MetricsReport report;
  int version = 0;
  std::map<std::string, std::size_t> bands;
  workflow::BandThresholds thresholds;
};

/// Triage state over a data directory. Reads are served from an immutable
/// snapshot that retrains replace atomically; verdict writes are
/// serialized and retrains are serialized per CWE.
class TriageService {
public:
  /// Loads corpus, embedder, registry and feedback log from
  /// config.data_dir and scores the open pool of every trained CWE.
  explicit TriageService(ServiceConfig config);
  ~TriageService();

  TriageService(const TriageService &) = delete;
  TriageService &operator=(const TriageService &) = delete;

  std::vector<CweSummary> list_cwes() const;

  /// Ordered by band (high first), score descending, then id. Throws
  /// NotFoundError for an unknown CWE.
  WarningPage list_warnings(const std::optional<std::string> &cwe,
                            const std::optional<workflow::Band> &band, std::size_t offset,
                            std::size_t limit) const;

  /// Includes up to `top_k` contexts by descending attention weight.
  WarningDetail get_warning(const std::string &id, std::size_t top_k = 5) const;

  /// Records a verdict; a repeat of the user's current verdict is a no-op.
  /// When the staged count reaches the threshold and auto-retrain is on, a
  /// background retrain starts.
  VerdictAck post_verdict(const std::string &id, const std::string &verdict,
                          const std::string &user);

  /// Retrains with staged labels merged into the train split; returns the
  /// new version. ConflictError("nothing staged") when there is nothing to
  /// merge.
  int retrain(const std::string &cwe);

  CweMetrics metrics(const std::string &cwe) const;

  /// Blocks until no background retrain is running.
  void wait_idle();

  /// Message of the last failed background retrain for `cwe`, if any.
  std::optional<std::string> last_retrain_error(const std::string &cwe) const;

  const ServiceConfig &config() const { return config_; }

private:
  struct CweState {
    std::shared_ptr<const ensemble::EnsembleModel> model;
    ScoredPool pool;
    evaluation::MetricsReport report;
  };
  struct Snapshot {
    corpus::Corpus corpus;
    ensemble::Registry registry;
    std::map<std::string, CweState> cwes;
  };

  std::shared_ptr<const Snapshot> snapshot() const;
  void publish(std::shared_ptr<const Snapshot> next);
  CweState build_state(const corpus::Corpus &corpus, const ensemble::EnsembleModel &model) const;
  TriageItem make_item(const ScoredWarning &scored, int version) const;
  std::mutex &retrain_mutex(const std::string &cwe);
  void launch_retrain(const std::string &cwe);

  ServiceConfig config_;
  DataPaths paths_;
  std::shared_ptr<const embedder::EmbedderModel> embedder_;

  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;

  /// Guards the feedback store and on-disk writes.
  mutable std::mutex writer_mutex_;
  workflow::FeedbackStore feedback_;

  std::mutex retrain_map_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> retrain_mutexes_;

  mutable std::mutex worker_mutex_;
  std::condition_variable worker_cv_;
  std::set<std::string> running_;
  std::vector<std::thread> workers_;
  std::map<std::string, std::string> retrain_errors_;
};

} // namespace satriage::service
