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

#include "satriage/service/triage_service.hpp"

#include <algorithm>
#include <chrono>

#include "satriage/common/random.hpp"
#include "satriage/embedder/model_io.hpp"

namespace satriage::service {
namespace {

std::int64_t now_seconds() {
  using namespace std::chrono;
  return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

std::map<std::string, std::size_t> band_counts(const ScoredPool &pool) {
  std::map<std::string, std::size_t> out{{"high", 0}, {"medium", 0}, {"low", 0}};
  for (const auto &item : pool.items)
    ++out[std::string(workflow::to_string(item.band))];
  return out;
}

} // namespace

TriageService::TriageService(ServiceConfig config)
    : config_(std::move(config)), paths_{config_.data_dir} {
  auto snap = std::make_shared<Snapshot>();
  snap->corpus = corpus::load_corpus(paths_.root);
  embedder_ = std::make_shared<const embedder::EmbedderModel>(
      embedder::load_embedder(paths_.embedder()));
  if (std::filesystem::exists(paths_.registry()))
    snap->registry = ensemble::load_registry(paths_.registry());
  feedback_ = workflow::FeedbackStore(paths_.feedback());
  for (const auto &[cwe, model] : snap->registry.models)
    snap->cwes.emplace(cwe, build_state(snap->corpus, model));
  snapshot_ = std::move(snap);
}

TriageService::~TriageService() { wait_idle(); }

std::shared_ptr<const TriageService::Snapshot> TriageService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void TriageService::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(next);
}

TriageService::CweState TriageService::build_state(const corpus::Corpus &corpus,
                                                   const ensemble::EnsembleModel &model) const {
  CweState state;
  state.model = std::make_shared<const ensemble::EnsembleModel>(model);
  state.pool = score_records(*embedder_, model, open_records(corpus, model.cwe));
  state.report.cwe = model.cwe;
  if (auto it = corpus.datasets.find(model.cwe); it != corpus.datasets.end()) {
    const auto val = embed_records(*embedder_, it->second.in_split(corpus::Split::val));
    if (val.size() > 0)
      state.report = evaluate_ensemble(model, val);
  }
  return state;
}

TriageItem TriageService::make_item(const ScoredWarning &scored, int version) const {
  TriageItem item;
  item.warning_id = scored.record.id;
  item.cwe = scored.record.cwe;
  item.file_path = scored.record.file_path;
  item.line = scored.record.line;
  item.band = scored.band;
  item.score = scored.prediction.score;
  item.member_probs = scored.prediction.member_probs;
  item.final_label = scored.prediction.final_label;
  item.model_version = version;
  std::optional<workflow::Verdict> verdict;
  {
    std::lock_guard lock(writer_mutex_);
    verdict = feedback_.latest_verdict(item.warning_id);
  }
  if (verdict) {
    item.verdict_status = std::string(workflow::to_string(*verdict));
    item.disagreement = *verdict == workflow::Verdict::false_positive &&
                        item.final_label == 1 && item.band == workflow::Band::high;
  }
  return item;
}

std::vector<CweSummary> TriageService::list_cwes() const {
  const auto snap = snapshot();
  std::vector<CweSummary> out;
  for (const auto &[cwe, state] : snap->cwes) {
    CweSummary s;
    s.cwe = cwe;
    s.version = state.model->version;
    s.trained_at = state.model->trained_at;
    s.open = state.pool.items.size();
    s.bands = band_counts(state.pool);
    s.thresholds = state.pool.thresholds;
    {
      std::lock_guard lock(writer_mutex_);
      s.staged =
          workflow::staged_labels(feedback_, cwe, state.model->feedback_cursor, snap->corpus)
              .size();
    }
    out.push_back(std::move(s));
  }
  return out;
}

WarningPage TriageService::list_warnings(const std::optional<std::string> &cwe,
                                         const std::optional<workflow::Band> &band,
                                         std::size_t offset, std::size_t limit) const {
  const auto snap = snapshot();
  if (cwe && !snap->cwes.contains(*cwe))
    throw NotFoundError("unknown cwe " + *cwe);
  std::vector<TriageItem> items;
  for (const auto &[name, state] : snap->cwes) {
    if (cwe && name != *cwe)
      continue;
    for (const auto &scored : state.pool.items)
      if (!band || scored.band == *band)
        items.push_back(make_item(scored, state.model->version));
  }
  std::sort(items.begin(), items.end(), [](const TriageItem &a, const TriageItem &b) {
    if (a.band != b.band)
      return a.band > b.band;
    if (a.score != b.score)
      return a.score > b.score;
    return a.warning_id < b.warning_id;
  });
  WarningPage page;
  page.total = items.size();
  const std::size_t begin = std::min(offset, items.size());
  const std::size_t end = std::min(items.size(), begin + limit);
  page.items.assign(std::make_move_iterator(items.begin() + static_cast<long>(begin)),
                    std::make_move_iterator(items.begin() + static_cast<long>(end)));
  return page;
}

WarningDetail TriageService::get_warning(const std::string &id, std::size_t top_k) const {
  const auto snap = snapshot();
  for (const auto &[cwe, state] : snap->cwes) {
    for (const auto &scored : state.pool.items) {
      if (scored.record.id != id)
        continue;
      WarningDetail detail;
      detail.item = make_item(scored, state.model->version);
      detail.source = scored.record.source;
      detail.checker = scored.record.checker;
      try {
        const auto explained = embedder::explain_function(*embedder_, scored.record.source);
        for (const auto &attended : explained.ranked) {
          if (detail.contexts.size() >= top_k)
            break;
          const auto &c = attended.context;
          detail.contexts.push_back({c.left, c.path_string(), c.right, c.left_pos.line,
                                     c.left_pos.column, c.right_pos.line, c.right_pos.column,
                                     attended.weight});
        }
      } catch (const ParseError &) {
      }
      return detail;
    }
  }
  throw NotFoundError("not found");
}

VerdictAck TriageService::post_verdict(const std::string &id, const std::string &verdict,
                                       const std::string &user) {
  workflow::Verdict parsed;
  try {
    parsed = workflow::parse_verdict(verdict);
  } catch (const Error &) {
    throw BadRequestError("invalid verdict: " + verdict);
  }
  if (user.empty())
    throw BadRequestError("user is required");

  VerdictAck ack;
  ack.warning_id = id;
  bool has_model = false;
  {
    std::lock_guard lock(writer_mutex_);
    const auto snap = snapshot();
    const auto *record = snap->corpus.find_open(id);
    if (!record)
      throw NotFoundError("not found");
    ack.cwe = record->cwe;
    const auto state = snap->cwes.find(record->cwe);
    has_model = state != snap->cwes.end();
    const std::size_t cursor = has_model ? state->second.model->feedback_cursor : 0;

    const auto &events = feedback_.events();
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
      if (it->warning_id == id && it->user == user) {
        ack.duplicate = it->verdict == parsed;
        break;
      }
    }
    if (!ack.duplicate) {
      workflow::FeedbackEvent event;
      event.warning_id = id;
      event.verdict = parsed;
      event.user = user;
      event.timestamp = ensemble::utc_timestamp(now_seconds());
      event.model_version_at_verdict = has_model ? state->second.model->version : 0;
      workflow::record_feedback(feedback_, event, snap->corpus);
    }
    ack.staged = workflow::staged_labels(feedback_, ack.cwe, cursor, snap->corpus).size();
  }
  ack.retrain_triggered = has_model && ack.staged >= config_.retrain_threshold;
  if (ack.retrain_triggered && config_.auto_retrain)
    launch_retrain(ack.cwe);
  return ack;
}

std::mutex &TriageService::retrain_mutex(const std::string &cwe) {
  std::lock_guard lock(retrain_map_mutex_);
  auto &slot = retrain_mutexes_[cwe];
  if (!slot)
    slot = std::make_unique<std::mutex>();
  return *slot;
}

int TriageService::retrain(const std::string &cwe) {
  std::lock_guard serial(retrain_mutex(cwe));
  const auto snap = snapshot();
  const auto state = snap->cwes.find(cwe);
  if (state == snap->cwes.end())
    throw NotFoundError("unknown cwe " + cwe);
  const auto &live = *state->second.model;

  std::size_t cursor = 0;
  std::vector<workflow::StagedLabel> staged;
  {
    std::lock_guard lock(writer_mutex_);
    cursor = feedback_.size();
    staged = workflow::staged_labels(feedback_, cwe, live.feedback_cursor, snap->corpus);
  }
  if (staged.empty())
    throw ConflictError("nothing staged");

  auto dataset = snap->corpus.datasets.count(cwe) ? snap->corpus.datasets.at(cwe)
                                                  : corpus::CweDataset{cwe, {}, {}};
  for (const auto &label : staged) {
    dataset.records.push_back(label.record);
    dataset.split[label.record.id] = corpus::Split::train;
  }
  const auto matrices = embed_dataset(*embedder_, dataset);
  const auto hyper = hypers_for(load_hypers(paths_.hypers()), cwe);
  const int version = live.version + 1;
  auto model = ensemble::train_cwe_ensemble(cwe, matrices.train, matrices.val, hyper,
                                            mix_seed(cwe_seed(config_.seed, cwe),
                                                     static_cast<std::uint64_t>(version)));
  model.version = version;
  model.trained_at = ensemble::utc_timestamp(now_seconds());
  model.feedback_cursor = cursor;

  std::lock_guard lock(writer_mutex_);
  auto next = std::make_shared<Snapshot>(*snapshot());
  auto &open = next->corpus.open_pool;
  auto &target = next->corpus.datasets[cwe];
  target.cwe = cwe;
  for (const auto &label : staged) {
    auto it = std::find_if(open.begin(), open.end(),
                           [&](const corpus::WarningRecord &r) { return r.id == label.record.id; });
    if (it == open.end())
      continue;
    open.erase(it);
    target.records.push_back(label.record);
    target.split[label.record.id] = corpus::Split::train;
  }
  next->registry.models[cwe] = model;
  next->cwes[cwe] = build_state(next->corpus, model);
  corpus::save_corpus(next->corpus, paths_.root);
  ensemble::save_registry(next->registry, paths_.registry());
  publish(std::move(next));
  return version;
}

CweMetrics TriageService::metrics(const std::string &cwe) const {
  const auto snap = snapshot();
  const auto it = snap->cwes.find(cwe);
  if (it == snap->cwes.end())
    throw NotFoundError("unknown cwe " + cwe);
  return {it->second.report, it->second.model->version, band_counts(it->second.pool),
          it->second.pool.thresholds};
}

void TriageService::launch_retrain(const std::string &cwe) {
  std::lock_guard lock(worker_mutex_);
  if (running_.contains(cwe))
    return;
  running_.insert(cwe);
  workers_.emplace_back([this, cwe] {
    std::string error;
    try {
      retrain(cwe);
    } catch (const std::exception &e) {
      error = e.what();
    }
    std::lock_guard inner(worker_mutex_);
    if (error.empty())
      retrain_errors_.erase(cwe);
    else
      retrain_errors_[cwe] = error;
    running_.erase(cwe);
    worker_cv_.notify_all();
  });
}

void TriageService::wait_idle() {
  std::vector<std::thread> done;
  {
    std::unique_lock lock(worker_mutex_);
    worker_cv_.wait(lock, [&] { return running_.empty(); });
    done.swap(workers_);
  }
  for (auto &worker : done)
    worker.join();
}

std::optional<std::string> TriageService::last_retrain_error(const std::string &cwe) const {
  std::lock_guard lock(worker_mutex_);
  auto it = retrain_errors_.find(cwe);
  if (it == retrain_errors_.end())
    return std::nullopt;
  return it->second;
}

} // namespace satriage::service
