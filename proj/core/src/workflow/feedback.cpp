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

#include "satriage/workflow/feedback.hpp"

#include "satriage/common/error.hpp"

namespace satriage::workflow {

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::true_positive ? "true_positive" : "false_positive";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "true_positive")
    return Verdict::true_positive;
  if (text == "false_positive")
    return Verdict::false_positive;
  throw Error("unknown verdict " + std::string(text));
}

int label_for(Verdict verdict) { return verdict == Verdict::true_positive ? 1 : 0; }

Json to_json(const FeedbackEvent &e) {
  return {{"warning_id", e.warning_id},
          {"cwe", e.cwe},
          {"verdict", std::string(to_string(e.verdict))},
          {"user", e.user},
          {"timestamp", e.timestamp},
          {"model_version_at_verdict", e.model_version_at_verdict}};
}

FeedbackEvent feedback_from_json(const Json &value, std::size_t line_number) {
  const std::string prefix = line_number ? "line " + std::to_string(line_number) + ": " : "";
  try {
    FeedbackEvent e;
    e.warning_id = value.at("warning_id").get<std::string>();
    e.cwe = value.at("cwe").get<std::string>();
    e.verdict = parse_verdict(value.at("verdict").get<std::string>());
    e.user = value.at("user").get<std::string>();
    e.timestamp = value.value("timestamp", std::string{});
    e.model_version_at_verdict = value.value("model_version_at_verdict", 0);
    return e;
  } catch (const nlohmann::json::exception &ex) {
    throw SchemaError(prefix + "malformed feedback event: " + ex.what());
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &ex) {
    throw SchemaError(prefix + ex.what());
  }
}

FeedbackStore::FeedbackStore(std::filesystem::path log) : log_(std::move(log)) {
  if (std::filesystem::exists(*log_))
    for_each_jsonl(*log_, [&](std::size_t line, const Json &value) {
      events_.push_back(feedback_from_json(value, line));
    });
}

void FeedbackStore::append(const FeedbackEvent &event) {
  if (event.warning_id.empty() || event.user.empty())
    throw Error("feedback needs a warning id and a user");
  if (log_)
    append_line(*log_, canonical_dump(to_json(event)));
  events_.push_back(event);
}

std::map<std::pair<std::string, std::string>, Verdict> FeedbackStore::effective_verdicts() const {
  std::map<std::pair<std::string, std::string>, Verdict> out;
  for (const auto &e : events_)
    out[{e.warning_id, e.user}] = e.verdict;
  return out;
}

std::optional<Verdict> FeedbackStore::latest_verdict(const std::string &warning_id) const {
  for (auto it = events_.rbegin(); it != events_.rend(); ++it)
    if (it->warning_id == warning_id)
      return it->verdict;
  return std::nullopt;
}

std::map<std::string, Verdict> FeedbackStore::staged(const std::string &cwe,
                                                     std::size_t cursor) const {
  std::map<std::string, Verdict> out;
  for (std::size_t i = cursor; i < events_.size(); ++i)
    if (events_[i].cwe == cwe)
      out[events_[i].warning_id] = events_[i].verdict;
  return out;
}

void record_feedback(FeedbackStore &store, FeedbackEvent event, const corpus::Corpus &corpus) {
  const auto *record = corpus.find_open(event.warning_id);
  if (!record)
    throw NotFoundError("unknown warning id " + event.warning_id);
  event.cwe = record->cwe;
  store.append(event);
}

std::vector<StagedLabel> staged_labels(const FeedbackStore &store, const std::string &cwe,
                                       std::size_t cursor, const corpus::Corpus &corpus) {
  std::vector<StagedLabel> out;
  for (const auto &[id, verdict] : store.staged(cwe, cursor)) {
    const auto *open = corpus.find_open(id);
    if (!open)
      continue;
    StagedLabel staged{*open, verdict};
    staged.record.origin = verdict == Verdict::true_positive ? corpus::Origin::reported_fixed
                                                             : corpus::Origin::dismissed;
    staged.record.label = label_for(verdict);
    out.push_back(std::move(staged));
  }
  return out;
}

bool should_retrain(const FeedbackStore &store, const std::string &cwe, std::size_t cursor,
                    const RetrainPolicy &policy) {
  return store.staged(cwe, cursor).size() >= policy.min_new_labels;
}

std::vector<std::string> highlight_disagreements(const std::vector<BandedPrediction> &predictions,
                                                 const FeedbackStore &store) {
  std::vector<std::string> out;
  for (const auto &p : predictions) {
    const auto verdict = store.latest_verdict(p.warning_id);
    if (verdict == Verdict::false_positive && p.final_label == 1 && p.band == Band::high)
      out.push_back(p.warning_id);
  }
  return out;
}

} // namespace satriage::workflow
