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

#include "satriage/service/commands.hpp"

#include <fstream>

#include "satriage/common/error.hpp"
#include "satriage/embedder/model_io.hpp"
#include "satriage/ensemble/registry.hpp"
#include "satriage/workflow/feedback.hpp"

namespace satriage::service {
namespace {

ensemble::Registry load_registry_or_empty(const DataPaths &paths) {
  if (!std::filesystem::exists(paths.registry()))
    return {};
  return ensemble::load_registry(paths.registry());
}

const ensemble::EnsembleModel &require_model(const ensemble::Registry &registry,
                                             const std::string &cwe) {
  const auto *model = registry.find(cwe);
  if (!model)
    throw NotFoundError("no trained model for " + cwe);
  return *model;
}

std::vector<std::string> select_cwes(const corpus::Corpus &corpus, const std::string &cwe) {
  std::vector<std::string> out;
  if (cwe == "all") {
    for (const auto &[name, dataset] : corpus.datasets)
      out.push_back(name);
    return out;
  }
  if (!corpus.datasets.contains(cwe))
    throw NotFoundError("no labeled data for " + cwe);
  return {cwe};
}

bool same_training(const ensemble::EnsembleModel &a, const ensemble::EnsembleModel &b) {
  if (a.bootstrap_seeds != b.bootstrap_seeds || a.feedback_cursor != b.feedback_cursor)
    return false;
  for (std::size_t i = 0; i < ensemble::kMembers; ++i)
    if (learners::to_json(a.members[i]) != learners::to_json(b.members[i]))
      return false;
  return true;
}

} // namespace

IngestSummary run_ingest(const std::filesystem::path &input, const std::filesystem::path &data_dir,
                         std::uint64_t seed) {
  auto corpus = corpus::ingest_warnings(input);
  IngestSummary summary;
  summary.warnings = ensure_splits(corpus, seed);
  std::filesystem::create_directories(data_dir);
  corpus::save_corpus(corpus, data_dir);
  for (const auto &[cwe, dataset] : corpus.datasets)
    summary.counts.push_back(corpus::dataset_stats(dataset, corpus.open_pool));
  return summary;
}

PretrainSummary run_pretrain(const std::filesystem::path &data_dir, std::uint64_t seed,
                             std::size_t epochs, double learning_rate) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  EmbedderBuildOptions options;
  options.pretrain.seed = seed;
  options.pretrain.epochs = epochs;
  options.pretrain.learning_rate = learning_rate;
  auto build = build_embedder(corpus, options);
  embedder::save_embedder(build.model, paths.embedder());
  return {std::move(build.epoch_loss),
          build.tag_accuracy,
          build.skipped,
          build.model.vocab.tokens.size(),
          build.model.vocab.paths.size(),
          build.model.vocab.tags.size()};
}

std::vector<TrainSummary> run_train(const std::filesystem::path &data_dir, const std::string &cwe,
                                    std::uint64_t seed) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  const auto embedder = embedder::load_embedder(paths.embedder());
  auto registry = load_registry_or_empty(paths);
  const auto hypers = load_hypers(paths.hypers());

  std::vector<TrainSummary> out;
  for (const auto &name : select_cwes(corpus, cwe)) {
    const auto matrices = embed_dataset(embedder, corpus.datasets.at(name));
    auto model = ensemble::train_cwe_ensemble(name, matrices.train, matrices.val,
                                              hypers_for(hypers, name), cwe_seed(seed, name));
    const auto *live = registry.find(name);
    if (live)
      model.feedback_cursor = live->feedback_cursor;
    if (live && same_training(*live, model)) {
      model.version = live->version;
      model.trained_at = live->trained_at;
    } else {
      model.version = registry.next_version(name);
      model.trained_at = ensemble::utc_timestamp(reproducible_epoch());
    }
    TrainSummary summary{name, model.version, {}};
    if (matrices.val.size() > 0)
      summary.report = evaluate_ensemble(model, matrices.val);
    summary.report.cwe = name;
    registry.models[name] = std::move(model);
    out.push_back(std::move(summary));
  }
  ensemble::save_registry(registry, paths.registry());
  return out;
}

TuneSummary run_tune(const std::filesystem::path &data_dir, const std::string &cwe,
                     const TuneOptions &options) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  if (!corpus.datasets.contains(cwe))
    throw NotFoundError("no labeled data for " + cwe);
  const auto embedder = embedder::load_embedder(paths.embedder());
  auto hypers = load_hypers(paths.hypers());
  const auto matrices = embed_dataset(embedder, corpus.datasets.at(cwe));

  TuneSummary summary;
  summary.chosen = hypers_for(hypers, cwe);
  const auto seed = cwe_seed(options.seed, cwe);
  if (options.joint) {
    auto gbt = options.joint_gbt.empty() ? std::vector{summary.chosen.gbt} : options.joint_gbt;
    auto forest =
        options.joint_forest.empty() ? std::vector{summary.chosen.forest} : options.joint_forest;
    auto net = options.joint_net.empty() ? std::vector{summary.chosen.net} : options.joint_net;
    auto result = evaluation::joint_grid_search(evaluation::cartesian_triples(gbt, forest, net),
                                                matrices.train, matrices.val, seed);
    summary.chosen = result.combos[result.best];
    summary.joint = std::move(result);
  } else {
    std::vector<learners::LearnerKind> kinds;
    if (options.learner == "all")
      kinds = {learners::LearnerKind::gbt, learners::LearnerKind::forest,
               learners::LearnerKind::net};
    else
      kinds = {learners::parse_learner_kind(options.learner)};
    const auto base = summary.chosen;
    for (auto kind : kinds) {
      auto result = evaluation::grid_search(kind, base, matrices.train, matrices.val, seed);
      const auto &best = result.best_row().hyper;
      switch (kind) {
      case learners::LearnerKind::gbt:
        summary.chosen.gbt = learners::gbt_hyper_from_json(best);
        break;
      case learners::LearnerKind::forest:
        summary.chosen.forest = learners::forest_hyper_from_json(best);
        break;
      case learners::LearnerKind::net:
        summary.chosen.net = learners::net_hyper_from_json(best);
        break;
      }
      summary.grids.push_back(std::move(result));
    }
  }
  hypers[cwe] = summary.chosen;
  save_hypers(hypers, paths.hypers());
  return summary;
}

std::size_t run_score(const std::filesystem::path &data_dir, const std::filesystem::path &input,
                      const std::filesystem::path &output) {
  const DataPaths paths{data_dir};
  const auto embedder = embedder::load_embedder(paths.embedder());
  const auto registry = load_registry_or_empty(paths);

  std::vector<corpus::WarningRecord> records;
  for_each_jsonl(input, [&](std::size_t line, const Json &value) {
    auto record = corpus::record_from_json(value, line);
    corpus::validate(record);
    records.push_back(std::move(record));
  });

  std::map<std::string, std::vector<const corpus::WarningRecord *>> by_cwe;
  for (const auto &record : records)
    by_cwe[record.cwe].push_back(&record);
  std::map<std::string, ScoredWarning> scored;
  std::map<std::string, workflow::BandThresholds> thresholds;
  for (const auto &[cwe, group] : by_cwe) {
    auto pool = score_records(embedder, require_model(registry, cwe), group);
    thresholds[cwe] = pool.thresholds;
    for (auto &item : pool.items)
      scored.emplace(item.record.id, std::move(item));
  }

  std::string text;
  for (const auto &record : records) {
    const auto &item = scored.at(record.id);
    const auto &t = thresholds.at(record.cwe);
    const Json row = {{"warning_id", record.id},
                      {"cwe", record.cwe},
                      {"score", item.prediction.score},
                      {"final_label", item.prediction.final_label},
                      {"member_probs", item.prediction.member_probs},
                      {"votes", item.prediction.votes},
                      {"band", std::string(workflow::to_string(item.band))},
                      {"model_version", require_model(registry, record.cwe).version},
                      {"thresholds", {{"t_high", t.t_high}, {"t_med", t.t_med},
                                      {"mu", t.mu}, {"sigma", t.sigma},
                                      {"fallback", t.fallback}}}};
    text += canonical_dump(row);
    text += '\n';
  }
  if (output.has_parent_path())
    std::filesystem::create_directories(output.parent_path());
  write_text_file_atomic(output, text);
  return records.size();
}

std::vector<evaluation::MetricsReport> run_eval(const std::filesystem::path &data_dir,
                                                const std::string &cwe) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  const auto embedder = embedder::load_embedder(paths.embedder());
  const auto registry = load_registry_or_empty(paths);
  std::vector<evaluation::MetricsReport> out;
  std::vector<std::string> names;
  if (cwe == "all") {
    for (const auto &[name, model] : registry.models)
      names.push_back(name);
    if (names.empty())
      throw NotFoundError("no trained models");
  } else {
    names.push_back(cwe);
  }
  for (const auto &name : names) {
    const auto &model = require_model(registry, name);
    const auto it = corpus.datasets.find(name);
    if (it == corpus.datasets.end())
      throw NotFoundError("no labeled data for " + name);
    const auto val = embed_records(embedder, it->second.in_split(corpus::Split::val));
    if (val.size() == 0)
      throw Error("validation split of " + name + " is empty");
    out.push_back(evaluate_ensemble(model, val));
  }
  return out;
}

BandsSummary run_bands(const std::filesystem::path &data_dir, const std::string &cwe) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  const auto embedder = embedder::load_embedder(paths.embedder());
  const auto registry = load_registry_or_empty(paths);
  const auto pool = score_records(embedder, require_model(registry, cwe), open_records(corpus, cwe));
  BandsSummary summary{pool.thresholds, {{"high", 0}, {"medium", 0}, {"low", 0}}};
  for (const auto &item : pool.items)
    ++summary.counts[std::string(workflow::to_string(item.band))];
  return summary;
}

FeedbackSummary run_feedback(const std::filesystem::path &data_dir, const std::string &id,
                             const std::string &verdict, const std::string &user,
                             std::size_t threshold) {
  const DataPaths paths{data_dir};
  const auto corpus = corpus::load_corpus(data_dir);
  const auto registry = load_registry_or_empty(paths);
  workflow::FeedbackStore store(paths.feedback());
  workflow::FeedbackEvent event;
  event.warning_id = id;
  event.verdict = workflow::parse_verdict(verdict);
  event.user = user;
  event.timestamp = ensemble::utc_timestamp(reproducible_epoch());
  const auto *record = corpus.find_open(id);
  const auto *model = record ? registry.find(record->cwe) : nullptr;
  event.model_version_at_verdict = model ? model->version : 0;
  workflow::record_feedback(store, event, corpus);

  FeedbackSummary summary;
  summary.cwe = record->cwe;
  const std::size_t cursor = model ? model->feedback_cursor : 0;
  summary.staged = workflow::staged_labels(store, summary.cwe, cursor, corpus).size();
  summary.retrain_due = summary.staged >= threshold;
  return summary;
}

} // namespace satriage::service
