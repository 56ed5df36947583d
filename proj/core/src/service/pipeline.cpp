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

#include "satriage/service/pipeline.hpp"

#include <cstdlib>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"
#include "satriage/corpus/split.hpp"
#include "satriage/frontend/parser.hpp"
#include "satriage/frontend/vocab.hpp"
#include "satriage/workflow/bands.hpp"

namespace satriage::service {

std::uint64_t cwe_seed(std::uint64_t master, const std::string &cwe) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : cwe) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return mix_seed(master, hash);
}

std::vector<std::string> ensure_splits(corpus::Corpus &corpus, std::uint64_t seed) {
  std::vector<std::string> warnings;
  for (auto &[cwe, dataset] : corpus.datasets) {
    if (dataset.has_split())
      continue;
    auto outcome = corpus::stratified_split(std::move(dataset), kTrainRatio, cwe_seed(seed, cwe));
    dataset = std::move(outcome.dataset);
    for (auto &w : outcome.warnings)
      warnings.push_back(std::move(w));
  }
  return warnings;
}

EmbedderBuild build_embedder(const corpus::Corpus &corpus, const EmbedderBuildOptions &options) {
  EmbedderBuild out;
  std::vector<frontend::ContextBag> bags;
  auto add = [&](const corpus::WarningRecord &record) {
    try {
      const auto ast = frontend::parse_function(record.source);
      bags.push_back(frontend::extract_path_contexts(ast, options.caps, options.pretrain.seed));
    } catch (const ParseError &) {
      ++out.skipped;
    }
  };
  for (const auto &[cwe, dataset] : corpus.datasets)
    for (const auto &record : dataset.records)
      add(record);
  for (const auto &record : corpus.open_pool)
    add(record);

  auto vocab = frontend::build_vocab(bags, options.min_count);
  std::vector<embedder::EncodedBag> encoded;
  std::vector<std::size_t> tags;
  for (const auto &bag : bags) {
    encoded.push_back(embedder::encode(vocab, bag));
    tags.push_back(vocab.tags.lookup(bag.function_name));
  }
  auto params = embedder::init_params(vocab, options.dims, options.pretrain.seed);
  auto result = embedder::pretrain(std::move(params), encoded, tags, options.pretrain);
  out.tag_accuracy = embedder::tag_accuracy(result.params, encoded, tags);
  out.epoch_loss = std::move(result.epoch_loss);
  out.model.vocab = std::move(vocab);
  out.model.params = std::move(result.params);
  out.model.caps = options.caps;
  out.model.extraction_seed = options.pretrain.seed;
  return out;
}

LabeledMatrix embed_records(const embedder::EmbedderModel &model,
                            const std::vector<const corpus::WarningRecord *> &records,
                            std::vector<std::string> *unembeddable) {
  LabeledMatrix out;
  const auto dim = static_cast<Eigen::Index>(model.params.dims.d_code);
  out.x = learners::FeatureMatrix::Zero(static_cast<Eigen::Index>(records.size()), dim);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto &record = *records[i];
    out.ids.push_back(record.id);
    out.y.push_back(record.label.value_or(0));
    try {
      const auto embedding = embedder::embed_function(model, record.source);
      if (embedding.empty_bag && unembeddable)
        unembeddable->push_back(record.id);
      const auto &values = embedding.vector.values;
      for (std::size_t c = 0; c < values.size(); ++c)
        out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = values[c];
    } catch (const ParseError &) {
      if (unembeddable)
        unembeddable->push_back(record.id);
    }
  }
  return out;
}

SplitMatrices embed_dataset(const embedder::EmbedderModel &model,
                            const corpus::CweDataset &dataset) {
  if (!dataset.has_split())
    throw Error("dataset " + dataset.cwe + " has no train/validation split");
  return {embed_records(model, dataset.in_split(corpus::Split::train)),
          embed_records(model, dataset.in_split(corpus::Split::val))};
}

std::map<std::string, learners::HyperTriple> load_hypers(const std::filesystem::path &path) {
  std::map<std::string, learners::HyperTriple> out;
  if (!std::filesystem::exists(path))
    return out;
  try {
    const auto value = Json::parse(read_text_file(path));
    for (const auto &[cwe, triple] : value.items())
      out[cwe] = learners::hyper_triple_from_json(triple);
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError("malformed hyperparameter file: " + std::string(e.what()));
  }
  return out;
}

void save_hypers(const std::map<std::string, learners::HyperTriple> &hypers,
                 const std::filesystem::path &path) {
  Json out = Json::object();
  for (const auto &[cwe, triple] : hypers)
    out[cwe] = learners::to_json(triple);
  write_text_file_atomic(path, canonical_dump(out) + "\n");
}

learners::HyperTriple hypers_for(const std::map<std::string, learners::HyperTriple> &hypers,
                                 const std::string &cwe) {
  auto it = hypers.find(cwe);
  return it == hypers.end() ? learners::HyperTriple{} : it->second;
}

evaluation::MetricsReport evaluate_ensemble(const ensemble::EnsembleModel &model,
                                            const LabeledMatrix &val) {
  const auto predictions = ensemble::predict_all(model, val);
  std::vector<int> predicted;
  std::vector<double> scores;
  for (const auto &p : predictions) {
    predicted.push_back(p.final_label);
    scores.push_back(p.score);
  }
  auto report = evaluation::compute_metrics(val.y, predicted, scores);
  report.cwe = model.cwe;
  return report;
}

ScoredPool score_records(const embedder::EmbedderModel &embedder,
                         const ensemble::EnsembleModel &model,
                         const std::vector<const corpus::WarningRecord *> &records) {
  const auto matrix = embed_records(embedder, records);
  const auto predictions = ensemble::predict_all(model, matrix);
  std::vector<double> scores;
  for (const auto &p : predictions)
    scores.push_back(p.score);
  ScoredPool pool;
  pool.thresholds = workflow::fit_bands(scores, model.cwe);
  for (std::size_t i = 0; i < records.size(); ++i)
    pool.items.push_back({*records[i], predictions[i],
                          workflow::assign_band(pool.thresholds, predictions[i].score)});
  return pool;
}

std::vector<const corpus::WarningRecord *> open_records(const corpus::Corpus &corpus,
                                                        const std::string &cwe) {
  std::vector<const corpus::WarningRecord *> out;
  for (const auto &record : corpus.open_pool)
    if (record.cwe == cwe)
      out.push_back(&record);
  return out;
}

std::int64_t reproducible_epoch() {
  const char *value = std::getenv("SOURCE_DATE_EPOCH");
  if (!value || !*value)
    return 0;
  char *end = nullptr;
  const long long parsed = std::strtoll(value, &end, 10);
  if (*end != '\0')
    throw Error("SOURCE_DATE_EPOCH must be an integer");
  return parsed;
}

} // namespace satriage::service
