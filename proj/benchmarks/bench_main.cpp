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

#include <benchmark/benchmark.h>

#include "satriage/common/random.hpp"
#include "satriage/corpus/synthetic.hpp"
#include "satriage/embedder/model.hpp"
#include "satriage/ensemble/ensemble.hpp"
#include "satriage/frontend/parser.hpp"
#include "satriage/frontend/paths.hpp"
#include "satriage/frontend/vocab.hpp"
#include "satriage/learners/forest.hpp"
#include "satriage/learners/gbt.hpp"
#include "satriage/learners/net.hpp"

using namespace satriage;

namespace {

const std::vector<corpus::WarningRecord> &sample_records() {
  static const auto records = [] {
    corpus::SyntheticSpec spec;
    spec.cwes["CWE-476"] = {25, 25, 0, 0};
    spec.cwes["CWE-457"] = {25, 25, 0, 0};
    return corpus::generate_synthetic_records(spec, 1);
  }();
  return records;
}

ensemble::LabeledMatrix random_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  ensemble::LabeledMatrix m;
  m.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    m.y.push_back(label);
    m.ids.push_back(std::to_string(i));
    for (std::size_t j = 0; j < d; ++j)
      m.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rng.normal() + (label ? 0.3 : -0.3);
  }
  return m;
}

} // namespace

static void BM_ParseAndExtract(benchmark::State &state) {
  const auto &records = sample_records();
  std::size_t contexts = 0;
  for (auto _ : state) {
    for (const auto &record : records) {
      const auto tree = frontend::parse_function(record.source);
      const auto bag = frontend::extract_path_contexts(tree, {}, 0);
      contexts += bag.contexts.size();
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * records.size()));
  benchmark::DoNotOptimize(contexts);
}
BENCHMARK(BM_ParseAndExtract)->Unit(benchmark::kMillisecond);

static void BM_EmbedFunction(benchmark::State &state) {
  const auto &records = sample_records();
  std::vector<frontend::ContextBag> bags;
  for (const auto &record : records)
    bags.push_back(frontend::extract_path_contexts(frontend::parse_function(record.source), {}, 0));
  embedder::EmbedderModel model;
  model.vocab = frontend::build_vocab(bags, 1);
  model.params = embedder::init_params(model.vocab, {}, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(embedder::embed_function(model, records[0].source));
}
BENCHMARK(BM_EmbedFunction)->Unit(benchmark::kMicrosecond);

static void BM_GbtTrain(benchmark::State &state) {
  const auto data = random_rows(static_cast<std::size_t>(state.range(0)), 384, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(learners::train_gbt(data.x, data.y, {}));
}
BENCHMARK(BM_GbtTrain)->Arg(320)->Unit(benchmark::kMillisecond);

static void BM_ForestTrain(benchmark::State &state) {
  const auto data = random_rows(static_cast<std::size_t>(state.range(0)), 384, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(learners::train_forest(data.x, data.y, {}, 7));
}
BENCHMARK(BM_ForestTrain)->Arg(320)->Unit(benchmark::kMillisecond);

static void BM_NetTrain(benchmark::State &state) {
  const auto data = random_rows(static_cast<std::size_t>(state.range(0)), 384, 8);
  learners::NetHyper hyper;
  hyper.max_epochs = 10;
  for (auto _ : state)
    benchmark::DoNotOptimize(learners::train_net(data.x, data.y, hyper, 9));
}
BENCHMARK(BM_NetTrain)->Arg(320)->Unit(benchmark::kMillisecond);

static void BM_EnsemblePredict(benchmark::State &state) {
  const auto train = random_rows(200, 384, 10);
  const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), 384, 11);
  learners::HyperTriple hyper;
  hyper.forest.n_estimators = 50;
  hyper.net.max_epochs = 5;
  const auto model = ensemble::train_cwe_ensemble("CWE-476", train, {}, hyper, 12);
  for (auto _ : state)
    benchmark::DoNotOptimize(ensemble::predict_all(model, rows));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnsemblePredict)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
