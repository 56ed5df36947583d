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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "reference_tables.hpp"
#include "satriage/common/json_io.hpp"
#include "satriage/common/random.hpp"
#include "satriage/corpus/ingest.hpp"
#include "satriage/corpus/records.hpp"
#include "satriage/corpus/synthetic.hpp"
#include "satriage/embedder/model_io.hpp"
#include "satriage/ensemble/ensemble.hpp"
#include "satriage/ensemble/registry.hpp"
#include "satriage/evaluation/grid.hpp"
#include "satriage/evaluation/metrics.hpp"
#include "satriage/evaluation/report.hpp"
#include "satriage/frontend/parser.hpp"
#include "satriage/frontend/paths.hpp"
#include "satriage/learners/gbt.hpp"
#include "satriage/learners/net.hpp"
#include "satriage/service/commands.hpp"
#include "satriage/service/http_api.hpp"
#include "satriage/service/pipeline.hpp"
#include "satriage/service/triage_service.hpp"
#include "satriage/workflow/bands.hpp"
#include "satriage/workflow/feedback.hpp"

#include "httplib.h"

using namespace satriage;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Collects failures; the first few messages go into the detail line.
class Check {
public:
  void expect(bool condition, const std::string &message) {
    if (condition)
      return;
    ++failures_;
    if (failures_ <= 3)
      notes_ += (notes_.empty() ? "" : "; ") + message;
  }
  void note(const std::string &text) { info_ += (info_.empty() ? "" : ", ") + text; }
  Outcome outcome() const {
    if (failures_ == 0)
      return {true, info_};
    return {false, std::to_string(failures_) + " failure(s): " + notes_ +
                       (info_.empty() ? "" : " [" + info_ + "]")};
  }

private:
  std::size_t failures_ = 0;
  std::string notes_;
  std::string info_;
};

std::string fmt(double value, int decimals = 4) {
  std::ostringstream out;
  out.precision(decimals);
  out << std::fixed << value;
  return out.str();
}

std::string sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2e", value);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared state: the end-to-end data directory is reused by the
// determinism and active-learning criteria.
struct Workspace {
  fs::path root;
  fs::path e2e;
  fs::path pretrained_copy_a;
  fs::path pretrained_copy_b;
  bool e2e_ready = false;
};

constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kLabeledPerCwe = 400;
constexpr std::size_t kOpenPerCwe = 120;
const std::vector<std::string> kE2eCwes{"CWE-476", "CWE-457"};

// 1 -------------------------------------------------------------------------

Outcome results_table_arithmetic(Workspace &) {
  Check check;
  double worst = 0.0;
  constexpr double kTp = 100000.0;
  for (const auto &row : oracle::kResultTable) {
    const auto fp = static_cast<std::size_t>(std::llround(kTp * (100.0 / row.precision - 1.0)));
    const auto fn = static_cast<std::size_t>(std::llround(kTp * (100.0 / row.recall - 1.0)));
    std::vector<int> labels;
    std::vector<int> predicted;
    labels.insert(labels.end(), static_cast<std::size_t>(kTp), 1);
    predicted.insert(predicted.end(), static_cast<std::size_t>(kTp), 1);
    labels.insert(labels.end(), fp, 0);
    predicted.insert(predicted.end(), fp, 1);
    labels.insert(labels.end(), fn, 1);
    predicted.insert(predicted.end(), fn, 0);
    std::vector<double> scores(predicted.begin(), predicted.end());
    const auto report = evaluation::compute_metrics(labels, predicted, scores);
    check.expect(std::abs(report.precision - row.precision) < 1e-3 &&
                     std::abs(report.recall - row.recall) < 1e-3,
                 std::string(row.cwe) + " counts do not realize the row");
    const double diff = std::abs(report.f1 - row.f1);
    worst = std::max(worst, diff);
    check.expect(diff <= 0.02, std::string(row.cwe) + " F1 off by " + fmt(diff));
  }
  double f1 = 0.0, recall = 0.0, auroc = 0.0;
  for (const auto &row : oracle::kResultTable) {
    f1 += row.f1;
    recall += row.recall;
    auroc += row.auroc;
  }
  const double n = static_cast<double>(oracle::kResultTable.size());
  const auto f1_mean = evaluation::format_fixed(f1 / n, 3);
  const auto recall_mean = evaluation::format_fixed(recall / n, 3);
  const auto auroc_mean = evaluation::format_fixed(auroc / n, 3);
  check.expect(f1_mean == "82.725", "F1 mean " + f1_mean);
  check.expect(recall_mean == "83.765", "recall mean " + recall_mean);
  check.expect(auroc_mean == "79.295", "AUROC mean " + auroc_mean);
  check.note("max |F1 diff| " + fmt(worst));
  check.note("means F1 " + f1_mean + " recall " + recall_mean + " AUROC " + auroc_mean);
  return check.outcome();
}

// 2 -------------------------------------------------------------------------

Outcome dataset_size_arithmetic(Workspace &) {
  Check check;
  for (const auto &row : oracle::kCountTable) {
    corpus::CweDataset dataset;
    dataset.cwe = row.cwe;
    const std::pair<corpus::Origin, std::size_t> parts[] = {
        {corpus::Origin::reported_fixed, row.n_true},
        {corpus::Origin::synthetic_fixed, row.n_fixed},
        {corpus::Origin::dismissed, row.n_fake}};
    for (const auto &[origin, count] : parts) {
      corpus::WarningRecord record;
      record.cwe = row.cwe;
      record.origin = origin;
      record.label = corpus::label_for(origin);
      dataset.records.insert(dataset.records.end(), count, record);
    }
    const auto stats = corpus::dataset_stats(dataset);
    check.expect(stats.n_true == row.n_true && stats.n_fixed == row.n_fixed &&
                     stats.n_fake == row.n_fake,
                 std::string(row.cwe) + " origin counts");
    check.expect(stats.total == row.total, std::string(row.cwe) + " total " +
                                               std::to_string(stats.total) + " != " +
                                               std::to_string(row.total));
  }
  check.note(std::to_string(oracle::kCountTable.size()) + " rows");
  return check.outcome();
}

// 3 -------------------------------------------------------------------------

Outcome end_to_end(Workspace &ws) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  ws.e2e = ws.root / "e2e";
  fs::create_directories(ws.e2e);
  corpus::SyntheticSpec spec;
  for (const auto &cwe : kE2eCwes)
    spec.cwes[cwe] = {kLabeledPerCwe / 2, kLabeledPerCwe / 2, 0, kOpenPerCwe};
  const auto input = ws.root / "e2e_corpus.jsonl";
  corpus::write_synthetic_corpus(spec, kSeed, input);
  service::run_ingest(input, ws.e2e, kSeed);
  const auto pretrain = service::run_pretrain(ws.e2e, kSeed, 30);
  check.expect(pretrain.epoch_loss.size() <= 30, "more than 30 pretraining epochs");

  ws.pretrained_copy_a = ws.root / "determinism_a";
  ws.pretrained_copy_b = ws.root / "determinism_b";
  fs::copy(ws.e2e, ws.pretrained_copy_a, fs::copy_options::recursive);
  fs::copy(ws.e2e, ws.pretrained_copy_b, fs::copy_options::recursive);

  service::run_train(ws.e2e, "all", kSeed);
  const auto reports = service::run_eval(ws.e2e, "all");
  check.expect(reports.size() == kE2eCwes.size(), "expected one report per CWE");
  for (const auto &r : reports) {
    check.expect(r.has_auroc && r.auroc >= 90.0, r.cwe + " AUROC " + fmt(r.auroc, 2));
    check.expect(r.recall >= 85.0, r.cwe + " recall " + fmt(r.recall, 2));
    check.note(r.cwe + " AUROC " + fmt(r.auroc, 2) + " recall " + fmt(r.recall, 2));
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 600.0, "took " + fmt(elapsed, 1) + " s");
  check.note("pretrain epochs " + std::to_string(pretrain.epoch_loss.size()));
  ws.e2e_ready = true;
  return check.outcome();
}

// 4 -------------------------------------------------------------------------

Outcome gradient_oracles(Workspace &) {
  Check check;
  double worst_embedder = 0.0;
  double worst_net = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double e = oracle::embedder_gradient_error(seed);
    const double n = oracle::net_gradient_error(seed);
    worst_embedder = std::max(worst_embedder, e);
    worst_net = std::max(worst_net, n);
    check.expect(e < 1e-4, "embedder seed " + std::to_string(seed) + " error " + sci(e));
    check.expect(n < 1e-4, "net seed " + std::to_string(seed) + " error " + sci(n));
  }
  check.note("20 seeds, worst embedder " + sci(worst_embedder) + ", worst net " + sci(worst_net));
  return check.outcome();
}

// 5 -------------------------------------------------------------------------

learners::FeatureMatrix random_matrix(Rng &rng, std::size_t n, std::size_t d, bool discrete) {
  learners::FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      x(i, j) = discrete ? static_cast<double>(rng.below(4)) : rng.normal();
  return x;
}

std::vector<int> labels_for(Rng &rng, const learners::FeatureMatrix &x) {
  std::vector<int> y(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = x(static_cast<Eigen::Index>(i), 0) + 0.5 * rng.normal() > 0.0 ? 1 : 0;
  y[0] = 0;
  y[1] = 1;
  return y;
}

Outcome gbt_oracle(Workspace &) {
  Check check;
  Rng rng(2024);
  std::size_t compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(31);
    const std::size_t d = 1 + rng.below(4);
    const auto x = random_matrix(rng, n, d, trial % 3 == 0);
    std::vector<double> grad(n), hess(n);
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = rng.uniform(-1.0, 1.0);
      hess[i] = rng.uniform(0.05, 0.25);
      rows[i] = i;
    }
    const double lambda = learners::kGbtL2LambdaGrid[rng.below(learners::kGbtL2LambdaGrid.size())];
    const double mcw = trial % 5 == 0 ? 1.0 : 0.1;
    const auto expected = oracle::oracle_gbt_split(x, grad, hess, lambda, mcw);
    const auto actual = learners::best_gbt_split(x, grad, hess, rows, lambda, mcw);
    const std::string tag = "dataset " + std::to_string(trial);
    check.expect(actual.found() == (expected.feature >= 0), tag + " admissibility");
    if (!actual.found() || expected.feature < 0)
      continue;
    ++compared;
    check.expect(actual.feature == expected.feature, tag + " feature");
    check.expect(std::abs(actual.threshold - expected.threshold) < 1e-12, tag + " threshold");
  }

  double worst_leaf = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8 + rng.below(25);
    const auto x = random_matrix(rng, n, 1 + rng.below(4), false);
    const auto y = labels_for(rng, x);
    learners::GbtHyper hyper;
    hyper.max_depth = 1;
    hyper.n_rounds = 1;
    hyper.eta = 1.0;
    hyper.min_child_weight = 0.0;
    hyper.l2_lambda = learners::kGbtL2LambdaGrid[rng.below(learners::kGbtL2LambdaGrid.size())];
    const auto model = learners::train_gbt(x, y, hyper);
    std::vector<double> grad(n), hess(n, 0.25);
    for (std::size_t i = 0; i < n; ++i)
      grad[i] = 0.5 - y[i];
    const auto split = oracle::oracle_gbt_split(x, grad, hess, hyper.l2_lambda, 0.0);
    if (split.feature < 0 || model.trees.size() != 1 || model.trees[0].nodes.size() != 3) {
      check.expect(false, "stump " + std::to_string(trial) + " has no split");
      continue;
    }
    double gl = 0, hl = 0, gr = 0, hr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool left = x(static_cast<Eigen::Index>(i), split.feature) < split.threshold;
      (left ? gl : gr) += grad[i];
      (left ? hl : hr) += hess[i];
    }
    const auto &tree = model.trees[0];
    const auto &root = tree.nodes[0];
    const double left_err = std::abs(tree.nodes[static_cast<std::size_t>(root.left)].value +
                                     gl / (hl + hyper.l2_lambda));
    const double right_err = std::abs(tree.nodes[static_cast<std::size_t>(root.right)].value +
                                      gr / (hr + hyper.l2_lambda));
    worst_leaf = std::max({worst_leaf, left_err, right_err});
    check.expect(left_err < 1e-9 && right_err < 1e-9, "stump " + std::to_string(trial) + " leaf");
  }

  std::size_t rounds = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_matrix(rng, 40, 3, false);
    const auto y = labels_for(rng, x);
    learners::GbtHyper hyper;
    hyper.n_rounds = 40;
    const auto model = learners::train_gbt(x, y, hyper);
    for (std::size_t r = 1; r < model.round_loss.size(); ++r, ++rounds)
      check.expect(model.round_loss[r] <= model.round_loss[r - 1] + 1e-12,
                   "loss rose at round " + std::to_string(r));
  }
  check.note("50 datasets (" + std::to_string(compared) + " with a split)");
  check.note("worst leaf error " + sci(worst_leaf));
  check.note(std::to_string(rounds) + " rounds non-increasing");
  return check.outcome();
}

// 6 -------------------------------------------------------------------------

Outcome voting_oracle(Workspace &) {
  Check check;
  Rng rng(6);
  double worst = 0.0;
  for (int pattern = 0; pattern < 8; ++pattern) {
    for (int trial = 0; trial < 25; ++trial) {
      std::array<double, ensemble::kMembers> probs{};
      int ones = 0;
      for (std::size_t m = 0; m < ensemble::kMembers; ++m) {
        const bool vote = (pattern >> m) & 1;
        ones += vote;
        probs[m] = trial == 0 ? (vote ? 0.5 : std::nextafter(0.5, 0.0))
                              : (vote ? rng.uniform(0.5, 1.0) : rng.uniform(0.0, 0.4999));
      }
      const auto p = ensemble::vote(probs);
      const int majority = ones >= 2 ? 1 : 0;
      check.expect(p.final_label == majority, "pattern " + std::to_string(pattern) + " label");
      for (std::size_t m = 0; m < ensemble::kMembers; ++m)
        check.expect(p.votes[m] == ((pattern >> m) & 1), "pattern " + std::to_string(pattern));
      const double mean = (probs[0] + probs[1] + probs[2]) / 3.0;
      worst = std::max(worst, std::abs(p.score - mean));
      check.expect(std::abs(p.score - mean) <= 1e-12, "score differs from mean");
    }
  }
  check.note("8 patterns x 25 draws, worst |score - mean| " + sci(worst));
  return check.outcome();
}

// 7 -------------------------------------------------------------------------

Outcome banding_oracle(Workspace &) {
  Check check;
  const auto t = workflow::bands_from_moments(0.0, 1.0);
  const double q_high = oracle::bisect_normal_quantile(workflow::kHighConfidence);
  const double q_med = oracle::bisect_normal_quantile(workflow::kMediumConfidence);
  check.expect(std::abs(t.t_high - q_high) < 1e-4 && std::abs(t.t_high - 1.6449) < 1e-4,
               "t_high " + fmt(t.t_high));
  check.expect(std::abs(t.t_med - q_med) < 1e-4 && std::abs(t.t_med - 0.4125) < 1e-4,
               "t_med " + fmt(t.t_med));

  Rng rng(7);
  std::vector<double> scores(10000);
  for (auto &s : scores)
    s = rng.normal();
  const auto fitted = workflow::fit_bands(scores);
  const auto high = std::count_if(scores.begin(), scores.end(), [&](double s) {
    return workflow::assign_band(fitted, s) == workflow::Band::high;
  });
  const double fraction = 100.0 * static_cast<double>(high) / 10000.0;
  check.expect(std::abs(fraction - 5.0) <= 2.0, "high fraction " + fmt(fraction, 2) + "%");

  const std::vector<std::vector<double>> degenerate{
      {}, std::vector<double>(29, 0.3), std::vector<double>(500, 0.8)};
  for (const auto &pool : degenerate) {
    const auto d = workflow::fit_bands(pool);
    check.expect(d.fallback && d.t_high == 0.95 && d.t_med == 0.66,
                 "fallback not used for pool of " + std::to_string(pool.size()));
  }
  check.note("t_high " + fmt(t.t_high) + ", t_med " + fmt(t.t_med));
  check.note("high band " + fmt(fraction, 2) + "% of 10000");
  return check.outcome();
}

// 8 -------------------------------------------------------------------------

ensemble::LabeledMatrix grid_blobs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ensemble::LabeledMatrix m;
  m.x.resize(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    m.y.push_back(label);
    m.ids.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < 3; ++j)
      m.x(static_cast<Eigen::Index>(i), j) = rng.normal() + (label ? 0.6 : -0.6);
  }
  return m;
}

Outcome grid_exhaustiveness(Workspace &) {
  Check check;
  const auto train = grid_blobs(60, 81);
  const auto val = grid_blobs(30, 82);
  auto base = oracle::small_hypers();
  const std::pair<learners::LearnerKind, std::size_t> expected[] = {
      {learners::LearnerKind::gbt, 60},
      {learners::LearnerKind::net, 108},
      {learners::LearnerKind::forest, 27}};
  for (const auto &[kind, rows] : expected) {
    const auto result = evaluation::grid_search(kind, base, train, val, kSeed);
    const std::string name(learners::to_string(kind));
    check.expect(result.table.size() == rows,
                 name + " has " + std::to_string(result.table.size()) + " rows");
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < result.table.size(); ++i)
      if (result.table[i].f1 > result.table[argmax].f1)
        argmax = i;
    check.expect(result.best == argmax, name + " best is not the argmax");
    check.note(name + " " + std::to_string(result.table.size()) + " rows, best F1 " +
               fmt(result.best_row().f1, 3));
  }
  return check.outcome();
}

// 9 -------------------------------------------------------------------------

bool predictions_identical(const std::vector<ensemble::Prediction> &a,
                           const std::vector<ensemble::Prediction> &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(a[i].member_probs.data(), b[i].member_probs.data(),
                    sizeof(double) * ensemble::kMembers) != 0 ||
        std::memcmp(&a[i].score, &b[i].score, sizeof(double)) != 0 ||
        a[i].final_label != b[i].final_label)
      return false;
  }
  return true;
}

int run_cli_train(const fs::path &dir) {
  const std::string command = std::string("\"") + SATRIAGE_CLI_PATH + "\" train --data-dir \"" +
                              dir.string() + "\" --seed 42 > /dev/null 2>&1";
  return std::system(command.c_str());
}

Outcome determinism(Workspace &ws) {
  Check check;
  if (!ws.e2e_ready)
    return {false, "end-to-end data directory unavailable"};
  check.expect(run_cli_train(ws.pretrained_copy_a) == 0, "first train failed");
  check.expect(run_cli_train(ws.pretrained_copy_b) == 0, "second train failed");
  const service::DataPaths a{ws.pretrained_copy_a};
  const service::DataPaths b{ws.pretrained_copy_b};
  const auto bytes_a = read_text_file(a.registry());
  const auto bytes_b = read_text_file(b.registry());
  check.expect(bytes_a == bytes_b, "registries differ between runs");
  check.expect(run_cli_train(ws.pretrained_copy_a) == 0, "repeat train failed");
  check.expect(read_text_file(a.registry()) == bytes_a, "repeat train changed the registry");
  check.expect(read_text_file(service::DataPaths{ws.e2e}.registry()) == bytes_a,
               "CLI and in-process registries differ");

  const auto registry = ensemble::load_registry(a.registry());
  check.expect(ensemble::serialize(ensemble::deserialize_registry(bytes_a)) + "\n" == bytes_a,
               "registry text round trip");
  const auto embedder = embedder::load_embedder(a.embedder());
  const auto corpus = corpus::load_corpus(ws.pretrained_copy_a);
  std::size_t rows = 0;
  for (const auto &cwe : kE2eCwes) {
    const auto &dataset = corpus.datasets.at(cwe);
    const auto matrices = service::embed_dataset(embedder, dataset);
    const auto hypers = service::hypers_for(service::load_hypers(a.hypers()), cwe);
    const auto fresh = ensemble::train_cwe_ensemble(cwe, matrices.train, matrices.val, hypers,
                                                    service::cwe_seed(kSeed, cwe));
    const auto *stored = registry.find(cwe);
    if (stored == nullptr) {
      check.expect(false, cwe + " missing from registry");
      continue;
    }
    const auto reloaded = ensemble::ensemble_from_json(ensemble::to_json(fresh));
    const auto expected = ensemble::predict_all(fresh, matrices.val);
    check.expect(predictions_identical(expected, ensemble::predict_all(*stored, matrices.val)),
                 cwe + " stored model predicts differently");
    check.expect(predictions_identical(expected, ensemble::predict_all(reloaded, matrices.val)),
                 cwe + " round-tripped model predicts differently");
    rows += matrices.val.size();
  }
  check.note("registry " + std::to_string(bytes_a.size()) + " bytes identical");
  check.note(std::to_string(rows) + " validation predictions bit-identical");
  return check.outcome();
}

// 10 ------------------------------------------------------------------------

/// Firing count for a scripted loss sequence: the rate drops at every epoch
/// that closes a run of `patience` epochs since the last strict improvement
/// or the last drop.
std::size_t plateau_oracle(const std::vector<double> &losses, std::size_t patience) {
  std::size_t fired = 0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t run_start = 0;
  for (std::size_t epoch = 0; epoch < losses.size(); ++epoch) {
    if (best - losses[epoch] > 1e-12) {
      best = losses[epoch];
      run_start = epoch + 1;
    } else if (epoch + 1 - run_start == patience) {
      ++fired;
      run_start = epoch + 1;
    }
  }
  return fired;
}

std::size_t plateau_firings(const std::vector<double> &losses, std::size_t patience) {
  learners::PlateauScheduler scheduler(0.01, 0.5, patience);
  for (double loss : losses)
    scheduler.step(loss);
  return scheduler.firings();
}

Outcome parser_and_paths(Workspace &) {
  Check check;
  const fs::path dir = fs::path(SATRIAGE_FIXTURE_DIR) / "ast";
  std::vector<fs::path> sources;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".c")
      sources.push_back(entry.path());
  std::sort(sources.begin(), sources.end());
  check.expect(sources.size() == 20, std::to_string(sources.size()) + " fixtures found");
  std::size_t contexts = 0;
  for (const auto &path : sources) {
    auto golden = path;
    golden.replace_extension(".ast");
    const auto tree = frontend::parse_function(read_text_file(path));
    check.expect(frontend::dump(tree) == read_text_file(golden),
                 path.filename().string() + " AST differs");
    for (frontend::ExtractionCaps caps :
         {frontend::ExtractionCaps{}, frontend::ExtractionCaps{4, 1, 200},
          frontend::ExtractionCaps{20, 20, 200}}) {
      caps.max_contexts = 1'000'000;
      const auto bag = frontend::extract_path_contexts(tree, caps, 0);
      check.expect(bag.contexts == oracle::oracle_path_contexts(tree, caps),
                   path.filename().string() + " paths differ");
      contexts += bag.contexts.size();
    }
  }

  struct Script {
    std::vector<double> losses;
    std::size_t patience;
    std::size_t firings;
  };
  std::vector<Script> scripts{
      {std::vector<double>(20, 1.0), 5, 3},
      {{1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3}, 5, 0},
      {{1.0, 1.0, 0.9, 0.95, 0.95}, 2, 1},
      {{1.0, 1.0 - 1e-13, 1.0 - 2e-13, 1.0 - 3e-13, 1.0 - 4e-13, 1.0 - 5e-13}, 5, 1},
      {{1.0, 1.1, 1.2, 1.3, 1.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, 5, 1},
  };
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    const auto &s = scripts[i];
    check.expect(plateau_oracle(s.losses, s.patience) == s.firings,
                 "oracle disagrees with script " + std::to_string(i));
    check.expect(plateau_firings(s.losses, s.patience) == s.firings,
                 "scheduler disagrees with script " + std::to_string(i));
  }
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> losses(5 + rng.below(60));
    double level = 1.0;
    for (auto &loss : losses) {
      level += rng.below(3) == 0 ? -0.01 : 0.0;
      loss = level + (rng.below(2) == 0 ? 0.0 : rng.uniform(0.0, 0.02));
    }
    const std::size_t patience = 1 + rng.below(6);
    check.expect(plateau_firings(losses, patience) == plateau_oracle(losses, patience),
                 "random script " + std::to_string(trial));
  }
  check.note(std::to_string(sources.size()) + " fixtures, " + std::to_string(contexts) +
             " contexts matched");
  check.note(std::to_string(scripts.size()) + " scripted + 200 random plateau sequences");
  return check.outcome();
}

// 11 ------------------------------------------------------------------------

Outcome active_learning(Workspace &ws) {
  Check check;
  if (!ws.e2e_ready)
    return {false, "end-to-end data directory unavailable"};
  const auto dir = ws.root / "active";
  fs::copy(ws.e2e, dir, fs::copy_options::recursive);
  const std::string cwe = "CWE-476";

  service::ServiceConfig config;
  config.data_dir = dir;
  config.retrain_threshold = 50;
  config.auto_retrain = true;
  service::TriageService triage(config);

  httplib::Server server;
  service::register_routes(server, triage);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(600, 0);

  const auto before = Json::parse(
      client.Get(("/api/cwes/" + cwe + "/metrics").c_str())->body);
  const int version_before = before["version"];
  const auto queue = Json::parse(
      client.Get(("/api/warnings?cwe=" + cwe + "&limit=1000").c_str())->body);
  const std::size_t open_before = queue["total"];
  check.expect(open_before == kOpenPerCwe, "open pool " + std::to_string(open_before));

  std::map<std::string, std::string> posted;
  Json last;
  for (std::size_t i = 0; i < 50 && i < queue["items"].size(); ++i) {
    const std::string id = queue["items"][i]["warning_id"];
    const std::string verdict = i % 5 == 0 ? "true_positive" : "false_positive";
    const Json body{{"verdict", verdict}, {"user", "reviewer"}};
    const auto res = client.Post(("/api/warnings/" + id + "/verdict").c_str(), body.dump(),
                                 "application/json");
    if (!res || res->status != 200) {
      check.expect(false, "verdict " + std::to_string(i) + " rejected");
      break;
    }
    last = Json::parse(res->body);
    posted[id] = verdict;
    if (i < 49)
      check.expect(last["retrain_triggered"] == false,
                   "retrain triggered early at " + std::to_string(i + 1));
  }
  check.expect(last.value("staged", 0) == 50 && last.value("retrain_triggered", false),
               "50th verdict ack " + last.dump());
  triage.wait_idle();
  check.expect(!triage.last_retrain_error(cwe).has_value(),
               "retrain error " + triage.last_retrain_error(cwe).value_or(""));

  const auto after = Json::parse(client.Get(("/api/cwes/" + cwe + "/metrics").c_str())->body);
  const int version_after = after["version"];
  check.expect(version_after == version_before + 1,
               "version " + std::to_string(version_before) + " -> " +
                   std::to_string(version_after));

  const auto requeue = Json::parse(
      client.Get(("/api/warnings?cwe=" + cwe + "&limit=1000").c_str())->body);
  const std::size_t open_after = requeue["total"];
  check.expect(open_after == open_before - 50, "open pool after " + std::to_string(open_after));
  std::vector<double> scores;
  for (const auto &item : requeue["items"]) {
    scores.push_back(item["score"]);
    check.expect(item["model_version"] == version_after, "item not rescored");
    check.expect(!posted.count(item["warning_id"].get<std::string>()),
                 "labeled warning still open");
  }
  const auto refit = workflow::fit_bands(scores, cwe);
  const auto thresholds = workflow::bands_from_json(after["thresholds"]);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  check.expect(close(thresholds.mu, refit.mu) && close(thresholds.sigma, refit.sigma) &&
                   close(thresholds.t_high, refit.t_high) && close(thresholds.t_med, refit.t_med),
               "bands were not refit on the new pool");
  std::size_t banded = 0;
  for (const auto &item : requeue["items"]) {
    const auto band = workflow::assign_band(refit, item["score"].get<double>());
    check.expect(std::string(workflow::to_string(band)) == item["band"].get<std::string>(),
                 "band mismatch");
  }
  for (const auto &[band, count] : after["bands"].items())
    banded += count.get<std::size_t>();
  check.expect(banded == open_after, "band counts do not cover the pool");

  server.stop();
  listener.join();

  workflow::FeedbackStore replayed(service::DataPaths{dir}.feedback());
  std::map<std::string, std::string> reconstructed;
  for (const auto &[id, verdict] : replayed.staged(cwe, 0))
    reconstructed[id] = std::string(workflow::to_string(verdict));
  check.expect(reconstructed == posted, "replayed log does not match the staged set");

  check.note("version " + std::to_string(version_before) + " -> " +
             std::to_string(version_after));
  check.note("open " + std::to_string(open_before) + " -> " + std::to_string(open_after));
  check.note("replay recovered " + std::to_string(reconstructed.size()) + " verdicts");
  return check.outcome();
}

} // namespace

int main() {
  Workspace ws;
  ws.root = oracle::make_temp_dir("acceptance");

  const std::vector<std::pair<const char *, std::function<Outcome(Workspace &)>>> criteria{
      {"results-table arithmetic", results_table_arithmetic},
      {"dataset-size arithmetic", dataset_size_arithmetic},
      {"end-to-end synthetic run", end_to_end},
      {"gradient oracles", gradient_oracles},
      {"GBT oracle", gbt_oracle},
      {"voting oracle", voting_oracle},
      {"banding oracle", banding_oracle},
      {"grid exhaustiveness", grid_exhaustiveness},
      {"determinism", determinism},
      {"parser and paths", parser_and_paths},
      {"active-learning loop", active_learning},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto &[name, run] = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run(ws);
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    failed += !outcome.ok;
    std::cout << "criterion " << (i + 1) << " " << (outcome.ok ? "PASS" : "FAIL") << " "
              << name << " (" << fmt(elapsed, 2) << " s): " << outcome.detail << std::endl;
  }
  std::error_code ignored;
  fs::remove_all(ws.root, ignored);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
