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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satriage/common/error.hpp"
#include "satriage/common/json_io.hpp"
#include "satriage/corpus/synthetic.hpp"
#include "satriage/evaluation/report.hpp"
#include "satriage/service/commands.hpp"
#include "satriage/service/config.hpp"
#include "satriage/service/http_api.hpp"
#include "satriage/service/triage_service.hpp"

namespace {

using namespace satriage;
namespace fs = std::filesystem;

constexpr int kUsageExit = 2;

struct Options {
  fs::path data_dir = "data";
  std::uint64_t seed = 42;
  std::string format = "text";

  // generate
  fs::path spec_file;
  fs::path out;
  std::vector<std::string> cwes;
  std::size_t pos = 200;
  std::size_t neg = 200;
  std::size_t synthetic_fixed = 0;
  std::size_t open = 50;

  fs::path input;
  std::string cwe = "all";
  std::string learner = "all";
  bool joint = false;
  std::size_t epochs = 30;
  double lr = 0.01;

  int port = 8080;
  std::string host = "127.0.0.1";
  fs::path config_file;
  fs::path static_dir;

  std::string id;
  std::string verdict;
  std::string user;
  std::size_t threshold = 50;
};

void print_json(const Json &value) { std::cout << value.dump(2) << '\n'; }

int cmd_generate(const Options &o) {
  corpus::SyntheticSpec spec;
  if (!o.spec_file.empty()) {
    spec = corpus::parse_synthetic_spec(Json::parse(read_text_file(o.spec_file)));
  } else {
    const auto cwes = o.cwes.empty() ? std::vector<std::string>{"CWE-476", "CWE-457"} : o.cwes;
    for (const auto &cwe : cwes)
      spec.cwes[cwe] = {o.pos, o.neg, o.synthetic_fixed, o.open};
  }
  corpus::write_synthetic_corpus(spec, o.seed, o.out);
  std::size_t total = 0;
  for (const auto &[cwe, counts] : spec.cwes)
    total += counts.reported_fixed + counts.dismissed + counts.synthetic_fixed + counts.open;
  std::cout << "wrote " << total << " records to " << o.out.string() << '\n';
  return 0;
}

int cmd_ingest(const Options &o) {
  const auto summary = service::run_ingest(o.input, o.data_dir, o.seed);
  for (const auto &w : summary.warnings)
    std::cerr << "warning: " << w << '\n';
  std::cout << "cwe        true  fixed   fake  total   open\n";
  for (const auto &row : summary.counts) {
    char line[128];
    std::snprintf(line, sizeof line, "%-9s %6zu %6zu %6zu %6zu %6zu\n", row.cwe.c_str(),
                  row.n_true, row.n_fixed, row.n_fake, row.total, row.n_open);
    std::cout << line;
  }
  return 0;
}

int cmd_pretrain(const Options &o) {
  const auto s = service::run_pretrain(o.data_dir, o.seed, o.epochs, o.lr);
  std::cout << "vocabulary: " << s.tokens << " tokens, " << s.paths << " paths, " << s.tags
            << " tags\n";
  for (std::size_t e = 0; e < s.epoch_loss.size(); ++e)
    std::cout << "epoch " << e + 1 << " loss " << evaluation::format_fixed(s.epoch_loss[e], 6)
              << '\n';
  std::cout << "tag accuracy " << evaluation::format_fixed(100.0 * s.tag_accuracy, 2) << "%\n";
  if (s.skipped)
    std::cerr << "warning: " << s.skipped << " records failed to parse and were skipped\n";
  return 0;
}

int cmd_train(const Options &o) {
  std::vector<evaluation::MetricsReport> reports;
  for (const auto &s : service::run_train(o.data_dir, o.cwe, o.seed)) {
    std::cout << s.cwe << " version " << s.version << '\n';
    reports.push_back(s.report);
  }
  std::cout << evaluation::render_text(reports);
  return 0;
}

int cmd_tune(const Options &o) {
  if (o.cwe == "all")
    throw Error("tune needs a single --cwe");
  service::TuneOptions options;
  options.learner = o.learner;
  options.seed = o.seed;
  options.joint = o.joint;
  const auto s = service::run_tune(o.data_dir, o.cwe, options);
  if (o.format == "json") {
    Json grids = Json::array();
    for (const auto &g : s.grids)
      grids.push_back(evaluation::to_json(g));
    print_json({{"cwe", o.cwe}, {"grids", grids}, {"chosen", learners::to_json(s.chosen)}});
    return 0;
  }
  for (const auto &g : s.grids)
    std::cout << learners::to_string(g.kind) << ": " << g.table.size() << " combos, best f1 "
              << evaluation::format_fixed(100.0 * g.best_row().f1, 2) << " with "
              << g.best_row().hyper.dump() << '\n';
  if (s.joint)
    std::cout << "joint: " << s.joint->table.size() << " combos, best f1 "
              << evaluation::format_fixed(100.0 * s.joint->table[s.joint->best].f1, 2) << '\n';
  return 0;
}

int cmd_score(const Options &o) {
  const auto n = service::run_score(o.data_dir, o.input, o.out);
  std::cout << "scored " << n << " records into " << o.out.string() << '\n';
  return 0;
}

int cmd_eval(const Options &o) {
  const auto reports = service::run_eval(o.data_dir, o.cwe);
  if (o.format == "json")
    print_json(evaluation::render_json(reports));
  else
    std::cout << evaluation::render_text(reports);
  return 0;
}

int cmd_bands(const Options &o) {
  const auto s = service::run_bands(o.data_dir, o.cwe);
  if (o.format == "json") {
    Json out = workflow::to_json(s.thresholds);
    out["counts"] = s.counts;
    print_json(out);
    return 0;
  }
  const auto &t = s.thresholds;
  std::cout << o.cwe << (t.fallback ? " (fallback)" : "") << "\n"
            << "  mu " << evaluation::format_fixed(t.mu, 4) << "  sigma "
            << evaluation::format_fixed(t.sigma, 4) << '\n'
            << "  high   >= " << evaluation::format_fixed(t.t_high, 4) << "  "
            << s.counts.at("high") << '\n'
            << "  medium >= " << evaluation::format_fixed(t.t_med, 4) << "  "
            << s.counts.at("medium") << '\n'
            << "  low                " << s.counts.at("low") << '\n';
  return 0;
}

int cmd_serve(const Options &o, const CLI::App &sub) {
  service::ServiceConfig config;
  if (!o.config_file.empty())
    config = service::load_config(o.config_file, config);
  config = service::apply_env(config);
  if (sub.count("--port"))
    config.port = o.port;
  if (sub.count("--host"))
    config.host = o.host;
  if (sub.count("--data-dir"))
    config.data_dir = o.data_dir;
  if (sub.count("--static-dir"))
    config.static_dir = o.static_dir;
  service::TriageService service(config);
  std::cout << "listening on http://" << config.host << ':' << config.port << std::endl;
  if (!service::serve(service, config.host, config.port))
    throw Error("could not bind " + config.host + ":" + std::to_string(config.port));
  return 0;
}

int cmd_feedback(const Options &o) {
  const auto s = service::run_feedback(o.data_dir, o.id, o.verdict, o.user, o.threshold);
  std::cout << "recorded; " << s.staged << " staged for " << s.cwe
            << (s.retrain_due ? " (retrain due)" : "") << '\n';
  return 0;
}

int cmd_retrain(const Options &o) {
  service::ServiceConfig config;
  config.data_dir = o.data_dir;
  config.seed = o.seed;
  config.auto_retrain = false;
  service::TriageService service(config);
  std::cout << o.cwe << " version " << service.retrain(o.cwe) << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Static-analysis warning triage"};
  app.require_subcommand(1);
  Options o;

  auto data_dir = [&](CLI::App *sub) {
    sub->add_option("--data-dir", o.data_dir, "Data directory")->capture_default_str();
  };
  auto seed = [&](CLI::App *sub) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  auto format = [&](CLI::App *sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  auto *generate = app.add_subcommand("generate", "Write a synthetic corpus");
  generate->add_option("--out", o.out, "Output JSONL file")->required();
  generate->add_option("--spec", o.spec_file, "JSON spec of per-CWE counts")
      ->check(CLI::ExistingFile);
  generate->add_option("--cwe", o.cwes, "CWE template to include (repeatable)");
  generate->add_option("--pos", o.pos, "True warnings per CWE")->capture_default_str();
  generate->add_option("--neg", o.neg, "Dismissed warnings per CWE")->capture_default_str();
  generate->add_option("--fixed", o.synthetic_fixed, "Fixed programs per CWE")
      ->capture_default_str();
  generate->add_option("--open", o.open, "Open warnings per CWE")->capture_default_str();
  seed(generate);

  auto *ingest = app.add_subcommand("ingest", "Load a corpus into a data directory");
  ingest->add_option("--input", o.input, "Corpus JSONL file")->required()->check(CLI::ExistingFile);
  data_dir(ingest);
  seed(ingest);

  auto *pretrain = app.add_subcommand("pretrain-embedder", "Pretrain the code embedder");
  data_dir(pretrain);
  seed(pretrain);
  pretrain->add_option("--epochs", o.epochs, "Training epochs")->capture_default_str();
  pretrain->add_option("--lr", o.lr, "Learning rate")->capture_default_str();

  auto *train = app.add_subcommand("train", "Train per-CWE ensembles");
  data_dir(train);
  seed(train);
  train->add_option("--cwe", o.cwe, "CWE id or 'all'")->capture_default_str();

  auto *tune = app.add_subcommand("tune", "Grid-search learner hyperparameters");
  data_dir(tune);
  seed(tune);
  tune->add_option("--cwe", o.cwe, "CWE id")->required();
  tune->add_option("--learner", o.learner, "Learner to tune")
      ->check(CLI::IsMember({"gbt", "forest", "net", "all"}))
      ->capture_default_str();
  tune->add_flag("--joint", o.joint, "Tune the ensemble jointly over stored candidates");
  format(tune);

  auto *score = app.add_subcommand("score", "Score warnings with the trained ensembles");
  data_dir(score);
  score->add_option("--input", o.input, "Warnings JSONL file")->required()->check(CLI::ExistingFile);
  score->add_option("--out", o.out, "Output JSONL file")->required();

  auto *eval = app.add_subcommand("eval", "Validation metrics of the trained ensembles");
  data_dir(eval);
  eval->add_option("--cwe", o.cwe, "CWE id or 'all'")->capture_default_str();
  format(eval);

  auto *bands = app.add_subcommand("bands", "Priority band thresholds of the open pool");
  data_dir(bands);
  bands->add_option("--cwe", o.cwe, "CWE id")->required();
  format(bands);

  auto *serve = app.add_subcommand("serve", "Run the HTTP API");
  data_dir(serve);
  serve->add_option("--port", o.port, "Listen port")->capture_default_str();
  serve->add_option("--host", o.host, "Listen address")->capture_default_str();
  serve->add_option("--config", o.config_file, "key=value config file")
      ->check(CLI::ExistingFile);
  serve->add_option("--static-dir", o.static_dir, "Directory of UI files");

  auto *feedback = app.add_subcommand("feedback", "Record a developer verdict");
  data_dir(feedback);
  feedback->add_option("--id", o.id, "Warning id")->required();
  feedback->add_option("--verdict", o.verdict, "true_positive or false_positive")
      ->required()
      ->check(CLI::IsMember({"true_positive", "false_positive"}));
  feedback->add_option("--user", o.user, "User name")->required();
  feedback->add_option("--threshold", o.threshold, "Staged labels that make a retrain due")
      ->capture_default_str();

  auto *retrain = app.add_subcommand("retrain", "Retrain one CWE with staged verdicts");
  data_dir(retrain);
  seed(retrain);
  retrain->add_option("--cwe", o.cwe, "CWE id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*generate)
      return cmd_generate(o);
    if (*ingest)
      return cmd_ingest(o);
    if (*pretrain)
      return cmd_pretrain(o);
    if (*train)
      return cmd_train(o);
    if (*tune)
      return cmd_tune(o);
    if (*score)
      return cmd_score(o);
    if (*eval)
      return cmd_eval(o);
    if (*bands)
      return cmd_bands(o);
    if (*serve)
      return cmd_serve(o, *serve);
    if (*feedback)
      return cmd_feedback(o);
    if (*retrain)
      return cmd_retrain(o);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
