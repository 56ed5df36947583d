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

#include "satriage/learners/hyper.hpp"

#include "satriage/common/error.hpp"

namespace satriage::learners {

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
  case LearnerKind::gbt:
    return "gbt";
  case LearnerKind::forest:
    return "forest";
  case LearnerKind::net:
    return "net";
  }
  return "gbt";
}

LearnerKind parse_learner_kind(std::string_view text) {
  if (text == "gbt")
    return LearnerKind::gbt;
  if (text == "forest")
    return LearnerKind::forest;
  if (text == "net")
    return LearnerKind::net;
  throw SchemaError("unknown learner kind " + std::string(text));
}

std::string_view to_string(Optimizer optimizer) {
  switch (optimizer) {
  case Optimizer::adam:
    return "Adam";
  case Optimizer::sgd:
    return "SGD";
  case Optimizer::adadelta:
    return "AdaDelta";
  }
  return "Adam";
}

Optimizer parse_optimizer(std::string_view text) {
  if (text == "Adam" || text == "adam")
    return Optimizer::adam;
  if (text == "SGD" || text == "sgd")
    return Optimizer::sgd;
  if (text == "AdaDelta" || text == "adadelta")
    return Optimizer::adadelta;
  throw SchemaError("unknown optimizer " + std::string(text));
}

double default_initial_lr(Optimizer optimizer) {
  switch (optimizer) {
  case Optimizer::adam:
    return 0.001;
  case Optimizer::sgd:
    return 0.01;
  case Optimizer::adadelta:
    return 1.0;
  }
  return 0.001;
}

Json to_json(const GbtHyper &h) {
  return Json{{"max_depth", h.max_depth},     {"min_child_weight", h.min_child_weight},
              {"l2_lambda", h.l2_lambda},     {"n_rounds", h.n_rounds},
              {"eta", h.eta},                 {"base_score", h.base_score}};
}

Json to_json(const ForestHyper &h) {
  return Json{{"min_samples_split", h.min_samples_split},
              {"max_depth", h.max_depth},
              {"n_estimators", h.n_estimators}};
}

Json to_json(const NetHyper &h) {
  return Json{{"lr_decay_factor", h.lr_decay_factor},
              {"optimizer", to_string(h.optimizer)},
              {"n_hidden", h.n_hidden},
              {"units", h.units},
              {"initial_lr", h.initial_lr},
              {"patience", h.patience},
              {"max_epochs", h.max_epochs},
              {"batch_size", h.batch_size}};
}

Json to_json(const HyperTriple &h) {
  return Json{{"gbt", to_json(h.gbt)}, {"forest", to_json(h.forest)}, {"net", to_json(h.net)}};
}

// Missing keys keep their defaults so hand-written override files can be
// partial.
GbtHyper gbt_hyper_from_json(const Json &value) {
  GbtHyper h;
  h.max_depth = value.value("max_depth", h.max_depth);
  h.min_child_weight = value.value("min_child_weight", h.min_child_weight);
  h.l2_lambda = value.value("l2_lambda", h.l2_lambda);
  h.n_rounds = value.value("n_rounds", h.n_rounds);
  h.eta = value.value("eta", h.eta);
  h.base_score = value.value("base_score", h.base_score);
  return h;
}

ForestHyper forest_hyper_from_json(const Json &value) {
  ForestHyper h;
  h.min_samples_split = value.value("min_samples_split", h.min_samples_split);
  h.max_depth = value.value("max_depth", h.max_depth);
  h.n_estimators = value.value("n_estimators", h.n_estimators);
  return h;
}

NetHyper net_hyper_from_json(const Json &value) {
  NetHyper h;
  h.lr_decay_factor = value.value("lr_decay_factor", h.lr_decay_factor);
  if (auto it = value.find("optimizer"); it != value.end())
    h.optimizer = parse_optimizer(it->get<std::string>());
  h.n_hidden = value.value("n_hidden", h.n_hidden);
  h.units = value.value("units", h.units);
  h.initial_lr = value.value("initial_lr", h.initial_lr);
  h.patience = value.value("patience", h.patience);
  h.max_epochs = value.value("max_epochs", h.max_epochs);
  h.batch_size = value.value("batch_size", h.batch_size);
  return h;
}

HyperTriple hyper_triple_from_json(const Json &value) {
  HyperTriple h;
  if (auto it = value.find("gbt"); it != value.end())
    h.gbt = gbt_hyper_from_json(*it);
  if (auto it = value.find("forest"); it != value.end())
    h.forest = forest_hyper_from_json(*it);
  if (auto it = value.find("net"); it != value.end())
    h.net = net_hyper_from_json(*it);
  return h;
}

} // namespace satriage::learners
