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

#include "satriage/learners/learner.hpp"

#include <algorithm>
#include <cmath>

#include "satriage/common/error.hpp"

namespace satriage::learners {
namespace {

Json matrix_json(const Eigen::MatrixXd &m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from(const Json &value) {
  const auto rows = value.at("rows").get<Eigen::Index>();
  const auto cols = value.at("cols").get<Eigen::Index>();
  const auto &data = value.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols))
    throw SchemaError("matrix data does not match its shape");
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = data[k++].get<double>();
  return m;
}

Json trees_json(const std::vector<Tree> &trees) {
  Json out = Json::array();
  for (const auto &tree : trees)
    out.push_back(tree.to_json());
  return out;
}

std::vector<Tree> trees_from(const Json &value) {
  std::vector<Tree> trees;
  for (const auto &item : value)
    trees.push_back(Tree::from_json(item));
  return trees;
}

Json params_json(const LearnerModel &m) {
  if (const auto *gbt = std::get_if<GbtModel>(&m.model))
    return {{"base_margin", gbt->base_margin},
            {"trees", trees_json(gbt->trees)},
            {"round_loss", gbt->round_loss}};
  if (const auto *forest = std::get_if<ForestModel>(&m.model))
    return {{"trees", trees_json(forest->trees)}};
  const auto &net = std::get<NetModel>(m.model);
  Json layers = Json::array();
  for (const auto &layer : net.layers)
    layers.push_back({{"weights", matrix_json(layer.weights)},
                      {"bias", matrix_json(layer.bias)}});
  return {{"layers", std::move(layers)}};
}

} // namespace

double LearnerModel::predict_proba(std::span<const double> x) const {
  if (x.size() != input_dim)
    throw Error("input dimension mismatch: expected " + std::to_string(input_dim) +
                ", got " + std::to_string(x.size()));
  const double p = std::visit([&](const auto &m) { return m.predict_proba(x); }, model);
  return std::isfinite(p) ? std::clamp(p, 0.0, 1.0) : 0.5;
}

LearnerModel train_learner(LearnerKind kind, const FeatureMatrix &x, std::span<const int> y,
                           const HyperTriple &hyper, std::uint64_t seed) {
  LearnerModel out;
  out.kind = kind;
  out.input_dim = static_cast<std::size_t>(x.cols());
  out.seed = seed;
  switch (kind) {
  case LearnerKind::gbt:
    out.hyper = to_json(hyper.gbt);
    out.model = train_gbt(x, y, hyper.gbt);
    break;
  case LearnerKind::forest:
    out.hyper = to_json(hyper.forest);
    out.model = train_forest(x, y, hyper.forest, seed);
    break;
  case LearnerKind::net:
    out.hyper = to_json(hyper.net);
    out.model = train_net(x, y, hyper.net, seed);
    break;
  }
  return out;
}

Json to_json(const LearnerModel &model) {
  return {{"kind", std::string(to_string(model.kind))},
          {"input_dim", model.input_dim},
          {"seed", model.seed},
          {"hyper", model.hyper},
          {"final_loss", model.final_loss},
          {"params", params_json(model)}};
}

LearnerModel learner_from_json(const Json &value) {
  try {
    LearnerModel out;
    out.kind = parse_learner_kind(value.at("kind").get<std::string>());
    out.input_dim = value.at("input_dim").get<std::size_t>();
    out.seed = value.at("seed").get<std::uint64_t>();
    out.hyper = value.at("hyper");
    out.final_loss = value.at("final_loss").get<double>();
    const auto &params = value.at("params");
    switch (out.kind) {
    case LearnerKind::gbt: {
      GbtModel gbt;
      gbt.base_margin = params.at("base_margin").get<double>();
      gbt.trees = trees_from(params.at("trees"));
      gbt.round_loss = params.value("round_loss", std::vector<double>{});
      out.model = std::move(gbt);
      break;
    }
    case LearnerKind::forest:
      out.model = ForestModel{trees_from(params.at("trees"))};
      break;
    case LearnerKind::net: {
      NetModel net;
      for (const auto &layer : params.at("layers")) {
        DenseLayer dense{matrix_from(layer.at("weights")), matrix_from(layer.at("bias"))};
        const auto expected_in = net.layers.empty()
                                     ? static_cast<Eigen::Index>(out.input_dim)
                                     : net.layers.back().weights.rows();
        if (dense.weights.cols() != expected_in || dense.bias.size() != dense.weights.rows())
          throw SchemaError("network layer shapes are inconsistent");
        net.layers.push_back(std::move(dense));
      }
      if (net.layers.empty() || net.layers.back().weights.rows() != 1)
        throw SchemaError("network must end in a single output unit");
      out.model = std::move(net);
      break;
    }
    }
    return out;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("malformed learner: ") + e.what());
  }
}

} // namespace satriage::learners
