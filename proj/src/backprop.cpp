/*
 * Copyright 2026 The swarmnet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "swarmnet/backprop.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "swarmnet/errors.hpp"

namespace swarmnet {

void BpConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("bp: learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ConfigError("bp: momentum must lie in [0, 1)");
  }
  if (max_epochs < 1) throw ConfigError("bp: max_epochs must be >= 1");
  if (!(target_error >= 0.0)) throw ConfigError("bp: target error must be >= 0");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kMaxEpochs:
      return "max_epochs";
    case StopReason::kTargetError:
      return "target_error";
  }
  return "unknown";
}

Deltas compute_deltas(const Network<double>& network,
                      const Activations<double>& activations,
                      const Eigen::VectorXd& target) {
  const int layers = network.layer_count();
  if (target.size() != network.topology().output_count()) {
    throw DimensionError("backprop: target width does not match output count");
  }
  Deltas deltas(layers);
  const Eigen::VectorXd& y = activations.layers[layers];
  deltas[layers - 1] =
      (y.array() * (1.0 - y.array()) * (target - y).array()).matrix();
  for (int l = layers - 2; l >= 0; --l) {
    const auto& w_next = network.layer(l + 1);
    const Eigen::VectorXd& x = activations.layers[l + 1];
    const Eigen::VectorXd back =
        w_next.leftCols(w_next.cols() - 1).transpose() * deltas[l + 1];
    deltas[l] = (x.array() * (1.0 - x.array()) * back.array()).matrix();
  }
  return deltas;
}

WeightChanges WeightChanges::Zero(const Network<double>& network) {
  WeightChanges changes;
  for (int l = 0; l < network.layer_count(); ++l) {
    changes.layers.push_back(LayerMatrix<double>::Zero(
        network.layer(l).rows(), network.layer(l).cols()));
  }
  return changes;
}

void apply_update(Network<double>& network, const Deltas& deltas,
                  const Activations<double>& activations,
                  const BpConfig& config, WeightChanges& changes) {
  for (int l = 0; l < network.layer_count(); ++l) {
    auto& w = network.layer(l);
    auto& step = changes.layers[l];
    const Eigen::Index n_src = w.cols() - 1;
    const Eigen::VectorXd scaled = config.learning_rate * deltas[l];
    step.leftCols(n_src) = scaled * activations.layers[l].transpose() +
                           config.momentum * step.leftCols(n_src);
    step.col(n_src) = scaled + config.momentum * step.col(n_src);
    w += step;
  }
}

std::pair<Network<double>, TrainTrace> train_bp(Network<double> network,
                                                const TrainingSet& train_set,
                                                const BpConfig& config) {
  config.Validate();
  if (train_set.empty()) throw DataError("bp: empty training set");
  if (train_set.inputs.cols() != network.topology().input_count() ||
      train_set.targets.cols() != network.topology().output_count() ||
      train_set.targets.rows() != train_set.inputs.rows()) {
    throw DimensionError("bp: training set does not match network topology");
  }

  std::mt19937_64 rng(config.seed);
  std::vector<Eigen::Index> order(train_set.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  WeightChanges changes = WeightChanges::Zero(network);
  TrainTrace trace;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index i : order) {
      const Eigen::VectorXd x = train_set.inputs.row(i).transpose();
      const Eigen::VectorXd d = train_set.targets.row(i).transpose();
      const Activations<double> act = forward_trace(network, x);
      const Deltas deltas = compute_deltas(network, act, d);
      apply_update(network, deltas, act, config, changes);
    }
    const double mse = mean_squared_error(network, train_set);
    trace.mse.push_back(mse);
    trace.epochs_run = epoch + 1;
    if (mse <= config.target_error) {
      trace.stop_reason = StopReason::kTargetError;
      return {std::move(network), std::move(trace)};
    }
  }
  trace.stop_reason = StopReason::kMaxEpochs;
  return {std::move(network), std::move(trace)};
}

}  // namespace swarmnet
