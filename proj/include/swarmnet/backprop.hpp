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

// Online gradient-descent training with optional momentum.

#ifndef SWARMNET_BACKPROP_HPP_
#define SWARMNET_BACKPROP_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "swarmnet/network.hpp"

namespace swarmnet {

struct BpConfig {
  double learning_rate = 0.3;
  double momentum = 0.9;
  int max_epochs = 1000;
  // Training stops once the epoch MSE is <= this value.
  double target_error = 0.0;
  std::uint64_t seed = 1;

  void Validate() const;
};

enum class StopReason { kMaxEpochs, kTargetError };

const char* to_string(StopReason reason);

struct TrainTrace {
  std::vector<double> mse;  // one entry per epoch
  int epochs_run = 0;
  StopReason stop_reason = StopReason::kMaxEpochs;
};

// Error term of an output neuron: y(1-y)(d-y).
inline double output_delta(double y, double d) { return y * (1.0 - y) * (d - y); }

// Error term of a hidden neuron from its own output x_j and the (delta_k,
// w_jk) pairs of every neuron it feeds.
inline double hidden_delta(double x_j,
                           std::span<const std::pair<double, double>> downstream) {
  double sum = 0.0;
  for (const auto& [delta_k, w_jk] : downstream) sum += delta_k * w_jk;
  return x_j * (1.0 - x_j) * sum;
}

// Per-layer error terms, aligned with network layers (deltas[l] belongs to
// the destination neurons of weight layer l).
using Deltas = std::vector<Eigen::VectorXd>;

Deltas compute_deltas(const Network<double>& network,
                      const Activations<double>& activations,
                      const Eigen::VectorXd& target);

// Last applied weight change per layer, w(t) - w(t-1).
struct WeightChanges {
  std::vector<LayerMatrix<double>> layers;

  static WeightChanges Zero(const Network<double>& network);
};

// w(t+1) = w(t) + lr * delta_j * x_i + momentum * (w(t) - w(t-1)); biases use
// x_i = 1. Updates `network` and overwrites `changes` with the new step.
void apply_update(Network<double>& network, const Deltas& deltas,
                  const Activations<double>& activations,
                  const BpConfig& config, WeightChanges& changes);

// Per-sample updates over a seeded shuffle each epoch until max_epochs or the
// epoch MSE reaches target_error.
std::pair<Network<double>, TrainTrace> train_bp(Network<double> network,
                                                const TrainingSet& train_set,
                                                const BpConfig& config);

}  // namespace swarmnet

#endif  // SWARMNET_BACKPROP_HPP_
