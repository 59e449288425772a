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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"

namespace swarmnet {
namespace {

// Flat weight change produced by one momentum-free update on (x, d).
Eigen::VectorXd UpdateStep(const Network<double>& net, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& d, double lr) {
  Network<double> updated = net;
  const auto act = forward_trace(net, x);
  WeightChanges changes = WeightChanges::Zero(net);
  BpConfig config;
  config.learning_rate = lr;
  config.momentum = 0.0;
  apply_update(updated, compute_deltas(net, act, d), act, config, changes);
  return encode(updated).values() - encode(net).values();
}

TrainingSet XorSet() {
  TrainingSet set;
  set.inputs.resize(4, 2);
  set.inputs << 0, 0, 0, 1, 1, 0, 1, 1;
  set.targets.resize(4, 1);
  set.targets << 0, 1, 1, 0;
  return set;
}

TEST(DeltaTest, OutputDeltaExamples) {
  for (double y : {0.1, 0.5, 0.93}) EXPECT_EQ(output_delta(y, y), 0.0);
  EXPECT_DOUBLE_EQ(output_delta(0.5, 1.0), 0.125);
  EXPECT_DOUBLE_EQ(output_delta(0.8, 0.3), -0.08);
}

TEST(DeltaTest, HiddenDeltaExamples) {
  EXPECT_EQ(hidden_delta(0.7, {}), 0.0);
  const std::vector<std::pair<double, double>> zero = {{0.0, 3.0}, {0.0, -1.0}};
  EXPECT_EQ(hidden_delta(0.7, zero), 0.0);
  const std::vector<std::pair<double, double>> single = {{0.2, 1.0}};
  EXPECT_DOUBLE_EQ(hidden_delta(0.5, single), 0.05);
  const std::vector<std::pair<double, double>> pair = {{0.1, 1.0}, {-0.1, 0.5}};
  EXPECT_NEAR(hidden_delta(0.9, pair), 0.0045, 1e-15);
}

TEST(DeltaTest, VectorizedDeltasMatchScalarRules) {
  std::mt19937_64 rng(9);
  const Network<double> net = random_network(Topology(3, {4, 3}, 2), rng);
  const Eigen::VectorXd x = Eigen::VectorXd::Random(3);
  const Eigen::VectorXd d = Eigen::Vector2d(0.2, 0.9);
  const auto act = forward_trace(net, x);
  const Deltas deltas = compute_deltas(net, act, d);
  for (int j = 0; j < 2; ++j) {
    EXPECT_DOUBLE_EQ(deltas[2][j], output_delta(act.layers[3][j], d[j]));
  }
  for (int l = 1; l >= 0; --l) {
    for (Eigen::Index j = 0; j < deltas[l].size(); ++j) {
      std::vector<std::pair<double, double>> downstream;
      for (Eigen::Index k = 0; k < deltas[l + 1].size(); ++k) {
        downstream.emplace_back(deltas[l + 1][k], net.layer(l + 1)(k, j));
      }
      EXPECT_NEAR(deltas[l][j], hidden_delta(act.layers[l + 1][j], downstream), 1e-16);
    }
  }
}

TEST(ApplyUpdateTest, SingleWeightHandEvaluation) {
  // One hidden unit; its incoming weight 0.1 sees x = 0.5 and delta 0.2.
  Network<double> net(Topology(1, {1}, 1));
  net.layer(0)(0, 0) = 0.1;
  Activations<double> act;
  act.layers = {Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 0.6),
                Eigen::VectorXd::Constant(1, 0.4)};
  const Deltas deltas = {Eigen::VectorXd::Constant(1, 0.2), Eigen::VectorXd::Zero(1)};
  BpConfig config;
  config.learning_rate = 0.5;
  config.momentum = 0.0;
  WeightChanges changes = WeightChanges::Zero(net);
  apply_update(net, deltas, act, config, changes);
  EXPECT_DOUBLE_EQ(net.layer(0)(0, 0), 0.15);
  EXPECT_DOUBLE_EQ(net.layer(0)(0, 1), 0.1);  // bias sees x = 1
}

TEST(ApplyUpdateTest, ZeroMomentumIsBitIdenticalToPlainStep) {
  std::mt19937_64 rng(31);
  Network<double> net = random_network(Topology(4, {5}, 1), rng);
  BpConfig config;
  config.learning_rate = 0.37;
  config.momentum = 0.0;
  WeightChanges changes = WeightChanges::Zero(net);
  for (int step = 0; step < 10; ++step) {
    const Eigen::VectorXd x = Eigen::VectorXd::Random(4);
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, 0.3);
    const auto act = forward_trace(net, x);
    const Deltas deltas = compute_deltas(net, act, d);
    // w + lr * delta_j * x_i, written out per weight.
    Network<double> expected = net;
    for (int l = 0; l < net.layer_count(); ++l) {
      auto& w = expected.layer(l);
      for (Eigen::Index j = 0; j < w.rows(); ++j) {
        for (Eigen::Index i = 0; i < w.cols(); ++i) {
          const double xi = i + 1 == w.cols() ? 1.0 : act.layers[l][i];
          w(j, i) = w(j, i) + config.learning_rate * deltas[l][j] * xi;
        }
      }
    }
    apply_update(net, deltas, act, config, changes);
    ASSERT_EQ(encode(net).values(), encode(expected).values()) << "step " << step;
  }
}

TEST(ApplyUpdateTest, ZeroRateZeroMomentumLeavesWeightsUnchanged) {
  std::mt19937_64 rng(2);
  Network<double> net = random_network(Topology(2, {4}, 1), rng);
  const Eigen::VectorXd before = encode(net).values();
  BpConfig config;
  config.learning_rate = 0.0;
  config.momentum = 0.0;
  WeightChanges changes = WeightChanges::Zero(net);
  const TrainingSet set = XorSet();
  for (int epoch = 0; epoch < 5; ++epoch) {
    for (Eigen::Index i = 0; i < set.size(); ++i) {
      const Eigen::VectorXd x = set.inputs.row(i).transpose();
      const auto act = forward_trace(net, x);
      apply_update(net, compute_deltas(net, act, set.targets.row(i).transpose()), act,
                   config, changes);
    }
  }
  EXPECT_EQ(encode(net).values(), before);
}

TEST(ApplyUpdateTest, MomentumAddsPreviousChange) {
  std::mt19937_64 rng(4);
  Network<double> net = random_network(Topology(2, {3}, 1), rng);
  BpConfig config;
  config.learning_rate = 0.5;
  config.momentum = 0.9;
  WeightChanges changes = WeightChanges::Zero(net);
  const Eigen::VectorXd x = Eigen::Vector2d(0.3, 0.8);
  const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, 0.9);

  auto act = forward_trace(net, x);
  apply_update(net, compute_deltas(net, act, d), act, config, changes);
  const Eigen::VectorXd w1 = encode(net).values();
  const WeightChanges first = changes;

  act = forward_trace(net, x);
  const Eigen::VectorXd plain = UpdateStep(net, x, d, config.learning_rate);
  apply_update(net, compute_deltas(net, act, d), act, config, changes);
  Eigen::VectorXd previous(w1.size());
  Eigen::Index offset = 0;
  for (const auto& m : first.layers) {
    previous.segment(offset, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    offset += m.size();
  }
  EXPECT_TRUE((encode(net).values() - (w1 + plain + 0.9 * previous)).cwiseAbs().maxCoeff() <
              1e-15);
}

// Relative error of the backprop step against -lr * dE/dw on random networks.
TEST(GradientTest, UpdateMatchesFiniteDifferences) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> width(1, 14);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lr = 0.3;
  double worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const Topology t(width(rng), {width(rng) % 12 + 1, width(rng) % 8 + 1}, 1);
    const Network<double> net = random_network(t, rng);
    Eigen::VectorXd x(t.input_count());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = unit(rng);
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, 0.1 * (1 + trial % 5));
    const Eigen::VectorXd step = UpdateStep(net, x, d, lr);
    const auto grad = testing::finite_difference_gradient(net, x, d);
    for (Eigen::Index k = 0; k < step.size(); ++k) {
      const long double expected = -lr * grad[k];
      const long double scale = std::max(std::abs(expected), std::abs((long double)step[k]));
      if (scale == 0.0L) continue;
      worst = std::max(worst, double(std::abs(step[k] - expected) / scale));
    }
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(TrainBpTest, HugeTargetErrorStopsAfterOneEpoch) {
  std::mt19937_64 rng(1);
  BpConfig config;
  config.target_error = 1e300;
  const auto [net, trace] = train_bp(random_network(Topology(2, {3}, 1), rng), XorSet(), config);
  EXPECT_EQ(trace.epochs_run, 1);
  EXPECT_EQ(trace.mse.size(), 1u);
  EXPECT_EQ(trace.stop_reason, StopReason::kTargetError);
}

TEST(TrainBpTest, MaxEpochsBoundsTrace) {
  std::mt19937_64 rng(1);
  BpConfig config;
  config.max_epochs = 3;
  const auto [net, trace] = train_bp(random_network(Topology(2, {3}, 1), rng), XorSet(), config);
  EXPECT_EQ(trace.epochs_run, 3);
  EXPECT_EQ(trace.mse.size(), 3u);
  EXPECT_EQ(trace.stop_reason, StopReason::kMaxEpochs);
}

TEST(TrainBpTest, RejectsEmptyAndMismatchedSets) {
  const Network<double> net(Topology(2, {3}, 1));
  EXPECT_THROW(train_bp(net, TrainingSet{}, BpConfig{}), DataError);
  TrainingSet wide = XorSet();
  wide.inputs.conservativeResize(4, 3);
  EXPECT_THROW(train_bp(net, wide, BpConfig{}), DimensionError);
  BpConfig bad;
  bad.momentum = 1.0;
  EXPECT_THROW(train_bp(net, XorSet(), bad), ConfigError);
}

TEST(TrainBpTest, DeterministicForSameSeed) {
  std::mt19937_64 rng(8);
  const Network<double> init = random_network(Topology(2, {4}, 1), rng);
  BpConfig config;
  config.max_epochs = 50;
  config.seed = 99;
  const auto a = train_bp(init, XorSet(), config);
  const auto b = train_bp(init, XorSet(), config);
  EXPECT_EQ(a.second.mse, b.second.mse);
  EXPECT_EQ(encode(a.first).values(), encode(b.first).values());
}

// Online descent driven by finite-difference gradients instead of deltas.
double FiniteDifferenceDescent(Network<double> net, const TrainingSet& set, double lr,
                               double momentum, int epochs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> order = {0, 1, 2, 3};
  Eigen::VectorXd previous = Eigen::VectorXd::Zero(net.parameter_count());
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index i : order) {
      const auto grad = testing::finite_difference_gradient(
          net, set.inputs.row(i).transpose(), set.targets.row(i).transpose());
      const Eigen::VectorXd change = -lr * grad.cast<double>() + momentum * previous;
      net = decode<double>(net.topology(), encode(net).values() + change);
      previous = change;
    }
  }
  return mean_squared_error(net, set);
}

TEST(TrainBpTest, LearnsXor) {
  std::mt19937_64 rng(2024);
  const Network<double> init = random_network(Topology(2, {4}, 1), rng);
  BpConfig config;
  config.learning_rate = 0.5;
  config.momentum = 0.9;
  config.max_epochs = 5000;
  config.target_error = 0.0;
  config.seed = 3;
  const auto [net, trace] = train_bp(init, XorSet(), config);
  EXPECT_LT(trace.mse.back(), 0.01);

  // The same schedule driven by numerical gradients must also solve XOR.
  EXPECT_LT(FiniteDifferenceDescent(init, XorSet(), 0.5, 0.9, 5000, 3), 0.01);
}

}  // namespace
}  // namespace swarmnet
