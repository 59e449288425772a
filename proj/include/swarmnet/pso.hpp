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

// Inertia-weight particle swarm optimization.
//
// The swarm minimizes an arbitrary fitness over R^D. Personal and global
// bests are updated with strict `<` immediately after each particle moves,
// so a particle later in the epoch already sees improvements found earlier
// in the same epoch. Each particle draws from its own random stream derived
// from the master seed.

#ifndef SWARMNET_PSO_HPP_
#define SWARMNET_PSO_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "swarmnet/network.hpp"

namespace swarmnet {

struct Range {
  double low;
  double high;
};

struct PsoConfig {
  double inertia = 0.729;
  double c1 = 1.4944;
  double c2 = 1.4944;
  int particle_count = 24;
  int max_epochs = 500;
  // Stop once the global best error drops strictly below this value.
  double exit_error = 0.0;
  Range position_init{-1.0, 1.0};
  Range velocity_init{-0.5, 0.5};
  double velocity_clamp = 1.0;
  // One r1/r2 pair per particle update instead of one per dimension.
  bool scalar_r = false;
  std::uint64_t seed = 1;

  void Validate() const;
};

struct Particle {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  Eigen::VectorXd best_position;
  double best_error = std::numeric_limits<double>::infinity();
};

struct SwarmState {
  std::vector<Particle> particles;
  Eigen::VectorXd global_best_position;
  double global_best_error = std::numeric_limits<double>::infinity();
  int epoch = 0;
};

// v' = w*v + c1*r1*(best - x) + c2*r2*(global_best - x), elementwise, then
// clamped to [-velocity_clamp, velocity_clamp].
Eigen::VectorXd update_velocity(const Particle& particle,
                                const Eigen::VectorXd& global_best,
                                const PsoConfig& config,
                                const Eigen::VectorXd& r1,
                                const Eigen::VectorXd& r2);

inline Eigen::VectorXd update_position(const Eigen::VectorXd& position,
                                       const Eigen::VectorXd& velocity) {
  if (position.size() != velocity.size()) {
    throw DimensionError("pso: position and velocity lengths differ");
  }
  return position + velocity;
}

using Fitness = std::function<double(const Eigen::VectorXd&)>;

struct PsoResult {
  Eigen::VectorXd best_position;
  double best_error = std::numeric_limits<double>::infinity();
  // trace[0] is the global best after initialization, then one entry per
  // completed epoch.
  std::vector<double> trace;
  int epochs_run = 0;
};

class SwarmOptimizer {
 public:
  SwarmOptimizer(Fitness fitness, Eigen::Index dimension, PsoConfig config);

  // Random positions and velocities, first fitness scan.
  void Initialize();
  // True when max_epochs is reached or the global best beats exit_error.
  bool Done() const;
  // One epoch: every particle moves once, in a seeded random order.
  void Step();

  PsoResult Run();

  const SwarmState& state() const { return state_; }
  const PsoConfig& config() const { return config_; }

 private:
  void MoveParticle(std::size_t index);

  Fitness fitness_;
  Eigen::Index dimension_;
  PsoConfig config_;
  SwarmState state_;
  std::mt19937_64 order_rng_;
  std::vector<std::mt19937_64> particle_rngs_;
  std::vector<double> trace_;
};

PsoResult minimize(const Fitness& fitness, Eigen::Index dimension,
                   const PsoConfig& config);

// Training-set MSE of the network decoded from `position`.
double mse_fitness(const TrainingSet& train_set, const Topology& topology,
                   const Eigen::VectorXd& position);

struct NetworkPsoResult {
  WeightVector best;
  double best_error;
  std::vector<double> trace;
  int epochs_run;
};

NetworkPsoResult pso_train(const TrainingSet& train_set,
                           const Topology& topology, const PsoConfig& config);

}  // namespace swarmnet

#endif  // SWARMNET_PSO_HPP_
