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

#include "swarmnet/pso.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "swarmnet/errors.hpp"

namespace swarmnet {
namespace {

std::mt19937_64 DeriveStream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

Eigen::VectorXd UniformVector(Eigen::Index n, Range range,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(range.low, range.high);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

void PsoConfig::Validate() const {
  if (particle_count < 2) throw ConfigError("pso: particle_count must be >= 2");
  if (max_epochs < 1) throw ConfigError("pso: max_epochs must be >= 1");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw ConfigError("pso: c1 and c2 must be >= 0");
  if (!(position_init.low < position_init.high)) {
    throw ConfigError("pso: position init range must have low < high");
  }
  if (!(velocity_init.low < velocity_init.high)) {
    throw ConfigError("pso: velocity init range must have low < high");
  }
  if (!(velocity_clamp > 0.0)) throw ConfigError("pso: velocity clamp must be > 0");
  if (!(exit_error >= 0.0)) throw ConfigError("pso: exit error must be >= 0");
}

Eigen::VectorXd update_velocity(const Particle& particle,
                                const Eigen::VectorXd& global_best,
                                const PsoConfig& config,
                                const Eigen::VectorXd& r1,
                                const Eigen::VectorXd& r2) {
  const Eigen::Index n = particle.position.size();
  if (particle.velocity.size() != n || particle.best_position.size() != n ||
      global_best.size() != n || r1.size() != n || r2.size() != n) {
    throw DimensionError("pso: velocity update operands differ in length");
  }
  const Eigen::ArrayXd v =
      config.inertia * particle.velocity.array() +
      config.c1 * r1.array() * (particle.best_position - particle.position).array() +
      config.c2 * r2.array() * (global_best - particle.position).array();
  return v.cwiseMax(-config.velocity_clamp).cwiseMin(config.velocity_clamp).matrix();
}

SwarmOptimizer::SwarmOptimizer(Fitness fitness, Eigen::Index dimension,
                               PsoConfig config)
    : fitness_(std::move(fitness)),
      dimension_(dimension),
      config_(config),
      order_rng_(DeriveStream(config.seed, 0)) {
  config_.Validate();
  if (dimension_ < 1) throw ConfigError("pso: dimension must be >= 1");
  particle_rngs_.reserve(config_.particle_count);
  for (int i = 0; i < config_.particle_count; ++i) {
    particle_rngs_.push_back(
        DeriveStream(config_.seed, static_cast<std::uint32_t>(i) + 1));
  }
}

void SwarmOptimizer::Initialize() {
  state_ = SwarmState{};
  state_.particles.resize(config_.particle_count);
  for (int i = 0; i < config_.particle_count; ++i) {
    Particle& p = state_.particles[i];
    p.position = UniformVector(dimension_, config_.position_init, particle_rngs_[i]);
    p.velocity = UniformVector(dimension_, config_.velocity_init, particle_rngs_[i]);
    p.best_position = p.position;
    p.best_error = fitness_(p.position);
    if (p.best_error < state_.global_best_error) {
      state_.global_best_error = p.best_error;
      state_.global_best_position = p.position;
    }
  }
  if (state_.global_best_position.size() == 0) {
    // Every initial fitness was +inf or NaN; keep a valid position anyway.
    state_.global_best_position = state_.particles.front().position;
  }
  trace_.assign(1, state_.global_best_error);
}

bool SwarmOptimizer::Done() const {
  return state_.epoch >= config_.max_epochs ||
         state_.global_best_error < config_.exit_error;
}

void SwarmOptimizer::MoveParticle(std::size_t index) {
  Particle& p = state_.particles[index];
  std::mt19937_64& rng = particle_rngs_[index];
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd r1(dimension_);
  Eigen::VectorXd r2(dimension_);
  if (config_.scalar_r) {
    r1.setConstant(unit(rng));
    r2.setConstant(unit(rng));
  } else {
    for (Eigen::Index d = 0; d < dimension_; ++d) {
      r1[d] = unit(rng);
      r2[d] = unit(rng);
    }
  }
  p.velocity = update_velocity(p, state_.global_best_position, config_, r1, r2);
  p.position = update_position(p.position, p.velocity);
  const double error = fitness_(p.position);
  if (error < p.best_error) {
    p.best_error = error;
    p.best_position = p.position;
  }
  if (error < state_.global_best_error) {
    state_.global_best_error = error;
    state_.global_best_position = p.position;
  }
}

void SwarmOptimizer::Step() {
  std::vector<std::size_t> order(state_.particles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), order_rng_);
  for (std::size_t i : order) MoveParticle(i);
  ++state_.epoch;
  trace_.push_back(state_.global_best_error);
}

PsoResult SwarmOptimizer::Run() {
  Initialize();
  while (!Done()) Step();
  PsoResult result;
  result.best_position = state_.global_best_position;
  result.best_error = state_.global_best_error;
  result.trace = trace_;
  result.epochs_run = state_.epoch;
  return result;
}

PsoResult minimize(const Fitness& fitness, Eigen::Index dimension,
                   const PsoConfig& config) {
  SwarmOptimizer optimizer(fitness, dimension, config);
  return optimizer.Run();
}

double mse_fitness(const TrainingSet& train_set, const Topology& topology,
                   const Eigen::VectorXd& position) {
  if (train_set.empty()) throw DataError("pso: empty training set");
  return mean_squared_error(decode<double>(topology, position), train_set);
}

NetworkPsoResult pso_train(const TrainingSet& train_set,
                           const Topology& topology, const PsoConfig& config) {
  if (train_set.empty()) throw DataError("pso: empty training set");
  if (train_set.inputs.cols() != topology.input_count() ||
      train_set.targets.cols() != topology.output_count()) {
    throw DimensionError("pso: training set does not match topology " +
                         topology.ToString());
  }
  PsoResult r = minimize(
      [&](const Eigen::VectorXd& position) {
        return mse_fitness(train_set, topology, position);
      },
      flat_dimension(topology), config);
  return NetworkPsoResult{WeightVector(topology, std::move(r.best_position)),
                          r.best_error, std::move(r.trace), r.epochs_run};
}

}  // namespace swarmnet
