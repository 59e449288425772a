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

// Fully connected feedforward network with logistic units.
//
// Every layer stores one row-major matrix of shape (n_dst, n_src + 1). Row j
// holds the incoming weights of destination neuron j followed by its bias, so
// concatenating the layers' row-major storage yields the flat weight vector
// (layer-major, destination-major, bias last). PSO positions and the model
// file use exactly that layout.

#ifndef SWARMNET_NETWORK_HPP_
#define SWARMNET_NETWORK_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "swarmnet/errors.hpp"

namespace swarmnet {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using LayerMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Layer sizes of a network: inputs, one or more hidden layers, outputs.
class Topology {
 public:
  Topology(int input_count, std::vector<int> hidden_sizes, int output_count)
      : input_count_(input_count),
        hidden_sizes_(std::move(hidden_sizes)),
        output_count_(output_count) {
    if (input_count_ < 1 || output_count_ < 1) {
      throw ConfigError("topology: input and output counts must be >= 1");
    }
    if (hidden_sizes_.empty()) {
      throw ConfigError("topology: at least one hidden layer is required");
    }
    for (int h : hidden_sizes_) {
      if (h < 1) throw ConfigError("topology: hidden layer sizes must be >= 1");
    }
  }

  // Builds from the full size list {inputs, hidden..., outputs}.
  static Topology FromLayerSizes(const std::vector<int>& sizes) {
    if (sizes.size() < 3) {
      throw ConfigError("topology: need at least input, hidden and output sizes");
    }
    return Topology(sizes.front(),
                    std::vector<int>(sizes.begin() + 1, sizes.end() - 1),
                    sizes.back());
  }

  // Parses "14,12,8,1".
  static Topology Parse(const std::string& text);

  int input_count() const { return input_count_; }
  const std::vector<int>& hidden_sizes() const { return hidden_sizes_; }
  int output_count() const { return output_count_; }

  std::vector<int> layer_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(hidden_sizes_.size() + 2);
    sizes.push_back(input_count_);
    sizes.insert(sizes.end(), hidden_sizes_.begin(), hidden_sizes_.end());
    sizes.push_back(output_count_);
    return sizes;
  }

  // Number of weight layers (hidden layers + output layer).
  int weight_layer_count() const {
    return static_cast<int>(hidden_sizes_.size()) + 1;
  }

  std::string ToString() const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  int input_count_;
  std::vector<int> hidden_sizes_;
  int output_count_;
};

// Total number of weights and biases: sum over layer pairs of (n_src+1)*n_dst.
inline Eigen::Index flat_dimension(const Topology& topology) {
  const std::vector<int> sizes = topology.layer_sizes();
  Eigen::Index total = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    total += static_cast<Eigen::Index>(sizes[l] + 1) * sizes[l + 1];
  }
  return total;
}

// 1 / (1 + e^-x), clamped so the result stays strictly inside (0, 1) even
// where the exact value rounds to 0 or 1.
template <typename Scalar>
Scalar logistic(Scalar x) {
  using std::exp;
  Scalar y;
  if (x >= Scalar(0)) {
    y = Scalar(1) / (Scalar(1) + exp(-x));
  } else {
    const Scalar e = exp(x);
    y = e / (Scalar(1) + e);
  }
  constexpr Scalar kLow = std::numeric_limits<Scalar>::min();
  const Scalar kHigh = Scalar(1) - std::numeric_limits<Scalar>::epsilon() / 2;
  if (y < kLow) return kLow;
  if (y > kHigh) return kHigh;
  return y;
}

template <typename Scalar>
class Network {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = LayerMatrix<Scalar>;

  // All weights and biases zero.
  explicit Network(Topology topology) : topology_(std::move(topology)) {
    const std::vector<int> sizes = topology_.layer_sizes();
    layers_.reserve(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      layers_.push_back(MatrixType::Zero(sizes[l + 1], sizes[l] + 1));
    }
  }

  Network(Topology topology, std::vector<MatrixType> layers)
      : topology_(std::move(topology)), layers_(std::move(layers)) {
    const std::vector<int> sizes = topology_.layer_sizes();
    if (layers_.size() + 1 != sizes.size()) {
      throw DimensionError("network: layer count does not match topology");
    }
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      if (layers_[l].rows() != sizes[l + 1] ||
          layers_[l].cols() != sizes[l] + 1) {
        throw DimensionError("network: layer " + std::to_string(l) +
                             " has the wrong shape");
      }
    }
  }

  const Topology& topology() const { return topology_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }

  // Weights of layer l; column n_src is the bias.
  const MatrixType& layer(int l) const { return layers_[l]; }
  MatrixType& layer(int l) { return layers_[l]; }

  Eigen::Index parameter_count() const {
    Eigen::Index n = 0;
    for (const auto& m : layers_) n += m.size();
    return n;
  }

  template <typename Other>
  Network<Other> cast() const {
    std::vector<LayerMatrix<Other>> layers;
    layers.reserve(layers_.size());
    for (const auto& m : layers_) layers.push_back(m.template cast<Other>());
    return Network<Other>(topology_, std::move(layers));
  }

 private:
  Topology topology_;
  std::vector<MatrixType> layers_;
};

// Neuron outputs of every layer for one input; layers[0] is the input itself.
template <typename Scalar>
struct Activations {
  std::vector<Vector<Scalar>> layers;

  const Vector<Scalar>& output() const { return layers.back(); }
};

template <typename Scalar>
Activations<Scalar> forward_trace(const Network<Scalar>& network,
                                  const std::type_identity_t<Vector<Scalar>>& features) {
  if (features.size() != network.topology().input_count()) {
    throw DimensionError("forward: expected " +
                         std::to_string(network.topology().input_count()) +
                         " features, got " + std::to_string(features.size()));
  }
  Activations<Scalar> trace;
  trace.layers.reserve(network.layer_count() + 1);
  trace.layers.push_back(features);
  for (int l = 0; l < network.layer_count(); ++l) {
    const auto& w = network.layer(l);
    const Eigen::Index n_src = w.cols() - 1;
    const Vector<Scalar>& x = trace.layers.back();
    Vector<Scalar> net = w.leftCols(n_src) * x + w.col(n_src);
    trace.layers.push_back(net.unaryExpr(&logistic<Scalar>));
  }
  return trace;
}

template <typename Scalar>
Vector<Scalar> forward(const Network<Scalar>& network,
                       const std::type_identity_t<Vector<Scalar>>& features) {
  return forward_trace(network, features).output();
}

// Forward pass over many samples at once. `inputs` holds one sample per row;
// the result holds one output vector per row.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> forward_batch(
    const Network<Scalar>& network,
    const std::type_identity_t<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& inputs) {
  if (inputs.cols() != network.topology().input_count()) {
    throw DimensionError("forward_batch: feature width does not match topology");
  }
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat a = inputs.transpose();
  for (int l = 0; l < network.layer_count(); ++l) {
    const auto& w = network.layer(l);
    const Eigen::Index n_src = w.cols() - 1;
    Mat net = w.leftCols(n_src) * a;
    net.colwise() += w.col(n_src);
    a = net.unaryExpr(&logistic<Scalar>);
  }
  return a.transpose();
}

// Flat weight vector tied to the topology it encodes.
template <typename Scalar>
class BasicWeightVector {
 public:
  BasicWeightVector(Topology topology, Vector<Scalar> values)
      : topology_(std::move(topology)), values_(std::move(values)) {
    if (values_.size() != flat_dimension(topology_)) {
      throw DimensionError("weight vector: length " +
                           std::to_string(values_.size()) + " does not match " +
                           std::to_string(flat_dimension(topology_)));
    }
  }

  const Topology& topology() const { return topology_; }
  const Vector<Scalar>& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  Topology topology_;
  Vector<Scalar> values_;
};

using WeightVector = BasicWeightVector<double>;

template <typename Scalar>
BasicWeightVector<Scalar> encode(const Network<Scalar>& network) {
  Vector<Scalar> flat(network.parameter_count());
  Eigen::Index offset = 0;
  for (int l = 0; l < network.layer_count(); ++l) {
    const auto& w = network.layer(l);
    flat.segment(offset, w.size()) =
        Eigen::Map<const Vector<Scalar>>(w.data(), w.size());
    offset += w.size();
  }
  return BasicWeightVector<Scalar>(network.topology(), std::move(flat));
}

template <typename Scalar, typename Derived>
Network<Scalar> decode(const Topology& topology,
                       const Eigen::MatrixBase<Derived>& values) {
  if (values.size() != flat_dimension(topology)) {
    throw DimensionError("decode: vector length " +
                         std::to_string(values.size()) +
                         " does not match topology dimension " +
                         std::to_string(flat_dimension(topology)));
  }
  Network<Scalar> network(topology);
  Eigen::Index offset = 0;
  for (int l = 0; l < network.layer_count(); ++l) {
    auto& w = network.layer(l);
    Eigen::Map<Vector<Scalar>>(w.data(), w.size()) =
        values.segment(offset, w.size()).template cast<Scalar>();
    offset += w.size();
  }
  return network;
}

inline Network<double> decode(const WeightVector& weights) {
  return decode<double>(weights.topology(), weights.values());
}

// Weights and biases drawn uniformly from [low, high].
template <typename Scalar = double, typename Rng>
Network<Scalar> random_network(const Topology& topology, Rng& rng,
                               double low = -1.0, double high = 1.0) {
  std::uniform_real_distribution<double> dist(low, high);
  Vector<Scalar> flat(flat_dimension(topology));
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat[i] = Scalar(dist(rng));
  return decode<Scalar>(topology, flat);
}

// Samples as rows: inputs (N x n_in) and targets (N x n_out).
struct TrainingSet {
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;

  Eigen::Index size() const { return inputs.rows(); }
  bool empty() const { return inputs.rows() == 0; }
};

// Sum over samples of the squared output error, divided by the sample count.
template <typename Scalar>
Scalar mean_squared_error(const Network<Scalar>& network,
                          const TrainingSet& set) {
  if (set.empty()) throw DataError("mean squared error: empty sample set");
  if (set.targets.rows() != set.inputs.rows() ||
      set.targets.cols() != network.topology().output_count()) {
    throw DimensionError("mean squared error: targets do not match topology");
  }
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat predicted = forward_batch<Scalar>(network, set.inputs.cast<Scalar>());
  const Scalar sum = (predicted - set.targets.cast<Scalar>()).squaredNorm();
  return sum / Scalar(set.size());
}

}  // namespace swarmnet

#endif  // SWARMNET_NETWORK_HPP_
