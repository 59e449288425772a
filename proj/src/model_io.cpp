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

#include "swarmnet/model_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace swarmnet {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

int ParseSize(const std::string& token) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("topology: invalid layer size '" + token + "'");
  }
  return value;
}

}  // namespace

Topology Topology::Parse(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) sizes.push_back(ParseSize(Trim(token)));
  return FromLayerSizes(sizes);
}

std::string Topology::ToString() const {
  std::string out;
  for (int size : layer_sizes()) {
    if (!out.empty()) out += ',';
    out += std::to_string(size);
  }
  return out;
}

void write_model(std::ostream& out, const Network<double>& network) {
  out << kModelMagic << '\n' << network.topology().ToString() << '\n';
  const WeightVector flat = encode(network);
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    out << fmt::format("{:.17g}\n", flat.values()[i]);
  }
}

Network<double> read_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kModelMagic) {
    throw DataError("model: missing 'swarmnet-model v1' header");
  }
  if (!std::getline(in, line)) throw DataError("model: missing topology line");
  const Topology topology = Topology::Parse(Trim(line));
  const Eigen::Index dim = flat_dimension(topology);
  Eigen::VectorXd values(dim);
  Eigen::Index count = 0;
  int line_number = 2;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string token = Trim(line);
    if (token.empty()) continue;
    if (count == dim) {
      throw DataError(fmt::format("model: more than {} weights (line {})", dim,
                                  line_number));
    }
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw DataError(fmt::format("model: bad weight '{}' on line {}", token,
                                  line_number));
    }
    values[count++] = value;
  }
  if (count != dim) {
    throw DimensionError(fmt::format(
        "model: expected {} weights for topology {}, found {}", dim,
        topology.ToString(), count));
  }
  return decode<double>(topology, values);
}

void save_model(const std::string& path, const Network<double>& network) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_model(out, network);
  if (!out) throw DataError("failed writing model to '" + path + "'");
}

Network<double> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model '" + path + "'");
  return read_model(in);
}

}  // namespace swarmnet
