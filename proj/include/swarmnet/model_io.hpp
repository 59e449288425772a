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

#ifndef SWARMNET_MODEL_IO_HPP_
#define SWARMNET_MODEL_IO_HPP_

#include <iosfwd>
#include <string>

#include "swarmnet/network.hpp"

namespace swarmnet {

// Plain-text model format:
//   swarmnet-model v1
//   14,12,8,1
//   <one flat weight per line, 17 significant digits>
inline constexpr char kModelMagic[] = "swarmnet-model v1";

void write_model(std::ostream& out, const Network<double>& network);
Network<double> read_model(std::istream& in);

void save_model(const std::string& path, const Network<double>& network);
Network<double> load_model(const std::string& path);

}  // namespace swarmnet

#endif  // SWARMNET_MODEL_IO_HPP_
