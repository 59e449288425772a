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

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "swarmnet/dataset.hpp"
#include "swarmnet/errors.hpp"

namespace swarmnet {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

}  // namespace

Dataset read_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty file");
  std::vector<std::string> header = SplitFields(line);
  if (header.size() < 2 || header.back() != "class") {
    throw DataError(source + ": header must list feature names followed by 'class'");
  }
  header.pop_back();
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty()) throw DataError(source + ": empty column name in header");
    if (!seen.insert(name).second) {
      throw DataError(source + ": duplicate column '" + name + "'");
    }
  }

  const std::size_t width = header.size();
  std::vector<double> values;
  std::vector<Grade> labels;
  int line_number = 1;
  int row = 0;  // data rows, 1-based, blank lines skipped
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != width + 1) {
      throw DataError(fmt::format(
          "{}: row {} (line {}) has {} values, expected {} features plus class",
          source, row, line_number, fields.size() - 1, width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      const std::string& f = fields[c];
      if (f.empty()) {
        values.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw DataError(fmt::format("{}: row {} (line {}) column '{}': invalid number '{}'",
                                    source, row, line_number, header[c], f));
      }
      values.push_back(v);
    }
    const auto grade = parse_grade(fields.back());
    if (!grade) {
      throw DataError(fmt::format("{}: row {} (line {}): unknown class grade '{}'",
                                  source, row, line_number, fields.back()));
    }
    labels.push_back(*grade);
  }

  Dataset dataset;
  dataset.feature_names = std::move(header);
  dataset.labels = std::move(labels);
  const auto rows = static_cast<Eigen::Index>(dataset.labels.size());
  dataset.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                    Eigen::RowMajor>>(
      values.data(), rows, static_cast<Eigen::Index>(width));
  return dataset;
}

void write_csv(std::ostream& out, const Dataset& dataset) {
  dataset.Validate();
  for (const auto& name : dataset.feature_names) out << name << ',';
  out << "class\n";
  for (Eigen::Index r = 0; r < dataset.size(); ++r) {
    for (Eigen::Index c = 0; c < dataset.feature_count(); ++c) {
      const double v = dataset.features(r, c);
      if (!std::isnan(v)) out << fmt::format("{:.17g}", v);
      out << ',';
    }
    out << grade_letter(dataset.labels[r]) << '\n';
  }
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path + "'");
  return read_csv(in, path);
}

void save_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_csv(out, dataset);
  if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace swarmnet
