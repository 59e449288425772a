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

#include "swarmnet/dataset.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "json.hpp"
#include "swarmnet/errors.hpp"

namespace swarmnet {
namespace {

std::vector<std::string> MakeFullSchema() {
  std::vector<std::string> names;
  for (int i = 1; i <= 11; ++i) names.push_back("PRF" + std::to_string(i));
  for (int i = 1; i <= 3; ++i) names.push_back("CAD" + std::to_string(i));
  for (int i = 1; i <= 12; ++i) names.push_back("FB" + std::to_string(i));
  return names;
}

bool SameValue(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

const std::vector<std::string>& full_schema() {
  static const std::vector<std::string> kNames = MakeFullSchema();
  return kNames;
}

const std::vector<std::string>& reference_preset() {
  static const std::vector<std::string> kNames = {
      "PRF1", "PRF2", "PRF3", "PRF4", "PRF6", "PRF8", "PRF10",
      "PRF11", "CAD1", "CAD2", "CAD3", "FB4", "FB5", "FB10"};
  return kNames;
}

FeatureGroup feature_group(const std::string& name) {
  if (name.rfind("PRF", 0) == 0) return FeatureGroup::kPortfolio;
  if (name.rfind("CAD", 0) == 0) return FeatureGroup::kCad;
  if (name.rfind("FB", 0) == 0) return FeatureGroup::kFeedback;
  throw DataError("unknown feature group for column '" + name + "'");
}

void Dataset::Validate() const {
  if (static_cast<Eigen::Index>(feature_names.size()) != features.cols()) {
    throw DimensionError("dataset: feature name count does not match width");
  }
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw DimensionError("dataset: label count does not match row count");
  }
}

std::array<int, kClassCount> Dataset::class_counts() const {
  std::array<int, kClassCount> counts{};
  for (Grade g : labels) ++counts[class_index(g)];
  return counts;
}

int Dataset::column_index(const std::string& name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  return it == feature_names.end() ? -1
                                   : static_cast<int>(it - feature_names.begin());
}

bool Dataset::has_missing() const { return features.array().isNaN().any(); }

Dataset Dataset::select_rows(std::span<const Eigen::Index> rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

Dataset Dataset::select_columns(const std::vector<std::string>& names) const {
  Dataset out;
  out.feature_names = names;
  out.features.resize(features.rows(), static_cast<Eigen::Index>(names.size()));
  out.labels = labels;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const int src = column_index(names[c]);
    if (src < 0) throw DataError("dataset has no column '" + names[c] + "'");
    out.features.col(static_cast<Eigen::Index>(c)) = features.col(src);
  }
  return out;
}

Eigen::VectorXd Dataset::class_codes() const {
  Eigen::VectorXd codes(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    codes[static_cast<Eigen::Index>(i)] = class_code(labels[i]);
  }
  return codes;
}

TrainingSet Dataset::to_training_set(const ClassGrid& grid) const {
  Validate();
  if (has_missing()) throw DataError("dataset has missing values; impute first");
  TrainingSet set;
  set.inputs = features;
  set.targets.resize(size(), 1);
  for (Eigen::Index i = 0; i < size(); ++i) set.targets(i, 0) = grid.target(labels[i]);
  return set;
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.feature_names != b.feature_names || a.labels != b.labels) return false;
  if (a.features.rows() != b.features.rows() ||
      a.features.cols() != b.features.cols()) {
    return false;
  }
  for (Eigen::Index i = 0; i < a.features.size(); ++i) {
    if (!SameValue(a.features.data()[i], b.features.data()[i])) return false;
  }
  return true;
}

NormalizeResult normalize_minmax(const Dataset& dataset) {
  dataset.Validate();
  if (dataset.size() < 1) throw DataError("normalize: empty dataset");
  ColumnStats stats;
  stats.names = dataset.feature_names;
  const Eigen::Index cols = dataset.feature_count();
  stats.min.resize(cols);
  stats.max.resize(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < dataset.size(); ++r) {
      const double v = dataset.features(r, c);
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo > hi) lo = hi = 0.0;  // fully missing column
    stats.min[c] = lo;
    stats.max[c] = hi;
  }
  Dataset normalized = apply_minmax(dataset, stats);
  return {std::move(normalized), std::move(stats)};
}

Dataset apply_minmax(const Dataset& dataset, const ColumnStats& stats) {
  dataset.Validate();
  if (static_cast<Eigen::Index>(stats.names.size()) != dataset.feature_count() ||
      stats.min.size() != dataset.feature_count() ||
      stats.max.size() != dataset.feature_count()) {
    throw DimensionError("normalize: statistics width does not match dataset");
  }
  for (std::size_t c = 0; c < stats.names.size(); ++c) {
    if (stats.names[c] != dataset.feature_names[c]) {
      throw DataError("normalize: statistics column '" + stats.names[c] +
                      "' does not match dataset column '" +
                      dataset.feature_names[c] + "'");
    }
  }
  Dataset out = dataset;
  for (Eigen::Index c = 0; c < out.feature_count(); ++c) {
    const double range = stats.max[c] - stats.min[c];
    for (Eigen::Index r = 0; r < out.size(); ++r) {
      double& v = out.features(r, c);
      if (std::isnan(v)) continue;
      v = range > 0.0 ? (v - stats.min[c]) / range : 0.0;
    }
  }
  return out;
}

Eigen::VectorXd column_means(const Dataset& dataset) {
  Eigen::VectorXd means(dataset.feature_count());
  for (Eigen::Index c = 0; c < dataset.feature_count(); ++c) {
    double sum = 0.0;
    int present = 0;
    for (Eigen::Index r = 0; r < dataset.size(); ++r) {
      const double v = dataset.features(r, c);
      if (std::isnan(v)) continue;
      sum += v;
      ++present;
    }
    if (present == 0) {
      throw DataError("impute: column '" + dataset.feature_names[c] +
                      "' has no present values");
    }
    means[c] = sum / present;
  }
  return means;
}

Dataset impute_with(const Dataset& dataset, const Eigen::VectorXd& means) {
  if (means.size() != dataset.feature_count()) {
    throw DimensionError("impute: mean vector width does not match dataset");
  }
  Dataset out = dataset;
  for (Eigen::Index c = 0; c < out.feature_count(); ++c) {
    for (Eigen::Index r = 0; r < out.size(); ++r) {
      if (std::isnan(out.features(r, c))) out.features(r, c) = means[c];
    }
  }
  return out;
}

Dataset impute_mean(const Dataset& dataset) {
  dataset.Validate();
  return impute_with(dataset, column_means(dataset));
}

Dataset balance_oversample(const Dataset& dataset, int target_total,
                           std::uint64_t seed, std::span<const Grade> classes) {
  dataset.Validate();
  if (target_total < dataset.size()) {
    throw ConfigError(fmt::format("balance: target {} is below the current {} samples",
                                  target_total, dataset.size()));
  }
  std::array<std::vector<Eigen::Index>, kClassCount> members;
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    members[class_index(dataset.labels[i])].push_back(i);
  }
  std::array<int, kClassCount> counts{};
  for (Grade g : classes) {
    if (members[class_index(g)].empty()) {
      throw DataError(fmt::format("balance: class {} has no samples", grade_letter(g)));
    }
    counts[class_index(g)] = static_cast<int>(members[class_index(g)].size());
  }
  if (classes.empty() && target_total > dataset.size()) {
    throw ConfigError("balance: no classes to oversample");
  }

  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> rows(dataset.size());
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});
  while (static_cast<int>(rows.size()) < target_total) {
    Grade smallest = classes.front();
    for (Grade g : classes) {
      const int cg = counts[class_index(g)];
      const int cs = counts[class_index(smallest)];
      if (cg < cs || (cg == cs && class_code(g) < class_code(smallest))) smallest = g;
    }
    const auto& pool = members[class_index(smallest)];
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    rows.push_back(pool[pick(rng)]);
    ++counts[class_index(smallest)];
  }
  return dataset.select_rows(rows);
}

SplitResult split(const Dataset& dataset, double train_fraction,
                  std::uint64_t seed) {
  dataset.Validate();
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("split: train fraction must lie in (0, 1)");
  }
  if (dataset.size() < 10) throw DataError("split: need at least 10 samples");

  SplitResult result;
  std::array<std::vector<Eigen::Index>, kClassCount> members;
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    members[class_index(dataset.labels[i])].push_back(i);
  }
  const double test_fraction = 1.0 - train_fraction;
  const int test_total =
      static_cast<int>(std::lround(static_cast<double>(dataset.size()) * test_fraction));

  std::array<int, kClassCount> quota{};
  std::array<double, kClassCount> remainder{};
  int assigned = 0;
  for (int c = 0; c < kClassCount; ++c) {
    const double exact = static_cast<double>(members[c].size()) * test_fraction;
    quota[c] = static_cast<int>(std::floor(exact));
    remainder[c] = exact - quota[c];
    assigned += quota[c];
    if (!members[c].empty() && members[c].size() < 2) {
      result.warnings.push_back(fmt::format(
          "class {} has only {} sample; split cannot stratify it",
          grade_letter(grade_from_code(c + 1)), members[c].size()));
    }
  }
  std::array<int, kClassCount> by_remainder{0, 1, 2, 3, 4};
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (int k = 0; assigned < test_total && k < kClassCount; ++k) {
    const int c = by_remainder[k];
    if (quota[c] < static_cast<int>(members[c].size())) {
      ++quota[c];
      ++assigned;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> train_rows;
  std::vector<Eigen::Index> test_rows;
  for (int c = 0; c < kClassCount; ++c) {
    std::vector<Eigen::Index> rows = members[c];
    std::shuffle(rows.begin(), rows.end(), rng);
    test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + quota[c]);
    train_rows.insert(train_rows.end(), rows.begin() + quota[c], rows.end());
  }
  std::shuffle(train_rows.begin(), train_rows.end(), rng);
  std::shuffle(test_rows.begin(), test_rows.end(), rng);
  result.train = dataset.select_rows(train_rows);
  result.test = dataset.select_rows(test_rows);
  return result;
}

void save_stats(const ColumnStats& stats, const std::string& path) {
  nlohmann::ordered_json columns = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < stats.names.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    nlohmann::ordered_json col;
    col["name"] = stats.names[c];
    col["min"] = stats.min[i];
    col["max"] = stats.max[i];
    if (stats.mean.size() == stats.min.size()) col["mean"] = stats.mean[i];
    columns.push_back(std::move(col));
  }
  nlohmann::ordered_json doc;
  doc["columns"] = std::move(columns);
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
}

ColumnStats load_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open statistics file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    const auto& columns = doc.at("columns");
    ColumnStats stats;
    const auto n = static_cast<Eigen::Index>(columns.size());
    stats.min.resize(n);
    stats.max.resize(n);
    bool has_mean = n > 0;
    for (const auto& col : columns) has_mean = has_mean && col.contains("mean");
    if (has_mean) stats.mean.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& col = columns[static_cast<std::size_t>(i)];
      stats.names.push_back(col.at("name").get<std::string>());
      stats.min[i] = col.at("min").get<double>();
      stats.max[i] = col.at("max").get<double>();
      if (has_mean) stats.mean[i] = col.at("mean").get<double>();
    }
    return stats;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed statistics file '" + path + "': " + e.what());
  }
}

}  // namespace swarmnet
