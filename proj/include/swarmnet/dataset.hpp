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

// Tabular lecturer-performance data: schema, preprocessing, balancing and
// splitting. Datasets are values; every operation returns a new one.

#ifndef SWARMNET_DATASET_HPP_
#define SWARMNET_DATASET_HPP_

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swarmnet/labels.hpp"
#include "swarmnet/network.hpp"

namespace swarmnet {

enum class FeatureGroup { kPortfolio, kCad, kFeedback };

// PRF1..PRF11, CAD1..CAD3, FB1..FB12.
const std::vector<std::string>& full_schema();
// The 14 features retained after correlation-based selection on the
// original data.
const std::vector<std::string>& reference_preset();
FeatureGroup feature_group(const std::string& name);

// Missing values are stored as NaN.
struct Dataset {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd features;  // one sample per row
  std::vector<Grade> labels;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index feature_count() const { return features.cols(); }

  // Throws DimensionError if the parts disagree in size.
  void Validate() const;
  std::array<int, kClassCount> class_counts() const;
  int column_index(const std::string& name) const;  // -1 if absent
  bool has_missing() const;

  Dataset select_rows(std::span<const Eigen::Index> rows) const;
  // Keeps `names` in the given order; throws DataError naming the first
  // column that is absent.
  Dataset select_columns(const std::vector<std::string>& names) const;
  // Class codes 1..5 as a vector.
  Eigen::VectorXd class_codes() const;

  TrainingSet to_training_set(const ClassGrid& grid = {}) const;

  friend bool operator==(const Dataset& a, const Dataset& b);
};

// Per-column statistics recorded during preprocessing so other data can be
// transformed exactly like the training data.
struct ColumnStats {
  std::vector<std::string> names;
  Eigen::VectorXd min;
  Eigen::VectorXd max;
  Eigen::VectorXd mean;  // of present normalized values; empty if unknown
};

struct NormalizeResult {
  Dataset dataset;
  ColumnStats stats;
};

// x' = (x - min) / (max - min) per column; constant columns become 0.
// Missing values stay missing and do not contribute to min/max.
NormalizeResult normalize_minmax(const Dataset& dataset);
Dataset apply_minmax(const Dataset& dataset, const ColumnStats& stats);

// Column means over present values; throws DataError on a fully missing column.
Eigen::VectorXd column_means(const Dataset& dataset);
Dataset impute_mean(const Dataset& dataset);
Dataset impute_with(const Dataset& dataset, const Eigen::VectorXd& means);

// Appends seeded-random duplicates of the currently smallest class until the
// total reaches target_total. Every class in `classes` must have a sample.
Dataset balance_oversample(const Dataset& dataset, int target_total,
                           std::uint64_t seed,
                           std::span<const Grade> classes = kAllGrades);

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

// Stratified split: round(N * (1 - train_fraction)) test samples, allotted to
// classes by largest remainder (ties to the lower class).
SplitResult split(const Dataset& dataset, double train_fraction,
                  std::uint64_t seed);

// CSV with header `<feature names...>,class`; missing values are empty fields.
Dataset read_csv(std::istream& in, const std::string& source = "<stream>");
void write_csv(std::ostream& out, const Dataset& dataset);
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& dataset, const std::string& path);

// JSON: {"columns": [{"name", "min", "max", "mean"}, ...]}.
void save_stats(const ColumnStats& stats, const std::string& path);
ColumnStats load_stats(const std::string& path);

struct GeneratorConfig {
  int count = 313;
  std::uint64_t seed = 1;
  double noise_level = 0.0;
  double missing_rate = 0.0;
  GradeThresholds thresholds;
  // Maximum seminar points (CAD1) and activity points (CAD2).
  int cad1_max = 10;
  int cad2_max = 20;
};

// Raw (unnormalized) synthetic data with the full 26-column schema. PRF/FB
// values are five-step ratings mapped to {0, .25, .5, .75, 1}; CAD1/CAD2 are
// integer points and CAD3 = CAD1 + CAD2. Classes are assigned round-robin
// before features are drawn, so every class is represented once count >= 5.
Dataset synthesize(const GeneratorConfig& config);

// Group scores used for grading a raw row: PRF and FB means, and
// (CAD1 + CAD2) / (cad1_max + cad2_max).
SubGrades grade_row(const Dataset& raw, Eigen::Index row,
                    const GeneratorConfig& config);

}  // namespace swarmnet

#endif  // SWARMNET_DATASET_HPP_
