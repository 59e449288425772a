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

// Classification scoring of single-output networks.
//
// Strict scoring rounds the raw output to the nearest class target. Tolerant
// scoring first checks whether the output lies within one tolerance band of
// the true target and, if so, snaps it onto that target. Tolerant scoring
// consults the true label, so it is a scoring rule only; it cannot classify
// unlabeled data.

#ifndef SWARMNET_EVALUATION_HPP_
#define SWARMNET_EVALUATION_HPP_

#include <Eigen/Dense>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "swarmnet/dataset.hpp"
#include "swarmnet/labels.hpp"
#include "swarmnet/network.hpp"

namespace swarmnet {

enum class ScoringMode { kStrict, kTolerant };

const char* to_string(ScoringMode mode);
ScoringMode parse_scoring_mode(const std::string& text);

inline constexpr double kTolerance = 0.1;
inline constexpr double kBoundaryEpsilon = 1e-9;

// Nearest grid target (halves round up), clamped to the first/last class.
Grade assign_strict(double raw, const ClassGrid& grid = {});

// Target class when |raw - target| <= tolerance (+1e-9), else assign_strict.
Grade assign_tolerant(double raw, Grade target, const ClassGrid& grid = {},
                      double tolerance = kTolerance);

struct Prediction {
  double raw;
  Grade target;
  Grade assigned_strict;
  Grade assigned_tolerant;
};

std::vector<Prediction> predict(const Network<double>& network, const Dataset& dataset,
                                const ClassGrid& grid = {});

// Rows are actual classes, columns assigned classes.
class ConfusionMatrix {
 public:
  using Counts = Eigen::Matrix<long, kClassCount, kClassCount>;

  ConfusionMatrix() : counts_(Counts::Zero()) {}
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  void Add(Grade actual, Grade assigned) {
    ++counts_(class_index(actual), class_index(assigned));
  }
  long total() const { return counts_.sum(); }
  long correct() const { return counts_.trace(); }
  long row_total(Grade actual) const { return counts_.row(class_index(actual)).sum(); }
  const Counts& counts() const { return counts_; }

  friend bool operator==(const ConfusionMatrix& a, const ConfusionMatrix& b) {
    return a.counts_ == b.counts_;
  }

 private:
  Counts counts_;
};

// 100 * correct / (correct + incorrect).
double accuracy_percent(long correct, long incorrect);

struct EvaluationReport {
  ScoringMode mode = ScoringMode::kStrict;
  long ccni = 0;
  long icni = 0;
  double cci = 0.0;  // percent
  double ici = 0.0;  // percent
  // Error of raw/step against the class code (1..5).
  double mae = 0.0;
  double rmse = 0.0;
  // Same errors on the raw output scale (raw vs. target).
  double mae_output = 0.0;
  double rmse_output = 0.0;
  ConfusionMatrix matrix;
};

EvaluationReport score_predictions(std::span<const double> raw,
                                   std::span<const Grade> targets, ScoringMode mode,
                                   const ClassGrid& grid = {});

EvaluationReport evaluate(const Network<double>& network, const Dataset& dataset,
                          ScoringMode mode, const ClassGrid& grid = {});

struct ModelComparison {
  double strict_accuracy;
  double tolerant_accuracy;
  double difference;  // tolerant - strict, percentage points
  long sample_count;
};

// Throws DataError when the reports cover different sample counts and
// std::logic_error if tolerant scoring came out below strict scoring.
ModelComparison compare_models(const EvaluationReport& strict,
                               const EvaluationReport& tolerant);

// Percentages to 2 d.p. and errors to 4 d.p.
nlohmann::ordered_json to_json(const EvaluationReport& report);
nlohmann::ordered_json to_json(const ModelComparison& comparison);
EvaluationReport report_from_json(const nlohmann::json& doc);

// Results table laid out as Phase | CCNI | CCI (%) | ICNI | ICI (%) | MAE | RMSE.
std::string format_results_table(
    const std::vector<std::pair<std::string, EvaluationReport>>& rows);
std::string format_confusion_matrix(const ConfusionMatrix& matrix);

double round_to(double value, int decimals);

}  // namespace swarmnet

#endif  // SWARMNET_EVALUATION_HPP_
