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

#include "swarmnet/evaluation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmnet/errors.hpp"

namespace swarmnet {

const char* to_string(ScoringMode mode) {
  return mode == ScoringMode::kStrict ? "strict" : "tolerant";
}

ScoringMode parse_scoring_mode(const std::string& text) {
  if (text == "strict") return ScoringMode::kStrict;
  if (text == "tolerant") return ScoringMode::kTolerant;
  throw ConfigError("unknown scoring mode '" + text + "'");
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

Grade assign_strict(double raw, const ClassGrid& grid) {
  const double position = raw / grid.step;
  const int code = static_cast<int>(std::floor(position + 0.5 + kBoundaryEpsilon));
  return grade_from_code(std::clamp(code, 1, kClassCount));
}

Grade assign_tolerant(double raw, Grade target, const ClassGrid& grid, double tolerance) {
  if (std::abs(raw - grid.target(target)) <= tolerance + kBoundaryEpsilon) return target;
  return assign_strict(raw, grid);
}

std::vector<Prediction> predict(const Network<double>& network, const Dataset& dataset,
                                const ClassGrid& grid) {
  if (network.topology().output_count() != 1) {
    throw DimensionError("predict: classification needs a single-output network");
  }
  const TrainingSet set = dataset.to_training_set(grid);
  const Eigen::MatrixXd raw = forward_batch(network, set.inputs);
  std::vector<Prediction> out;
  out.reserve(dataset.labels.size());
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const Grade target = dataset.labels[i];
    out.push_back(Prediction{raw(i, 0), target, assign_strict(raw(i, 0), grid),
                             assign_tolerant(raw(i, 0), target, grid)});
  }
  return out;
}

double accuracy_percent(long correct, long incorrect) {
  if (correct + incorrect <= 0) throw DataError("accuracy: no samples");
  return 100.0 * static_cast<double>(correct) / static_cast<double>(correct + incorrect);
}

EvaluationReport score_predictions(std::span<const double> raw,
                                   std::span<const Grade> targets, ScoringMode mode,
                                   const ClassGrid& grid) {
  if (raw.size() != targets.size()) {
    throw DimensionError("score: prediction and target counts differ");
  }
  if (raw.empty()) throw DataError("score: empty sample set");
  EvaluationReport report;
  report.mode = mode;
  double abs_index = 0.0, sq_index = 0.0, abs_out = 0.0, sq_out = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Grade target = targets[i];
    const Grade assigned = mode == ScoringMode::kStrict
                               ? assign_strict(raw[i], grid)
                               : assign_tolerant(raw[i], target, grid);
    report.matrix.Add(target, assigned);
    const double e_index = raw[i] / grid.step - class_code(target);
    const double e_out = raw[i] - grid.target(target);
    abs_index += std::abs(e_index);
    sq_index += e_index * e_index;
    abs_out += std::abs(e_out);
    sq_out += e_out * e_out;
  }
  const double n = static_cast<double>(raw.size());
  report.ccni = report.matrix.correct();
  report.icni = report.matrix.total() - report.ccni;
  report.cci = accuracy_percent(report.ccni, report.icni);
  report.ici = 100.0 - report.cci;
  report.mae = abs_index / n;
  report.rmse = std::sqrt(sq_index / n);
  report.mae_output = abs_out / n;
  report.rmse_output = std::sqrt(sq_out / n);
  return report;
}

EvaluationReport evaluate(const Network<double>& network, const Dataset& dataset,
                          ScoringMode mode, const ClassGrid& grid) {
  if (dataset.size() == 0) throw DataError("evaluate: empty sample set");
  const std::vector<Prediction> predictions = predict(network, dataset, grid);
  std::vector<double> raw;
  raw.reserve(predictions.size());
  for (const auto& p : predictions) raw.push_back(p.raw);
  return score_predictions(raw, dataset.labels, mode, grid);
}

ModelComparison compare_models(const EvaluationReport& strict,
                               const EvaluationReport& tolerant) {
  const long n = strict.ccni + strict.icni;
  if (n != tolerant.ccni + tolerant.icni) {
    throw DataError("compare: reports cover different sample counts");
  }
  if (tolerant.ccni < strict.ccni) {
    throw std::logic_error("compare: tolerant accuracy below strict accuracy");
  }
  return ModelComparison{strict.cci, tolerant.cci, tolerant.cci - strict.cci, n};
}

nlohmann::ordered_json to_json(const EvaluationReport& r) {
  nlohmann::ordered_json doc;
  doc["mode"] = to_string(r.mode);
  doc["ccni"] = r.ccni;
  doc["cci"] = round_to(r.cci, 2);
  doc["icni"] = r.icni;
  doc["ici"] = round_to(r.ici, 2);
  doc["mae"] = round_to(r.mae, 4);
  doc["rmse"] = round_to(r.rmse, 4);
  doc["mae_output_scale"] = round_to(r.mae_output, 4);
  doc["rmse_output_scale"] = round_to(r.rmse_output, 4);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int a = 0; a < kClassCount; ++a) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int b = 0; b < kClassCount; ++b) row.push_back(r.matrix.counts()(a, b));
    rows.push_back(std::move(row));
  }
  doc["confusion_matrix"] = std::move(rows);
  if (r.mode == ScoringMode::kTolerant) {
    doc["note"] =
        "tolerant scoring snaps outputs within 0.1 of the true target onto it; "
        "it uses the true label and is not a deployable classifier";
  }
  return doc;
}

nlohmann::ordered_json to_json(const ModelComparison& c) {
  nlohmann::ordered_json doc;
  doc["samples"] = c.sample_count;
  doc["strict_cci"] = round_to(c.strict_accuracy, 2);
  doc["tolerant_cci"] = round_to(c.tolerant_accuracy, 2);
  doc["difference"] = round_to(c.difference, 2);
  return doc;
}

EvaluationReport report_from_json(const nlohmann::json& doc) {
  try {
    EvaluationReport r;
    r.mode = parse_scoring_mode(doc.at("mode").get<std::string>());
    r.ccni = doc.at("ccni").get<long>();
    r.icni = doc.at("icni").get<long>();
    r.cci = doc.at("cci").get<double>();
    r.ici = doc.at("ici").get<double>();
    r.mae = doc.at("mae").get<double>();
    r.rmse = doc.at("rmse").get<double>();
    r.mae_output = doc.value("mae_output_scale", 0.0);
    r.rmse_output = doc.value("rmse_output_scale", 0.0);
    ConfusionMatrix::Counts counts;
    const auto& rows = doc.at("confusion_matrix");
    if (rows.size() != kClassCount) throw DataError("report: matrix must be 5x5");
    for (int a = 0; a < kClassCount; ++a) {
      if (rows[a].size() != kClassCount) throw DataError("report: matrix must be 5x5");
      for (int b = 0; b < kClassCount; ++b) counts(a, b) = rows[a][b].get<long>();
    }
    r.matrix = ConfusionMatrix(counts);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string format_results_table(
    const std::vector<std::pair<std::string, EvaluationReport>>& rows) {
  std::string out = fmt::format("{:<10}{:>6}{:>9}{:>6}{:>9}{:>9}{:>9}\n", "Phase", "CCNI",
                                "CCI (%)", "ICNI", "ICI (%)", "MAE", "RMSE");
  for (const auto& [phase, r] : rows) {
    out += fmt::format("{:<10}{:>6}{:>9.2f}{:>6}{:>9.2f}{:>9.4f}{:>9.4f}\n", phase, r.ccni,
                       r.cci, r.icni, r.ici, r.mae, r.rmse);
  }
  return out;
}

std::string format_confusion_matrix(const ConfusionMatrix& matrix) {
  std::string out = fmt::format("{:<28}", "Classified As");
  for (Grade g : kAllGrades) out += fmt::format("{:>5}", grade_letter(g));
  out += '\n';
  for (Grade actual : kAllGrades) {
    out += fmt::format("{:<26}{:<2}", grade_description(actual), grade_letter(actual));
    for (Grade assigned : kAllGrades) {
      out += fmt::format("{:>5}", matrix.counts()(class_index(actual), class_index(assigned)));
    }
    out += '\n';
  }
  return out;
}

}  // namespace swarmnet
