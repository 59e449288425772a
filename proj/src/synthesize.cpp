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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "swarmnet/dataset.hpp"
#include "swarmnet/errors.hpp"

namespace swarmnet {
namespace {

constexpr int kPortfolioFeatures = 11;
constexpr int kCadFeatures = 3;
constexpr int kFeedbackFeatures = 12;
constexpr int kCadOffset = kPortfolioFeatures;
constexpr int kFeedbackOffset = kPortfolioFeatures + kCadFeatures;
constexpr int kMaxAttempts = 100000;

// Score interval [low, high) whose grade is `g`.
struct Band {
  double low;
  double high;
};

Band BandOf(SubGrade g, const GradeThresholds& t) {
  switch (g) {
    case SubGrade::kAStar:
      return {t.a_star, 1.0 + 1e-12};
    case SubGrade::kA:
      return {t.a, t.a_star};
    case SubGrade::kB:
      return {t.b, t.a};
    case SubGrade::kC:
      return {t.c, t.b};
    case SubGrade::kD:
      return {t.d, t.c};
    case SubGrade::kE:
      return {0.0, t.d};
  }
  return {0.0, 1.0};
}

std::vector<SubGrades> CombinationsFor(Grade target) {
  std::vector<SubGrades> out;
  for (SubGrade cad : kAllSubGrades) {
    for (SubGrade fb : kAllSubGrades) {
      for (SubGrade p : kAllSubGrades) {
        const SubGrades g{cad, fb, p};
        const auto label = final_label(g);
        if (label && *label == target) out.push_back(g);
      }
    }
  }
  return out;
}

// Five-step ratings (0, .25, .5, .75, 1) whose mean grades as `g`.
void DrawRatings(SubGrade g, const GradeThresholds& t, int count,
                 std::mt19937_64& rng, double* out) {
  const Band band = BandOf(g, t);
  std::uniform_real_distribution<double> center(band.low, std::min(band.high, 1.0));
  std::normal_distribution<double> jitter(0.0, 0.12);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double m = center(rng);
    double sum = 0.0;
    for (int i = 0; i < count; ++i) {
      // "+ 0.0" turns a rounded -0 into 0 so it never prints as "-0".
      const double r =
          std::clamp(std::round((m + jitter(rng)) * 4.0) / 4.0, 0.0, 1.0) + 0.0;
      out[i] = r;
      sum += r;
    }
    if (grade_from_score(sum / count, t) == g) return;
  }
  throw DataError("synthesize: could not draw ratings for grade " + sub_grade_name(g));
}

void DrawCad(SubGrade g, const GeneratorConfig& config, std::mt19937_64& rng,
             double* out) {
  const int total_max = config.cad1_max + config.cad2_max;
  std::vector<int> totals;
  for (int total = 0; total <= total_max; ++total) {
    if (grade_from_score(static_cast<double>(total) / total_max, config.thresholds) == g) {
      totals.push_back(total);
    }
  }
  if (totals.empty()) {
    throw DataError("synthesize: no CAD point total grades as " + sub_grade_name(g));
  }
  std::uniform_int_distribution<std::size_t> pick_total(0, totals.size() - 1);
  const int total = totals[pick_total(rng)];
  std::uniform_int_distribution<int> pick_cad1(std::max(0, total - config.cad2_max),
                                               std::min(config.cad1_max, total));
  const int cad1 = pick_cad1(rng);
  out[0] = cad1;
  out[1] = total - cad1;
  out[2] = total;
}

double MeanOfPresent(const Eigen::MatrixXd& m, Eigen::Index row, int begin, int count) {
  double sum = 0.0;
  int present = 0;
  for (int c = begin; c < begin + count; ++c) {
    const double v = m(row, c);
    if (std::isnan(v)) continue;
    sum += v;
    ++present;
  }
  return present == 0 ? 0.0 : sum / present;
}

}  // namespace

SubGrades grade_row(const Dataset& raw, Eigen::Index row,
                    const GeneratorConfig& config) {
  if (raw.feature_names != full_schema()) {
    throw DataError("grade_row: dataset does not use the full 26-column schema");
  }
  const double prf = MeanOfPresent(raw.features, row, 0, kPortfolioFeatures);
  const double fb = MeanOfPresent(raw.features, row, kFeedbackOffset, kFeedbackFeatures);
  const double cad = (raw.features(row, kCadOffset) + raw.features(row, kCadOffset + 1)) /
                     (config.cad1_max + config.cad2_max);
  return SubGrades{grade_from_score(cad, config.thresholds),
                   grade_from_score(fb, config.thresholds),
                   grade_from_score(prf, config.thresholds)};
}

Dataset synthesize(const GeneratorConfig& config) {
  if (config.count < 10) throw ConfigError("synthesize: count must be >= 10");
  if (!(config.noise_level >= 0.0)) throw ConfigError("synthesize: noise must be >= 0");
  if (!(config.missing_rate >= 0.0 && config.missing_rate < 1.0)) {
    throw ConfigError("synthesize: missing rate must lie in [0, 1)");
  }
  if (config.cad1_max < 1 || config.cad2_max < 1) {
    throw ConfigError("synthesize: CAD point maxima must be >= 1");
  }

  std::mt19937_64 rng(config.seed);
  std::array<std::vector<SubGrades>, kClassCount> combos;
  for (Grade g : kAllGrades) combos[class_index(g)] = CombinationsFor(g);

  std::vector<Grade> classes(config.count);
  for (int i = 0; i < config.count; ++i) classes[i] = kAllGrades[i % kClassCount];
  std::shuffle(classes.begin(), classes.end(), rng);

  Dataset out;
  out.feature_names = full_schema();
  out.features.resize(config.count, static_cast<Eigen::Index>(full_schema().size()));
  out.labels = classes;

  Eigen::Matrix<double, 1, Eigen::Dynamic> row(out.feature_count());
  for (int r = 0; r < config.count; ++r) {
    const auto& options = combos[class_index(classes[r])];
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const SubGrades grades = options[pick(rng)];
    DrawRatings(grades.portfolio, config.thresholds, kPortfolioFeatures, rng, row.data());
    DrawCad(grades.cad, config, rng, row.data() + kCadOffset);
    DrawRatings(grades.fb, config.thresholds, kFeedbackFeatures, rng,
                row.data() + kFeedbackOffset);
    out.features.row(r) = row;
    const auto label = final_label(grade_row(out, r, config));
    if (!label || *label != classes[r]) {
      // Grading disagrees with the drawn combination; draw the row again.
      --r;
      continue;
    }
  }

  if (config.noise_level > 0.0) {
    std::normal_distribution<double> noise(0.0, config.noise_level);
    for (int r = 0; r < config.count; ++r) {
      for (Eigen::Index c = 0; c < out.feature_count(); ++c) {
        if (c >= kCadOffset && c < kFeedbackOffset) continue;
        out.features(r, c) = std::clamp(out.features(r, c) + noise(rng), 0.0, 1.0);
      }
      const double cad1 = std::max(
          0.0, out.features(r, kCadOffset) + noise(rng) * config.cad1_max);
      const double cad2 = std::max(
          0.0, out.features(r, kCadOffset + 1) + noise(rng) * config.cad2_max);
      out.features(r, kCadOffset) = cad1;
      out.features(r, kCadOffset + 1) = cad2;
      out.features(r, kCadOffset + 2) = cad1 + cad2;
    }
  }

  if (config.missing_rate > 0.0) {
    std::bernoulli_distribution drop(config.missing_rate);
    for (int r = 0; r < config.count; ++r) {
      for (Eigen::Index c = 0; c < out.feature_count(); ++c) {
        if (drop(rng)) out.features(r, c) = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return out;
}

}  // namespace swarmnet
