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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"

namespace swarmnet {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Dataset Column(std::initializer_list<double> values) {
  Dataset d;
  d.feature_names = {"x"};
  d.features.resize(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) d.features(i++, 0) = v;
  d.labels.assign(values.size(), Grade::kC);
  return d;
}

// n_a samples of class A followed by n_b of class B, each with a unique id.
Dataset TwoClass(int n_a, int n_b) {
  Dataset d;
  d.feature_names = {"id"};
  d.features.resize(n_a + n_b, 1);
  for (int i = 0; i < n_a + n_b; ++i) {
    d.features(i, 0) = i;
    d.labels.push_back(i < n_a ? Grade::kA : Grade::kB);
  }
  return d;
}

std::string Name(SubGrade g) { return sub_grade_name(g); }

TEST(LabelTest, Examples) {
  using S = SubGrade;
  EXPECT_EQ(final_label({S::kAStar, S::kAStar, S::kA}), Grade::kA);
  EXPECT_EQ(final_label({S::kB, S::kB, S::kC}), Grade::kC);
  EXPECT_EQ(final_label({S::kA, S::kA, S::kD}), Grade::kC);
  EXPECT_EQ(final_label({S::kB, S::kB, S::kE}), Grade::kE);
  EXPECT_EQ(final_label({S::kAStar, S::kB, S::kA}), std::nullopt);
}

TEST(LabelTest, AgreesWithIndependentRuleTableOnWholeCube) {
  int covered = 0;
  for (SubGrade cad : kAllSubGrades) {
    for (SubGrade fb : kAllSubGrades) {
      for (SubGrade prf : kAllSubGrades) {
        if (prf == SubGrade::kAStar) continue;
        const auto expected = testing::oracle_label(Name(cad), Name(fb), Name(prf));
        const auto got = final_label({cad, fb, prf});
        ASSERT_EQ(got.has_value(), expected.has_value())
            << Name(cad) << "/" << Name(fb) << "/" << Name(prf);
        if (got) {
          EXPECT_EQ(grade_letter(*got), *expected);
          ++covered;
        }
      }
    }
  }
  int oracle_covered = 0;
  for (const auto& row : testing::decision_rows()) {
    oracle_covered += static_cast<int>(row.cad.size() * row.fb.size() * row.portfolio.size());
  }
  EXPECT_EQ(covered, oracle_covered);
}

TEST(LabelTest, GradeParsing) {
  EXPECT_EQ(parse_grade("C"), Grade::kC);
  EXPECT_EQ(parse_grade("4"), Grade::kD);
  EXPECT_EQ(parse_grade("F"), std::nullopt);
  EXPECT_EQ(parse_grade(""), std::nullopt);
  EXPECT_EQ(grade_from_score(0.95), SubGrade::kAStar);
  EXPECT_EQ(grade_from_score(0.8), SubGrade::kA);
  EXPECT_EQ(grade_from_score(0.1), SubGrade::kE);
}

TEST(NormalizeTest, Examples) {
  EXPECT_TRUE(normalize_minmax(Column({2, 4, 6})).dataset.features.isApprox(
      Eigen::Vector3d(0, 0.5, 1)));
  const Dataset unit = Column({0, 0.3, 1});
  EXPECT_EQ(normalize_minmax(unit).dataset.features, unit.features);
  EXPECT_EQ(normalize_minmax(Column({5, 5, 5})).dataset.features,
            Eigen::MatrixXd::Zero(3, 1));
}

TEST(NormalizeTest, MissingValuesIgnoredAndKept) {
  const NormalizeResult r = normalize_minmax(Column({2, kNaN, 6}));
  EXPECT_EQ(r.stats.min[0], 2);
  EXPECT_EQ(r.stats.max[0], 6);
  EXPECT_TRUE(std::isnan(r.dataset.features(1, 0)));
}

TEST(NormalizeTest, IdempotentWithOwnStatistics) {
  const Dataset raw = synthesize({.count = 60, .seed = 3});
  const NormalizeResult once = normalize_minmax(raw);
  const NormalizeResult twice = normalize_minmax(once.dataset);
  EXPECT_TRUE(twice.dataset.features.isApprox(once.dataset.features, 1e-15));
  EXPECT_EQ(apply_minmax(raw, once.stats), once.dataset);
}

TEST(ImputeTest, Examples) {
  EXPECT_EQ(impute_mean(Column({1, kNaN, 3})).features, Eigen::Vector3d(1, 2, 3));
  const Dataset full = Column({1, 2, 7});
  EXPECT_EQ(impute_mean(full), full);
  EXPECT_EQ(impute_mean(Column({0.5, kNaN, kNaN, 0.5})).features,
            Eigen::MatrixXd::Constant(4, 1, 0.5));
}

TEST(ImputeTest, FullyMissingColumnRejected) {
  EXPECT_THROW(impute_mean(Column({kNaN, kNaN})), DataError);
}

TEST(BalanceTest, TwoClassExample) {
  const std::array<Grade, 2> classes = {Grade::kA, Grade::kB};
  const Dataset out = balance_oversample(TwoClass(10, 2), 20, 1, classes);
  EXPECT_EQ(out.class_counts()[0], 10);
  EXPECT_EQ(out.class_counts()[1], 10);
  // Originals first and untouched; every added row copies a class-B row.
  EXPECT_EQ(out.features.topRows(12), TwoClass(10, 2).features);
  for (Eigen::Index i = 12; i < 20; ++i) {
    EXPECT_EQ(out.labels[i], Grade::kB);
    EXPECT_GE(out.features(i, 0), 10);
  }
}

TEST(BalanceTest, AlreadyBalancedIsIdentity) {
  const std::array<Grade, 2> classes = {Grade::kA, Grade::kB};
  const Dataset d = TwoClass(5, 5);
  EXPECT_EQ(balance_oversample(d, 10, 9, classes), d);
}

TEST(BalanceTest, SyntheticTo580) {
  GeneratorConfig config;
  config.seed = 11;
  Dataset raw = synthesize(config);
  // Skew the classes so oversampling has real work to do.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (raw.labels[i] != Grade::kE || i % 3 == 0) keep.push_back(i);
  }
  raw = raw.select_rows(keep);
  const Dataset out = balance_oversample(raw, 580, 4);
  ASSERT_EQ(out.size(), 580);
  const auto counts = out.class_counts();
  EXPECT_LE(*std::max_element(counts.begin(), counts.end()) -
                *std::min_element(counts.begin(), counts.end()),
            1);
  std::vector<Eigen::Index> originals(keep.size());
  std::iota(originals.begin(), originals.end(), 0);
  EXPECT_EQ(out.select_rows(originals), raw);
}

TEST(BalanceTest, Errors) {
  EXPECT_THROW(balance_oversample(TwoClass(10, 2), 20, 1), DataError);
  const std::array<Grade, 2> classes = {Grade::kA, Grade::kB};
  EXPECT_THROW(balance_oversample(TwoClass(10, 2), 5, 1, classes), ConfigError);
}

TEST(SplitTest, Sizes580) {
  const Dataset d = balance_oversample(synthesize({.count = 313, .seed = 5}), 580, 5);
  const SplitResult s = split(d, 0.9, 8);
  EXPECT_EQ(s.train.size(), 522);
  EXPECT_EQ(s.test.size(), 58);
  // Stratification: every class keeps roughly its share of the test set.
  const auto counts = d.class_counts();
  const auto test_counts = s.test.class_counts();
  for (int c = 0; c < kClassCount; ++c) {
    EXPECT_NEAR(test_counts[c], counts[c] * 0.1, 1.0) << "class " << c + 1;
  }
}

TEST(SplitTest, PartitionAndDeterminism) {
  const Dataset d = TwoClass(30, 20);
  const SplitResult a = split(d, 0.8, 3);
  const SplitResult b = split(d, 0.8, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  std::multiset<double> ids;
  for (Eigen::Index i = 0; i < a.train.size(); ++i) ids.insert(a.train.features(i, 0));
  for (Eigen::Index i = 0; i < a.test.size(); ++i) ids.insert(a.test.features(i, 0));
  ASSERT_EQ(ids.size(), 50u);
  EXPECT_EQ(std::set<double>(ids.begin(), ids.end()).size(), 50u);
  EXPECT_NE(split(d, 0.8, 4).test, a.test);
}

TEST(SplitTest, TooFewSamplesRejectedRareClassWarned) {
  EXPECT_THROW(split(TwoClass(5, 4), 0.9, 1), DataError);
  const SplitResult s = split(TwoClass(11, 1), 0.9, 1);
  EXPECT_EQ(s.train.size() + s.test.size(), 12);
  EXPECT_FALSE(s.warnings.empty());
}

TEST(SynthesizeTest, CadTotalsAndAllClasses) {
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const Dataset d = synthesize({.count = 580, .seed = seed});
    const int c1 = d.column_index("CAD1");
    const int c2 = d.column_index("CAD2");
    const int c3 = d.column_index("CAD3");
    EXPECT_EQ(d.features.col(c3), d.features.col(c1) + d.features.col(c2));
    for (int n : d.class_counts()) EXPECT_GT(n, 0);
    EXPECT_EQ(d.feature_names, full_schema());
  }
}

TEST(SynthesizeTest, NoiselessLabelsFollowThresholds) {
  GeneratorConfig config;
  config.count = 200;
  config.seed = 17;
  const Dataset d = synthesize(config);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    EXPECT_EQ(final_label(grade_row(d, i, config)), d.labels[i]) << "row " << i;
  }
  EXPECT_FALSE(d.has_missing());
}

TEST(SynthesizeTest, MissingRateInjectsGaps) {
  GeneratorConfig config;
  config.missing_rate = 0.05;
  EXPECT_TRUE(synthesize(config).has_missing());
  EXPECT_EQ(synthesize(config), synthesize(config));
}

TEST(SelectColumnsTest, PresetOrderAndMissingColumn) {
  const Dataset d = synthesize({.count = 20});
  const Dataset s = d.select_columns(reference_preset());
  EXPECT_EQ(s.feature_names, reference_preset());
  EXPECT_EQ(s.feature_count(), 14);
  EXPECT_EQ(s.features.col(0), d.features.col(d.column_index("PRF1")));
  Dataset without = d.select_columns({"PRF1", "PRF2"});
  try {
    without.select_columns({"PRF1", "PRF6"});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("PRF6"), std::string::npos);
  }
}

TEST(CsvTest, RoundTrip) {
  GeneratorConfig config;
  config.noise_level = 0.1;
  config.missing_rate = 0.03;
  const Dataset d = normalize_minmax(synthesize(config)).dataset;
  std::stringstream buffer;
  write_csv(buffer, d);
  const Dataset back = read_csv(buffer);
  EXPECT_EQ(back.feature_names, d.feature_names);
  EXPECT_EQ(back.labels, d.labels);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    for (Eigen::Index j = 0; j < d.feature_count(); ++j) {
      if (std::isnan(d.features(i, j))) {
        EXPECT_TRUE(std::isnan(back.features(i, j)));
      } else {
        EXPECT_NEAR(back.features(i, j), d.features(i, j), 1e-12);
      }
    }
  }
}

TEST(CsvTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "swarmnet_csv_test.csv";
  const Dataset d = synthesize({.count = 15, .seed = 2});
  save_csv(d, path.string());
  EXPECT_EQ(load_csv(path.string()), d);
  std::filesystem::remove(path);
  EXPECT_THROW(load_csv(path.string()), DataError);
}

std::string CsvError(const std::string& text) {
  std::istringstream in(text);
  try {
    read_csv(in);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(CsvTest, Errors) {
  std::string header;
  for (const auto& name : full_schema()) header += name + ",";
  header += "class\n";
  std::string short_row;
  for (int i = 0; i < 25; ++i) short_row += "0.5,";
  short_row += "C\n";
  std::string good_row;
  for (int i = 0; i < 26; ++i) good_row += "0.5,";
  const std::string width = CsvError(header + good_row + "A\n" + short_row);
  EXPECT_NE(width.find("row 2"), std::string::npos) << width;
  const std::string grade = CsvError(header + good_row + "F\n");
  EXPECT_NE(grade.find("'F'"), std::string::npos) << grade;
  EXPECT_NE(CsvError(header + "abc" + good_row.substr(3) + "A\n"), "");
  EXPECT_NE(CsvError("a,b\n1,2\n"), "");
  EXPECT_NE(CsvError(""), "");
}

TEST(StatsTest, SaveLoadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "swarmnet_stats_test.json";
  const NormalizeResult r = normalize_minmax(synthesize({.count = 30}));
  ColumnStats stats = r.stats;
  stats.mean = column_means(r.dataset);
  save_stats(stats, path.string());
  const ColumnStats back = load_stats(path.string());
  EXPECT_EQ(back.names, stats.names);
  EXPECT_EQ(back.min, stats.min);
  EXPECT_EQ(back.max, stats.max);
  EXPECT_EQ(back.mean, stats.mean);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace swarmnet
