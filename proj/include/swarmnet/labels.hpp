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

// Final-decision classes and the sub-grade labeling rule table.

#ifndef SWARMNET_LABELS_HPP_
#define SWARMNET_LABELS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace swarmnet {

// Final decision class. The numeric code is 1 (A) .. 5 (E).
enum class Grade { kA = 1, kB, kC, kD, kE };

inline constexpr std::array<Grade, 5> kAllGrades = {Grade::kA, Grade::kB, Grade::kC,
                                                    Grade::kD, Grade::kE};
inline constexpr int kClassCount = 5;

inline int class_code(Grade g) { return static_cast<int>(g); }
inline int class_index(Grade g) { return static_cast<int>(g) - 1; }
inline Grade grade_from_code(int code) { return static_cast<Grade>(code); }

char grade_letter(Grade g);
std::optional<Grade> parse_grade(std::string_view text);
// Human-readable decision ("Thanks from Minister", ...).
const char* grade_description(Grade g);

// Maps classes onto network targets: class k sits at k * step. With the
// default step of 0.1 the targets are 0.1 .. 0.5 and one class step equals
// the tolerant-scoring band.
struct ClassGrid {
  double step = 0.1;

  double target(Grade g) const { return step * class_code(g); }
};

// Grade on the six-step sub-criterion scale; A* ranks above A.
enum class SubGrade { kAStar, kA, kB, kC, kD, kE };

inline constexpr std::array<SubGrade, 6> kAllSubGrades = {
    SubGrade::kAStar, SubGrade::kA, SubGrade::kB,
    SubGrade::kC,     SubGrade::kD, SubGrade::kE};

std::string sub_grade_name(SubGrade g);

struct SubGrades {
  SubGrade cad;
  SubGrade fb;
  SubGrade portfolio;
};

// Applies the decision rows top-down; std::nullopt means no row covers the
// combination.
std::optional<Grade> final_label(const SubGrades& grades);

// Score thresholds on [0, 1] used to grade a group mean.
struct GradeThresholds {
  double a_star = 0.9;
  double a = 0.8;
  double b = 0.7;
  double c = 0.6;
  double d = 0.5;
};

SubGrade grade_from_score(double score, const GradeThresholds& t = {});

}  // namespace swarmnet

#endif  // SWARMNET_LABELS_HPP_
