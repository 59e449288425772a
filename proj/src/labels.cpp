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

#include "swarmnet/labels.hpp"

namespace swarmnet {
namespace {

bool AtLeastA(SubGrade g) { return g == SubGrade::kAStar || g == SubGrade::kA; }
bool AtMostB(SubGrade g) { return !AtLeastA(g); }

}  // namespace

char grade_letter(Grade g) { return static_cast<char>('A' + class_index(g)); }

std::optional<Grade> parse_grade(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  const char c = text[0];
  if (c >= 'A' && c <= 'E') return grade_from_code(c - 'A' + 1);
  if (c >= '1' && c <= '5') return grade_from_code(c - '0');
  return std::nullopt;
}

const char* grade_description(Grade g) {
  switch (g) {
    case Grade::kA:
      return "Thanks from Minister";
    case Grade::kB:
      return "Thanks from College Dean";
    case Grade::kC:
      return "Same Rights";
    case Grade::kD:
      return "Warning";
    case Grade::kE:
      return "Firm Warning";
  }
  return "";
}

std::string sub_grade_name(SubGrade g) {
  switch (g) {
    case SubGrade::kAStar:
      return "A*";
    case SubGrade::kA:
      return "A";
    case SubGrade::kB:
      return "B";
    case SubGrade::kC:
      return "C";
    case SubGrade::kD:
      return "D";
    case SubGrade::kE:
      return "E";
  }
  return "?";
}

std::optional<Grade> final_label(const SubGrades& g) {
  const SubGrade p = g.portfolio;
  const bool high = AtLeastA(g.cad) && AtLeastA(g.fb);
  const bool low = AtMostB(g.cad) && AtMostB(g.fb);

  if (g.cad == SubGrade::kAStar && g.fb == SubGrade::kAStar && p == SubGrade::kA) {
    return Grade::kA;
  }
  if (high && p == SubGrade::kB) return Grade::kB;
  if (low && (p == SubGrade::kB || p == SubGrade::kC)) return Grade::kC;
  if (high && p == SubGrade::kD) return Grade::kC;
  if (low && p == SubGrade::kD) return Grade::kD;
  if (high && p == SubGrade::kE) return Grade::kD;
  if (low && p == SubGrade::kE) return Grade::kE;
  return std::nullopt;
}

SubGrade grade_from_score(double score, const GradeThresholds& t) {
  if (score >= t.a_star) return SubGrade::kAStar;
  if (score >= t.a) return SubGrade::kA;
  if (score >= t.b) return SubGrade::kB;
  if (score >= t.c) return SubGrade::kC;
  if (score >= t.d) return SubGrade::kD;
  return SubGrade::kE;
}

}  // namespace swarmnet
