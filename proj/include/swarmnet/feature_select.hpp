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

// Correlation-based feature subset selection.
//
// Subsets are scored with
//   merit = k * mean|r_cf| / sqrt(k + k (k - 1) * mean|r_ff|)
// where r_cf are feature-class and r_ff pairwise feature-feature Pearson
// correlations. A forward best-first search looks for the best subset.

#ifndef SWARMNET_FEATURE_SELECT_HPP_
#define SWARMNET_FEATURE_SELECT_HPP_

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "swarmnet/dataset.hpp"

namespace swarmnet {

// Pearson correlation; 0 when either vector is constant.
double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y);

struct CorrelationTable {
  Eigen::MatrixXd feature_feature;  // symmetric, unit diagonal
  Eigen::VectorXd feature_class;

  // `features` holds one sample per row; `classes` the numeric class codes.
  static CorrelationTable Build(const Eigen::MatrixXd& features,
                                const Eigen::VectorXd& classes);

  Eigen::Index feature_count() const { return feature_class.size(); }
};

// Order of `subset` does not matter. Throws on an empty subset.
double merit(std::span<const int> subset, const CorrelationTable& table);

struct SearchStep {
  std::vector<int> expanded;  // subset taken from the open list
  std::vector<int> best;      // best subset after the expansion
  double best_merit;
};

struct FeatureSubset {
  std::vector<int> indices;  // ascending
  double merit = 0.0;
  std::vector<SearchStep> trace;
};

struct SearchOptions {
  // Stop after this many consecutive expansions that do not improve the best.
  int stale_limit = 5;
};

// Forward best-first search from the empty set. Ties in the open list go to
// the lexicographically smallest subset. Throws DataError when no subset has
// positive merit.
FeatureSubset select_features(const CorrelationTable& table,
                              const SearchOptions& options = {});
FeatureSubset select_features(const Dataset& dataset,
                              const SearchOptions& options = {});

}  // namespace swarmnet

#endif  // SWARMNET_FEATURE_SELECT_HPP_
