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

#include "swarmnet/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "swarmnet/errors.hpp"

namespace swarmnet {
namespace {

struct OpenEntry {
  std::vector<int> subset;
  double merit;
};

// Highest merit first, then lexicographically smallest subset.
bool Precedes(const OpenEntry& a, const OpenEntry& b) {
  if (a.merit != b.merit) return a.merit > b.merit;
  return a.subset < b.subset;
}

}  // namespace

double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw DimensionError("pearson: length mismatch");
  if (x.size() < 2) throw DataError("pearson: need at least two values");
  const Eigen::ArrayXd dx = x.array() - x.mean();
  const Eigen::ArrayXd dy = y.array() - y.mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  const double r = (dx * dy).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationTable CorrelationTable::Build(const Eigen::MatrixXd& features,
                                         const Eigen::VectorXd& classes) {
  if (features.rows() != classes.size()) {
    throw DimensionError("correlation table: row count differs from class count");
  }
  const Eigen::Index k = features.cols();
  CorrelationTable table;
  table.feature_feature = Eigen::MatrixXd::Identity(k, k);
  table.feature_class.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    table.feature_class[i] = pearson(features.col(i), classes);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double r = pearson(features.col(i), features.col(j));
      table.feature_feature(i, j) = r;
      table.feature_feature(j, i) = r;
    }
  }
  return table;
}

double merit(std::span<const int> subset, const CorrelationTable& table) {
  if (subset.empty()) throw DataError("merit: empty subset");
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  for (int f : sorted) {
    if (f < 0 || f >= table.feature_count()) {
      throw DimensionError("merit: feature index out of range");
    }
  }
  const double k = static_cast<double>(sorted.size());
  double rcf = 0.0;
  for (int f : sorted) rcf += std::abs(table.feature_class[f]);
  rcf /= k;
  if (sorted.size() == 1) return rcf;
  double rff = 0.0;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      rff += std::abs(table.feature_feature(sorted[a], sorted[b]));
    }
  }
  rff /= k * (k - 1.0) / 2.0;
  return k * rcf / std::sqrt(k + k * (k - 1.0) * rff);
}

FeatureSubset select_features(const CorrelationTable& table,
                              const SearchOptions& options) {
  const int n = static_cast<int>(table.feature_count());
  FeatureSubset result;
  std::vector<OpenEntry> open = {OpenEntry{{}, 0.0}};
  std::set<std::vector<int>> visited = {{}};
  std::vector<int> best;
  double best_merit = 0.0;
  int stale = 0;

  while (!open.empty() && stale < options.stale_limit) {
    const auto head = std::min_element(open.begin(), open.end(), Precedes);
    const OpenEntry current = *head;
    open.erase(head);

    bool improved = false;
    for (int f = 0; f < n; ++f) {
      if (std::binary_search(current.subset.begin(), current.subset.end(), f)) continue;
      std::vector<int> child = current.subset;
      child.insert(std::upper_bound(child.begin(), child.end(), f), f);
      if (!visited.insert(child).second) continue;
      const double m = merit(child, table);
      if (m > best_merit) {
        improved = true;
        best = child;
        best_merit = m;
      }
      open.push_back(OpenEntry{std::move(child), m});
    }
    stale = improved ? 0 : stale + 1;
    result.trace.push_back(SearchStep{current.subset, best, best_merit});
  }

  if (best.empty() || !(best_merit > 0.0)) {
    throw DataError("feature selection: no feature correlates with the class");
  }
  result.indices = std::move(best);
  result.merit = best_merit;
  return result;
}

FeatureSubset select_features(const Dataset& dataset, const SearchOptions& options) {
  dataset.Validate();
  if (dataset.feature_count() < 2) throw DataError("feature selection: need >= 2 features");
  if (dataset.size() < 3) throw DataError("feature selection: need >= 3 samples");
  if (dataset.has_missing()) throw DataError("feature selection: impute missing values first");
  return select_features(CorrelationTable::Build(dataset.features, dataset.class_codes()),
                         options);
}

}  // namespace swarmnet
