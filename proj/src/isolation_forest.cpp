/*
 * Copyright (C) 2026 The guiperf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "guiperf/isolation_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guiperf/error.hpp"

namespace guiperf {

namespace {
constexpr double kEulerGamma = 0.5772156649015329;
}  // namespace

double average_path_length(std::size_t n) {
  if (n < 2) return 0.0;
  if (n == 2) return 1.0;
  const double m = static_cast<double>(n - 1);
  return 2.0 * (std::log(m) + kEulerGamma) - 2.0 * m / static_cast<double>(n);
}

IsolationForest::IsolationForest(std::span<const double> points,
                                 int tree_count, int subsample_size,
                                 std::uint64_t seed) {
  if (points.empty()) throw Error("isolation forest: no points");
  if (tree_count < 1 || subsample_size < 1) {
    throw Error("isolation forest: tree count and subsample size must be >= 1");
  }
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  sample_size_ =
      std::min(sorted.size(), static_cast<std::size_t>(subsample_size));
  depth_limit_ = static_cast<int>(
      std::ceil(std::log2(static_cast<double>(sample_size_))));

  std::vector<std::size_t> order(sorted.size());
  std::vector<double> sample(sample_size_);
  trees_.resize(static_cast<std::size_t>(tree_count));
  for (int t = 0; t < tree_count; ++t) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(t));
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first sample_size_ slots are the draw.
    for (std::size_t i = 0; i < sample_size_; ++i) {
      const std::size_t j = i + rng.below(order.size() - i);
      std::swap(order[i], order[j]);
      sample[i] = sorted[order[i]];
    }
    grow(trees_[t], sample, 0, sample.size(), 0, rng);
  }
}

int IsolationForest::grow(Tree& tree, std::vector<double>& values,
                          std::size_t begin, std::size_t end, int depth,
                          SplitMix64& rng) const {
  const int id = static_cast<int>(tree.size());
  tree.push_back(Node{0.0, -1, -1, end - begin});
  const auto [lo, hi] =
      std::minmax_element(values.begin() + begin, values.begin() + end);
  if (depth >= depth_limit_ || end - begin <= 1 || *lo == *hi) return id;

  const double split = *lo + rng.uniform() * (*hi - *lo);
  const auto mid = std::partition(values.begin() + begin, values.begin() + end,
                                  [split](double v) { return v < split; });
  const auto cut = static_cast<std::size_t>(mid - values.begin());
  tree[id].split = split;
  const int left = grow(tree, values, begin, cut, depth + 1, rng);
  const int right = grow(tree, values, cut, end, depth + 1, rng);
  tree[id].left = left;
  tree[id].right = right;
  return id;
}

double IsolationForest::expected_depth(double x) const {
  double total = 0.0;
  for (const Tree& tree : trees_) {
    int node = 0;
    int depth = 0;
    while (tree[node].left >= 0) {
      node = x < tree[node].split ? tree[node].left : tree[node].right;
      ++depth;
    }
    total += depth + average_path_length(tree[node].size);
  }
  return total / static_cast<double>(trees_.size());
}

double IsolationForest::score(double x) const {
  const double c = average_path_length(sample_size_);
  if (c <= 0.0) return 0.5;
  return std::exp2(-expected_depth(x) / c);
}

}  // namespace guiperf
