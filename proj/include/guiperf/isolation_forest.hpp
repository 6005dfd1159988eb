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

#ifndef GUIPERF_ISOLATION_FOREST_HPP_
#define GUIPERF_ISOLATION_FOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace guiperf {

// splitmix64 stream; one per tree, seeded with seed + tree index.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform in the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  // Uniform integer in [0, bound).
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  }

 private:
  std::uint64_t state_;
};

// Average unsuccessful-search path length of a binary search tree over n
// points: 2 H(n-1) - 2 (n-1) / n with H(i) ~ ln(i) + Euler's constant,
// c(2) = 1 and c(n < 2) = 0.
double average_path_length(std::size_t n);

// Isolation forest over one-dimensional points. Subsamples are drawn from
// the sorted points, so the forest depends only on the multiset of values.
class IsolationForest {
 public:
  IsolationForest(std::span<const double> points, int tree_count,
                  int subsample_size, std::uint64_t seed);

  // Mean isolation depth E[h(x)] including the c(size) leaf adjustment.
  double expected_depth(double x) const;
  // 2^(-E[h(x)] / c(sample size)); 0.5 when the sample has one point.
  double score(double x) const;

  std::size_t sample_size() const { return sample_size_; }
  int depth_limit() const { return depth_limit_; }

 private:
  struct Node {
    double split = 0.0;
    int left = -1;  // -1 marks a leaf
    int right = -1;
    std::size_t size = 0;
  };
  using Tree = std::vector<Node>;

  int grow(Tree& tree, std::vector<double>& values, std::size_t begin,
           std::size_t end, int depth, SplitMix64& rng) const;

  std::vector<Tree> trees_;
  std::size_t sample_size_ = 0;
  int depth_limit_ = 0;
};

}  // namespace guiperf

#endif  // GUIPERF_ISOLATION_FOREST_HPP_
