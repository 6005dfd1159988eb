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

#ifndef GUIPERF_SIMILARITY_HPP_
#define GUIPERF_SIMILARITY_HPP_

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "guiperf/frame.hpp"
#include "guiperf/segmenter.hpp"
#include "guiperf/tapdetect.hpp"

namespace guiperf {

using Plane =
    Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SsimParams {
  int window = 8;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
  // Area-average both frames until max(width, height) fits; nullopt keeps
  // full resolution.
  std::optional<int> downscale_max_dim = 320;
  bool exclude_indicator = true;
  int indicator_dilation_px = 4;

  void validate() const;
};

struct SimilaritySeries {
  std::size_t interaction_id = 0;
  // values[j] = ssim(frame start + j, frame start + j + 1).
  std::vector<double> values;
  // Set when the interaction has fewer than two frames.
  bool too_short = false;
};

// Summed-area tables of one plane, reusable across the two pairs a frame
// takes part in.
struct PlaneStats {
  Plane plane;
  Plane sum;     // (rows + 1) x (cols + 1)
  Plane sum_sq;  // (rows + 1) x (cols + 1)

  explicit PlaneStats(Plane p);
};

// Mean SSIM over all valid positions of a uniform square window (stride 1),
// using population statistics. Windows intersecting any rectangle of
// `excluded` are skipped; with no window left the result is 1. Planes
// smaller than the window are compared as one window.
double ssim(const PlaneStats& a, const PlaneStats& b, const SsimParams& p,
            std::span<const BBox> excluded = {});

template <typename DerivedA, typename DerivedB>
double ssim(const Eigen::ArrayBase<DerivedA>& a,
            const Eigen::ArrayBase<DerivedB>& b, const SsimParams& p,
            std::span<const BBox> excluded = {}) {
  return ssim(PlaneStats(a.template cast<double>()),
              PlaneStats(b.template cast<double>()), p, excluded);
}

// Block mean by the smallest integer factor that brings max(rows, cols)
// within `max_dim`. Trailing rows/columns that do not fill a block drop.
// `factor` receives the factor used (1 when no reduction was needed).
template <typename Derived>
Plane downscale_area(const Eigen::ArrayBase<Derived>& src, int max_dim,
                     int* factor = nullptr) {
  const Eigen::Index longest = std::max(src.rows(), src.cols());
  const int k = longest <= max_dim
                    ? 1
                    : static_cast<int>((longest + max_dim - 1) / max_dim);
  if (factor) *factor = k;
  if (k == 1) return src.template cast<double>();
  const Eigen::Index rows = src.rows() / k;
  const Eigen::Index cols = src.cols() / k;
  Plane out(rows, cols);
  const double inv = 1.0 / (static_cast<double>(k) * k);
  for (Eigen::Index y = 0; y < rows; ++y) {
    for (Eigen::Index x = 0; x < cols; ++x) {
      out(y, x) =
          src.derived().block(y * k, x * k, k, k).template cast<double>().sum() *
          inv;
    }
  }
  return out;
}

// Luma of both frames, optionally downscaled, compared with SSIM.
double ssim(const Frame& a, const Frame& b, const SsimParams& p);

// Similarity of each adjacent frame pair of the interaction. With
// exclude_indicator, the dilated boxes of tap detections on either frame of
// a pair are excluded from that pair.
SimilaritySeries similarity_series(const FrameSequence& seq,
                                   const Interaction& interaction,
                                   const SsimParams& p);

}  // namespace guiperf

#endif  // GUIPERF_SIMILARITY_HPP_
