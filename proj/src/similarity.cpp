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

#include "guiperf/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "guiperf/error.hpp"

namespace guiperf {

namespace {

Plane summed_area(const Plane& x, bool squared) {
  Plane s = Plane::Zero(x.rows() + 1, x.cols() + 1);
  for (Eigen::Index y = 0; y < x.rows(); ++y) {
    double row = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double v = x(y, c);
      row += squared ? v * v : v;
      s(y + 1, c + 1) = s(y, c + 1) + row;
    }
  }
  return s;
}

double box(const Plane& s, Eigen::Index y, Eigen::Index x, Eigen::Index h,
           Eigen::Index w) {
  return s(y + h, x + w) - s(y, x + w) - s(y + h, x) + s(y, x);
}

// Plane used for comparison, plus the factor mapping frame pixels onto it.
Plane prepared_plane(const Frame& f, const SsimParams& p, int* factor) {
  GrayImage scratch;
  const GrayImage& g = gray_plane(f, scratch);
  if (p.downscale_max_dim) return downscale_area(g, *p.downscale_max_dim, factor);
  *factor = 1;
  return g.cast<double>();
}

}  // namespace

void SsimParams::validate() const {
  // Even sizes are allowed: the default window is 8.
  if (window < 3) throw Error("ssim: window must be at least 3");
  if (!(k1 > 0.0 && k1 < 1.0 && k2 > 0.0 && k2 < 1.0)) {
    throw Error("ssim: k1 and k2 must lie in (0, 1)");
  }
  if (!(dynamic_range > 0.0)) throw Error("ssim: dynamic range must be positive");
  if (downscale_max_dim && *downscale_max_dim < 1) {
    throw Error("ssim: downscale dimension must be positive");
  }
  if (indicator_dilation_px < 0) throw Error("ssim: negative mask dilation");
}

PlaneStats::PlaneStats(Plane p)
    : plane(std::move(p)),
      sum(summed_area(plane, false)),
      sum_sq(summed_area(plane, true)) {}

double ssim(const PlaneStats& a, const PlaneStats& b, const SsimParams& p,
            std::span<const BBox> excluded) {
  const Eigen::Index rows = a.plane.rows();
  const Eigen::Index cols = a.plane.cols();
  if (b.plane.rows() != rows || b.plane.cols() != cols) {
    throw Error(fmt::format("ssim: dimension mismatch {}x{} vs {}x{}", cols,
                            rows, b.plane.cols(), b.plane.rows()));
  }
  const Eigen::Index wh = std::min<Eigen::Index>(p.window, rows);
  const Eigen::Index ww = std::min<Eigen::Index>(p.window, cols);
  const double n = static_cast<double>(wh * ww);
  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);

  Plane cross = Plane::Zero(rows + 1, cols + 1);
  for (Eigen::Index y = 0; y < rows; ++y) {
    double row = 0.0;
    for (Eigen::Index x = 0; x < cols; ++x) {
      row += a.plane(y, x) * b.plane(y, x);
      cross(y + 1, x + 1) = cross(y, x + 1) + row;
    }
  }

  Plane blocked;
  if (!excluded.empty()) {
    Plane m = Plane::Zero(rows, cols);
    for (const BBox& r : excluded) {
      const Eigen::Index x0 = std::clamp<Eigen::Index>(r.x, 0, cols);
      const Eigen::Index y0 = std::clamp<Eigen::Index>(r.y, 0, rows);
      const Eigen::Index x1 = std::clamp<Eigen::Index>(r.x + r.w, 0, cols);
      const Eigen::Index y1 = std::clamp<Eigen::Index>(r.y + r.h, 0, rows);
      if (x1 > x0 && y1 > y0) m.block(y0, x0, y1 - y0, x1 - x0) = 1.0;
    }
    blocked = summed_area(m, false);
  }

  double total = 0.0;
  long count = 0;
  for (Eigen::Index y = 0; y + wh <= rows; ++y) {
    for (Eigen::Index x = 0; x + ww <= cols; ++x) {
      if (blocked.size() && box(blocked, y, x, wh, ww) > 0.0) continue;
      const double mu_a = box(a.sum, y, x, wh, ww) / n;
      const double mu_b = box(b.sum, y, x, wh, ww) / n;
      const double var_a = box(a.sum_sq, y, x, wh, ww) / n - mu_a * mu_a;
      const double var_b = box(b.sum_sq, y, x, wh, ww) / n - mu_b * mu_b;
      const double cov = box(cross, y, x, wh, ww) / n - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      ++count;
    }
  }
  return count == 0 ? 1.0 : total / static_cast<double>(count);
}

double ssim(const Frame& a, const Frame& b, const SsimParams& p) {
  p.validate();
  if (a.width != b.width || a.height != b.height) {
    throw Error(fmt::format("ssim: frames {} and {} differ in size", a.index,
                            b.index));
  }
  int fa = 1;
  int fb = 1;
  return ssim(PlaneStats(prepared_plane(a, p, &fa)),
              PlaneStats(prepared_plane(b, p, &fb)), p);
}

SimilaritySeries similarity_series(const FrameSequence& seq,
                                   const Interaction& interaction,
                                   const SsimParams& p) {
  p.validate();
  if (interaction.start_frame > interaction.end_frame ||
      interaction.end_frame >= seq.size()) {
    throw Error(fmt::format("interaction {}: frame range {}-{} outside {} frames",
                            interaction.id, interaction.start_frame,
                            interaction.end_frame, seq.size()));
  }
  SimilaritySeries out;
  out.interaction_id = interaction.id;
  if (interaction.frame_count() < 2) {
    out.too_short = true;
    return out;
  }

  const auto& dets = interaction.tap_sequence.detections;
  int factor = 1;
  PlaneStats prev(prepared_plane(seq[interaction.start_frame], p, &factor));
  std::vector<BBox> excluded;
  out.values.reserve(interaction.frame_count() - 1);
  for (std::size_t f = interaction.start_frame + 1; f <= interaction.end_frame;
       ++f) {
    PlaneStats cur(prepared_plane(seq[f], p, &factor));
    excluded.clear();
    if (p.exclude_indicator) {
      for (const TapDetection& d : dets) {
        if (d.frame_index != f && d.frame_index + 1 != f) continue;
        const int pad = p.indicator_dilation_px;
        const int x0 = d.bbox.x - pad;
        const int y0 = d.bbox.y - pad;
        const int x1 = d.bbox.x + d.bbox.w + pad;
        const int y1 = d.bbox.y + d.bbox.h + pad;
        // Outward rounding onto the comparison grid.
        const auto lo = [factor](int v) {
          return v >= 0 ? v / factor : -((-v + factor - 1) / factor);
        };
        const auto hi = [factor](int v) { return (v + factor - 1) / factor; };
        excluded.push_back(BBox{lo(x0), lo(y0), hi(x1) - lo(x0),
                                hi(y1) - lo(y0)});
      }
    }
    out.values.push_back(ssim(prev, cur, p, excluded));
    prev = std::move(cur);
  }
  return out;
}

}  // namespace guiperf
