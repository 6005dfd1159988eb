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

#include "guiperf/tapdetect.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "guiperf/error.hpp"

namespace guiperf {

namespace {

using Mask = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::RowMajor>;
using Labels =
    Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Clockwise ring (y grows downward) starting at west.
constexpr std::array<std::array<int, 2>, 8> kRing = {{{-1, 0},
                                                      {-1, -1},
                                                      {0, -1},
                                                      {1, -1},
                                                      {1, 0},
                                                      {1, 1},
                                                      {0, 1},
                                                      {-1, 1}}};

int ring_index(int dx, int dy) {
  for (int k = 0; k < 8; ++k) {
    if (kRing[k][0] == dx && kRing[k][1] == dy) return k;
  }
  return -1;
}

// Moore-neighbour trace of the outer contour of the set pixels in `m`. The
// mask must carry a one-pixel unset border. Returns the chain length with
// unit axial steps and sqrt(2) diagonal steps.
double trace_perimeter(const Mask& m) {
  int sx = -1;
  int sy = -1;
  for (int y = 0; y < m.rows() && sx < 0; ++y) {
    for (int x = 0; x < m.cols(); ++x) {
      if (m(y, x)) {
        sx = x;
        sy = y;
        break;
      }
    }
  }
  if (sx < 0) return 0.0;

  int px = sx;
  int py = sy;
  int bx = sx - 1;
  int by = sy;
  const int start_bx = bx;
  const int start_by = by;
  double length = 0.0;
  const long max_steps = 4L * m.size() + 8;
  for (long step = 0; step < max_steps; ++step) {
    const int start = ring_index(bx - px, by - py);
    int cx = -1;
    int cy = -1;
    for (int k = 1; k <= 8; ++k) {
      const auto& o = kRing[(start + k) % 8];
      const int nx = px + o[0];
      const int ny = py + o[1];
      if (m(ny, nx)) {
        cx = nx;
        cy = ny;
        break;
      }
      bx = nx;
      by = ny;
    }
    if (cx < 0) return 0.0;  // isolated pixel
    length += (cx != px && cy != py) ? std::numbers::sqrt2 : 1.0;
    px = cx;
    py = cy;
    if (px == sx && py == sy && bx == start_bx && by == start_by) break;
  }
  return length;
}

// Component pixels inside `box`, hole-filled, with a one-pixel border.
Mask filled_component(const Labels& labels, std::int32_t label,
                      const BBox& box) {
  Mask local = Mask::Zero(box.h + 2, box.w + 2);
  for (int y = 0; y < box.h; ++y) {
    for (int x = 0; x < box.w; ++x) {
      if (labels(box.y + y, box.x + x) == label) local(y + 1, x + 1) = 1;
    }
  }
  // 8-connected background flood from the border; unreached background is
  // a hole of the 4-connected foreground.
  std::vector<std::pair<int, int>> stack{{0, 0}};
  local(0, 0) = 2;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    for (const auto& o : kRing) {
      const int nx = x + o[0];
      const int ny = y + o[1];
      if (nx < 0 || ny < 0 || nx >= local.cols() || ny >= local.rows()) {
        continue;
      }
      if (local(ny, nx) == 0) {
        local(ny, nx) = 2;
        stack.emplace_back(nx, ny);
      }
    }
  }
  for (Eigen::Index i = 0; i < local.size(); ++i) {
    local.data()[i] = local.data()[i] == 2 ? 0 : 1;
  }
  return local;
}

// Square-element closing of `mask`; pixels outside the mask count as unset.
Mask close_mask(const Mask& mask, int radius) {
  if (radius <= 0) return mask;
  const Eigen::Index rows = mask.rows();
  const Eigen::Index cols = mask.cols();
  auto sweep = [radius](const Mask& in, bool dilate, bool horizontal) {
    Mask out(in.rows(), in.cols());
    const Eigen::Index n = horizontal ? in.cols() : in.rows();
    const Eigen::Index lines = horizontal ? in.rows() : in.cols();
    for (Eigen::Index l = 0; l < lines; ++l) {
      for (Eigen::Index i = 0; i < n; ++i) {
        std::uint8_t acc = dilate ? 0 : 1;
        for (Eigen::Index k = i - radius; k <= i + radius; ++k) {
          std::uint8_t v = 0;
          if (k >= 0 && k < n) v = horizontal ? in(l, k) : in(k, l);
          acc = dilate ? (acc | v) : (acc & v);
        }
        if (horizontal) {
          out(l, i) = acc;
        } else {
          out(i, l) = acc;
        }
      }
    }
    return out;
  };
  // Pad so erosion never sees the artificial border.
  const int pad = radius + 1;
  Mask padded = Mask::Zero(rows + 2 * pad, cols + 2 * pad);
  padded.block(pad, pad, rows, cols) = mask;
  Mask dilated = sweep(sweep(padded, true, true), true, false);
  Mask closed = sweep(sweep(dilated, false, true), false, false);
  return closed.block(pad, pad, rows, cols);
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(min_radius_px > 0.0) || !(min_radius_px < max_radius_px)) {
    throw Error("detector: require 0 < min_radius_px < max_radius_px");
  }
  if (diff_threshold < 0 || diff_threshold > 255) {
    throw Error("detector: diff_threshold must be in [0, 255]");
  }
  if (circularity_min < 0.0 || circularity_min > 1.0 ||
      confidence_threshold < 0.0 || confidence_threshold > 1.0) {
    throw Error("detector: circularity/confidence thresholds must be in [0, 1]");
  }
  if (closing_radius_px < 0) throw Error("detector: negative closing radius");
  if (mode == DetectorMode::kExternal && !external_path) {
    throw Error("detector: external mode requires a detections path");
  }
}

double Blob::equivalent_radius() const {
  return std::sqrt(area / std::numbers::pi);
}

double Blob::circularity() const {
  if (perimeter <= 0.0) return 0.0;
  return std::min(1.0, 4.0 * std::numbers::pi * area / (perimeter * perimeter));
}

std::vector<Blob> find_blobs(const GrayImage& mask, int max_extent) {
  const int rows = static_cast<int>(mask.rows());
  const int cols = static_cast<int>(mask.cols());
  Labels labels = Labels::Zero(rows, cols);
  std::vector<Blob> blobs;
  std::vector<std::pair<int, int>> stack;
  std::int32_t next = 0;
  for (int y0 = 0; y0 < rows; ++y0) {
    for (int x0 = 0; x0 < cols; ++x0) {
      if (!mask(y0, x0) || labels(y0, x0)) continue;
      const std::int32_t label = ++next;
      int x_min = x0, x_max = x0, y_min = y0, y_max = y0;
      labels(y0, x0) = label;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
        constexpr int kDx[4] = {1, -1, 0, 0};
        constexpr int kDy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = x + kDx[k];
          const int ny = y + kDy[k];
          if (nx < 0 || ny < 0 || nx >= cols || ny >= rows) continue;
          if (mask(ny, nx) && !labels(ny, nx)) {
            labels(ny, nx) = label;
            stack.emplace_back(nx, ny);
          }
        }
      }
      const BBox box{x_min, y_min, x_max - x_min + 1, y_max - y_min + 1};
      if (box.w > max_extent || box.h > max_extent) continue;
      const Mask filled = filled_component(labels, label, box);
      Blob blob;
      blob.bbox = box;
      blob.area = static_cast<double>(filled.cast<int>().sum());
      blob.perimeter = trace_perimeter(filled);
      blobs.push_back(blob);
    }
  }
  return blobs;
}

std::optional<TapDetection> detect_in_pair(const GrayImage& previous,
                                           const GrayImage& current,
                                           std::size_t frame_index,
                                           const DetectorConfig& cfg) {
  if (previous.rows() != current.rows() || previous.cols() != current.cols()) {
    throw Error(fmt::format("frame {}: size differs from its neighbour",
                            frame_index));
  }
  const int rows = static_cast<int>(current.rows());
  const int cols = static_cast<int>(current.cols());

  // Bounding box of the changed pixels first; most frame pairs are static.
  int x_min = cols, x_max = -1, y_min = rows, y_max = -1;
  long changed = 0;
  for (int y = 0; y < rows; ++y) {
    const std::uint8_t* a = previous.row(y).data();
    const std::uint8_t* b = current.row(y).data();
    for (int x = 0; x < cols; ++x) {
      if (std::abs(int{b[x]} - int{a[x]}) >= cfg.diff_threshold) {
        ++changed;
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  const double min_area =
      std::numbers::pi * cfg.min_radius_px * cfg.min_radius_px;
  if (changed == 0 || changed * 4 < min_area) return std::nullopt;

  const int w = x_max - x_min + 1;
  const int h = y_max - y_min + 1;
  Mask roi(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      roi(y, x) = std::abs(int{current(y_min + y, x_min + x)} -
                           int{previous(y_min + y, x_min + x)}) >=
                  cfg.diff_threshold;
    }
  }
  roi = close_mask(roi, cfg.closing_radius_px);

  const int max_extent =
      static_cast<int>(std::ceil(4.0 * cfg.max_radius_px)) + 1;
  std::optional<TapDetection> best;
  for (const Blob& blob : find_blobs(roi, max_extent)) {
    const double r = blob.equivalent_radius();
    if (r < cfg.min_radius_px || r > cfg.max_radius_px) continue;
    const double circ = blob.circularity();
    if (circ < cfg.circularity_min || circ < cfg.confidence_threshold) continue;
    if (!best || circ > best->confidence) {
      BBox box = blob.bbox;
      box.x += x_min;
      box.y += y_min;
      best = TapDetection{frame_index, box, circ};
    }
  }
  return best;
}

std::vector<TapDetection> detect_taps(const FrameSequence& seq,
                                      const DetectorConfig& cfg) {
  cfg.validate();
  if (cfg.mode == DetectorMode::kExternal) {
    return ingest_external_detections(*cfg.external_path, seq,
                                      cfg.confidence_threshold);
  }
  std::vector<TapDetection> out;
  if (seq.size() < 2) return out;
  GrayImage scratch_a;
  GrayImage scratch_b;
  // Frame 0 against frame 1.
  {
    const GrayImage& f0 = gray_plane(seq[0], scratch_a);
    const GrayImage& f1 = gray_plane(seq[1], scratch_b);
    if (auto d = detect_in_pair(f1, f0, 0, cfg)) out.push_back(*d);
  }
  GrayImage prev_buf;
  GrayImage cur_buf;
  const GrayImage* prev = &gray_plane(seq[0], prev_buf);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const GrayImage* cur = &gray_plane(seq[i], cur_buf);
    if (auto d = detect_in_pair(*prev, *cur, i, cfg)) out.push_back(*d);
    if (cur == &cur_buf) {
      std::swap(prev_buf, cur_buf);
      prev = &prev_buf;
    } else {
      prev = cur;
    }
  }
  return out;
}

std::vector<TapDetection> ingest_external_detections(
    const std::filesystem::path& path, const FrameSequence& seq,
    double confidence_threshold) {
  std::ifstream in(path);
  if (!in) {
    throw Error(fmt::format("cannot read detections file {}", path.string()));
  }
  std::map<std::size_t, TapDetection> best;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    TapDetection d;
    long frame = 0;
    try {
      const auto row = nlohmann::json::parse(line);
      frame = row.at("frame").get<long>();
      d.bbox = BBox{row.at("x").get<int>(), row.at("y").get<int>(),
                    row.at("w").get<int>(), row.at("h").get<int>()};
      d.confidence = row.at("confidence").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(fmt::format("{} line {}: malformed detection: {}",
                              path.string(), line_no, e.what()));
    }
    if (frame < 0 || static_cast<std::size_t>(frame) >= seq.size()) {
      throw Error(fmt::format("{} line {}: frame {} outside sequence of {}",
                              path.string(), line_no, frame, seq.size()));
    }
    if (d.confidence < confidence_threshold) continue;
    const int x0 = std::max(0, d.bbox.x);
    const int y0 = std::max(0, d.bbox.y);
    const int x1 = std::min(seq.width(), d.bbox.x + d.bbox.w);
    const int y1 = std::min(seq.height(), d.bbox.y + d.bbox.h);
    if (x1 - x0 < 1 || y1 - y0 < 1) {
      throw Error(fmt::format("{} line {}: box lies outside the frame",
                              path.string(), line_no));
    }
    d.bbox = BBox{x0, y0, x1 - x0, y1 - y0};
    d.frame_index = static_cast<std::size_t>(frame);
    auto it = best.find(d.frame_index);
    if (it == best.end() || d.confidence > it->second.confidence) {
      best[d.frame_index] = d;
    }
  }
  std::vector<TapDetection> out;
  out.reserve(best.size());
  for (auto& [frame, d] : best) out.push_back(d);
  return out;
}

}  // namespace guiperf
