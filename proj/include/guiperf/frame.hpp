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

#ifndef GUIPERF_FRAME_HPP_
#define GUIPERF_FRAME_HPP_

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace guiperf {

// 8-bit raster, one row per image row. For RGB the columns interleave
// channels, so an RGB raster is height x (3 * width).
using Raster =
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GrayImage = Raster;

enum class Colorspace { kRgb, kGray };

constexpr int channel_count(Colorspace cs) {
  return cs == Colorspace::kRgb ? 3 : 1;
}

struct Frame {
  std::size_t index = 0;
  double pts_ms = 0.0;
  int width = 0;
  int height = 0;
  Colorspace colorspace = Colorspace::kGray;
  Raster pixels;

  static Frame Gray(std::size_t index, double pts_ms, GrayImage plane);
  static Frame Rgb(std::size_t index, double pts_ms, int width, int height,
                   Raster interleaved);

  int channels() const { return channel_count(colorspace); }
  // Throws Error when dimensions and buffer disagree.
  void validate() const;
};

// Immutable once built; safe to share between analysis workers.
class FrameSequence {
 public:
  FrameSequence(std::vector<Frame> frames, double nominal_fps,
                std::string source_id);

  const std::vector<Frame>& frames() const { return frames_; }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  std::size_t size() const { return frames_.size(); }
  int width() const { return frames_.front().width; }
  int height() const { return frames_.front().height; }
  Colorspace colorspace() const { return frames_.front().colorspace; }
  double nominal_fps() const { return nominal_fps_; }
  const std::string& source_id() const { return source_id_; }

 private:
  std::vector<Frame> frames_;
  double nominal_fps_;
  std::string source_id_;
};

// BT.601 luma, round(0.299R + 0.587G + 0.114B). GRAY frames come back as-is.
Frame to_grayscale(const Frame& frame);

// Luma plane of `frame` without copying when it is already GRAY; otherwise
// converts into `scratch` and returns it.
const GrayImage& gray_plane(const Frame& frame, GrayImage& scratch);

}  // namespace guiperf

#endif  // GUIPERF_FRAME_HPP_
