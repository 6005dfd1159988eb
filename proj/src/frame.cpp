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

#include "guiperf/frame.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "guiperf/error.hpp"

namespace guiperf {

namespace {

void convert_to_luma(const Frame& frame, GrayImage& out) {
  out.resize(frame.height, frame.width);
  for (int y = 0; y < frame.height; ++y) {
    const std::uint8_t* src = frame.pixels.row(y).data();
    std::uint8_t* dst = out.row(y).data();
    for (int x = 0; x < frame.width; ++x) {
      const double v = 0.299 * src[3 * x] + 0.587 * src[3 * x + 1] +
                       0.114 * src[3 * x + 2];
      const long r = std::lround(v);
      dst[x] = static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
    }
  }
}

}  // namespace

Frame Frame::Gray(std::size_t index, double pts_ms, GrayImage plane) {
  Frame f;
  f.index = index;
  f.pts_ms = pts_ms;
  f.width = static_cast<int>(plane.cols());
  f.height = static_cast<int>(plane.rows());
  f.colorspace = Colorspace::kGray;
  f.pixels = std::move(plane);
  f.validate();
  return f;
}

Frame Frame::Rgb(std::size_t index, double pts_ms, int width, int height,
                 Raster interleaved) {
  Frame f;
  f.index = index;
  f.pts_ms = pts_ms;
  f.width = width;
  f.height = height;
  f.colorspace = Colorspace::kRgb;
  f.pixels = std::move(interleaved);
  f.validate();
  return f;
}

void Frame::validate() const {
  if (width < 1 || height < 1) {
    throw Error(fmt::format("frame {}: invalid dimensions {}x{}", index, width,
                            height));
  }
  if (pixels.rows() != height || pixels.cols() != width * channels()) {
    throw Error(fmt::format(
        "frame {}: pixel buffer is {}x{}, expected {}x{}", index,
        pixels.rows(), pixels.cols(), height, width * channels()));
  }
  if (!(pts_ms >= 0.0)) {
    throw Error(fmt::format("frame {}: negative timestamp {}", index, pts_ms));
  }
}

FrameSequence::FrameSequence(std::vector<Frame> frames, double nominal_fps,
                             std::string source_id)
    : frames_(std::move(frames)),
      nominal_fps_(nominal_fps),
      source_id_(std::move(source_id)) {
  if (frames_.empty()) throw Error("frame sequence is empty");
  if (!(nominal_fps_ > 0.0)) {
    throw Error(fmt::format("nominal fps must be positive, got {}",
                            nominal_fps_));
  }
  const Frame& first = frames_.front();
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    const Frame& f = frames_[i];
    f.validate();
    if (f.width != first.width || f.height != first.height ||
        f.colorspace != first.colorspace) {
      throw Error(fmt::format("dimension mismatch at entry {}", i));
    }
    if (i > 0 && !(f.pts_ms > frames_[i - 1].pts_ms)) {
      throw Error(fmt::format("non-monotonic timestamp at entry {}", i));
    }
  }
}

Frame to_grayscale(const Frame& frame) {
  if (frame.colorspace == Colorspace::kGray) return frame;
  GrayImage plane;
  convert_to_luma(frame, plane);
  return Frame::Gray(frame.index, frame.pts_ms, std::move(plane));
}

const GrayImage& gray_plane(const Frame& frame, GrayImage& scratch) {
  if (frame.colorspace == Colorspace::kGray) return frame.pixels;
  convert_to_luma(frame, scratch);
  return scratch;
}

}  // namespace guiperf
