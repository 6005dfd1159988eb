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

#ifndef GUIPERF_TAPDETECT_HPP_
#define GUIPERF_TAPDETECT_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "guiperf/frame.hpp"

namespace guiperf {

// Pixel rectangle, top-left origin.
struct BBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  double center_x() const { return x + w / 2.0; }
  double center_y() const { return y + h / 2.0; }
  bool operator==(const BBox&) const = default;
};

struct TapDetection {
  std::size_t frame_index = 0;
  BBox bbox;
  double confidence = 0.0;
};

enum class DetectorMode { kBuiltin, kExternal };

struct DetectorConfig {
  DetectorMode mode = DetectorMode::kBuiltin;
  double min_radius_px = 8.0;
  double max_radius_px = 60.0;
  int diff_threshold = 12;
  double circularity_min = 0.6;
  double confidence_threshold = 0.5;
  std::optional<std::filesystem::path> external_path;
  // Radius of the square closing applied to the difference mask before
  // labelling. Bridges the pinch points between the leading and trailing
  // crescents of a moving indicator so the filled blob is the swept disc.
  int closing_radius_px = 2;

  void validate() const;
};

// Shape statistics of one hole-filled, 4-connected difference blob.
struct Blob {
  BBox bbox;
  double area = 0.0;
  double perimeter = 0.0;

  double equivalent_radius() const;
  // 4*pi*area / perimeter^2, clamped to [0, 1].
  double circularity() const;
};

// Blobs of a binary mask (nonzero = set). Holes are filled before the area
// and the traced 8-connected outer contour length are measured. Blobs whose
// bounding box exceeds `max_extent` on either side are skipped unmeasured.
std::vector<Blob> find_blobs(const GrayImage& mask, int max_extent);

// Best indicator candidate in the difference of two luma planes.
std::optional<TapDetection> detect_in_pair(const GrayImage& previous,
                                           const GrayImage& current,
                                           std::size_t frame_index,
                                           const DetectorConfig& cfg);

// At most one detection per frame, sorted by frame index. Frame i > 0 is
// differenced against frame i-1 and frame 0 against frame 1. In external
// mode the detections are read from cfg.external_path instead.
std::vector<TapDetection> detect_taps(const FrameSequence& seq,
                                      const DetectorConfig& cfg);

// JSON lines of {"frame", "x", "y", "w", "h", "confidence"}. Rows below
// the confidence threshold are dropped, the most confident row per frame
// wins and boxes are clipped to the frame.
std::vector<TapDetection> ingest_external_detections(
    const std::filesystem::path& path, const FrameSequence& seq,
    double confidence_threshold = 0.5);

}  // namespace guiperf

#endif  // GUIPERF_TAPDETECT_HPP_
