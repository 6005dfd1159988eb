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

#ifndef GUIPERF_SEGMENTER_HPP_
#define GUIPERF_SEGMENTER_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "guiperf/tapdetect.hpp"

namespace guiperf {

enum class Gesture { kTap, kSwipe };

std::string_view to_string(Gesture g);
Gesture parse_gesture(std::string_view s);

// Detections of one physical touch.
struct TapSequence {
  std::vector<TapDetection> detections;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;
};

// Frames [start_frame, end_frame] owned by one user operation. end_frame is
// the frame before the next interaction's onset, or the last frame.
struct Interaction {
  std::size_t id = 0;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  Gesture gesture = Gesture::kTap;
  TapSequence tap_sequence;

  std::size_t frame_count() const { return end_frame - start_frame + 1; }
};

inline constexpr std::size_t kDefaultGapTolerance = 2;
inline constexpr double kDefaultTapRadiusPx = 10.0;

// Consecutive detections stay in one sequence iff their frame gap is at most
// `gap_tolerance`. Input must be sorted with unique frame indices.
std::vector<TapSequence> group_detections(
    std::span<const TapDetection> detections,
    std::size_t gap_tolerance = kDefaultGapTolerance);

// Tap when the first and last box centres are strictly closer than
// `tap_radius_px`, Swipe otherwise.
Gesture classify_gesture(const TapSequence& seq,
                         double tap_radius_px = kDefaultTapRadiusPx);

// Throws Error naming the pair when two sequences overlap.
std::vector<Interaction> segment_interactions(
    std::span<const TapSequence> sequences, std::size_t total_frames,
    double tap_radius_px = kDefaultTapRadiusPx);

}  // namespace guiperf

#endif  // GUIPERF_SEGMENTER_HPP_
