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

#include "guiperf/segmenter.hpp"

#include <cmath>

#include <fmt/format.h>

#include "guiperf/error.hpp"

namespace guiperf {

std::string_view to_string(Gesture g) {
  return g == Gesture::kTap ? "Tap" : "Swipe";
}

Gesture parse_gesture(std::string_view s) {
  if (s == "Tap") return Gesture::kTap;
  if (s == "Swipe") return Gesture::kSwipe;
  throw Error(fmt::format("unknown gesture \"{}\"", s));
}

std::vector<TapSequence> group_detections(
    std::span<const TapDetection> detections, std::size_t gap_tolerance) {
  std::vector<TapSequence> out;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const TapDetection& d = detections[i];
    if (i > 0 && d.frame_index <= detections[i - 1].frame_index) {
      throw Error(fmt::format(
          "detections must be sorted and unique per frame (entry {})", i));
    }
    if (out.empty() || d.frame_index - out.back().last_frame > gap_tolerance) {
      out.push_back(TapSequence{{}, d.frame_index, d.frame_index});
    }
    out.back().detections.push_back(d);
    out.back().last_frame = d.frame_index;
  }
  return out;
}

Gesture classify_gesture(const TapSequence& seq, double tap_radius_px) {
  if (seq.detections.empty()) throw Error("empty tap sequence");
  const BBox& a = seq.detections.front().bbox;
  const BBox& b = seq.detections.back().bbox;
  const double distance = std::hypot(b.center_x() - a.center_x(),
                                     b.center_y() - a.center_y());
  return distance < tap_radius_px ? Gesture::kTap : Gesture::kSwipe;
}

std::vector<Interaction> segment_interactions(
    std::span<const TapSequence> sequences, std::size_t total_frames,
    double tap_radius_px) {
  std::vector<Interaction> out;
  out.reserve(sequences.size());
  for (std::size_t k = 0; k < sequences.size(); ++k) {
    const TapSequence& s = sequences[k];
    if (s.first_frame >= total_frames || s.last_frame >= total_frames) {
      throw Error(fmt::format("tap sequence {} lies outside {} frames", k,
                              total_frames));
    }
    std::size_t end = total_frames - 1;
    if (k + 1 < sequences.size()) {
      const TapSequence& next = sequences[k + 1];
      if (next.first_frame <= s.last_frame) {
        throw Error(fmt::format(
            "tap sequences {} (frames {}-{}) and {} (frames {}-{}) overlap", k,
            s.first_frame, s.last_frame, k + 1, next.first_frame,
            next.last_frame));
      }
      end = next.first_frame - 1;
    }
    out.push_back(Interaction{k, s.first_frame, end,
                              classify_gesture(s, tap_radius_px), s});
  }
  return out;
}

}  // namespace guiperf
