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

#ifndef GUIPERF_SYNTHGEN_HPP_
#define GUIPERF_SYNTHGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "guiperf/frame.hpp"
#include "guiperf/segmenter.hpp"
#include "guiperf/tapdetect.hpp"

namespace guiperf {

enum class TransitionKind { kFullScreen, kPartialRegion, kFade };

std::string_view to_string(TransitionKind k);
TransitionKind parse_transition_kind(std::string_view s);

struct PathPoint {
  std::size_t frame = 0;
  double x = 0.0;
  double y = 0.0;
};

// One programmed touch. The indicator follows `path` (linear between
// points), then fades out at the last point over `fade_frames`. The GUI
// starts changing at onset + lag and last changes at
// onset + lag + transition_frames - 1.
struct Touch {
  std::size_t onset_frame = 0;
  Gesture gesture = Gesture::kTap;
  std::vector<PathPoint> path;
  double indicator_radius_px = 20.0;
  double indicator_opacity = 0.45;
  int fade_frames = 4;
  int response_lag_frames = 1;
  int transition_frames = 1;
  TransitionKind transition_kind = TransitionKind::kFullScreen;
  // Panel area for partial-region transitions; defaults to the half of the
  // screen the touch does not start in.
  std::optional<BBox> region;

  std::size_t response_frame() const { return onset_frame + response_lag_frames; }
  std::size_t finish_frame() const {
    return response_frame() + transition_frames - 1;
  }
  std::size_t release_frame() const { return path.back().frame; }
  // Frame on which the indicator has fully disappeared.
  std::size_t indicator_gone_frame() const {
    return release_frame() + static_cast<std::size_t>(fade_frames) +
           (fade_frames == 0 ? 1 : 0);
  }
};

// A carousel-style banner that swaps content every `period_frames`.
struct BannerNoise {
  BBox region;
  int period_frames = 60;
};

struct Scenario {
  std::string name = "scenario";
  int width = 360;
  int height = 640;
  double fps = 60.0;
  std::size_t duration_frames = 0;
  std::vector<Touch> touches;
  std::optional<BannerNoise> banner;
  // Drives noise content only; layout and ground truth ignore it.
  std::uint64_t seed = 0;

  // Throws Error with a message naming the offending touch.
  void validate() const;
};

struct GroundTruthRecord {
  std::size_t f_start = 0;
  std::size_t f_response = 0;
  std::size_t f_finish = 0;
  std::size_t f_end = 0;
  Gesture type = Gesture::kTap;

  bool operator==(const GroundTruthRecord&) const = default;
};

struct Screencast {
  FrameSequence frames;
  std::vector<GroundTruthRecord> truth;
};

std::vector<GroundTruthRecord> ground_truth(const Scenario& sc);

// Deterministic GRAY rendering of the scenario with pts = i * 1000 / fps.
Screencast generate_screencast(const Scenario& sc);

// The fixed evaluation corpus: 20 scenarios on seeds 0-19 with 10-15
// touches each. With `with_noise`, every fourth scenario carries a banner.
std::vector<Scenario> canonical_corpus(bool with_noise = true);

nlohmann::json to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

// A scenario file holds one scenario object, an array of them, or
// {"canonical_corpus": {"noise": true}}.
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

nlohmann::json to_json(const GroundTruthRecord& r);
GroundTruthRecord truth_from_json(const nlohmann::json& j);
void write_truth(const std::vector<GroundTruthRecord>& truth,
                 const std::filesystem::path& path);
std::vector<GroundTruthRecord> read_truth(const std::filesystem::path& path);

}  // namespace guiperf

#endif  // GUIPERF_SYNTHGEN_HPP_
