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

#ifndef GUIPERF_PIPELINE_HPP_
#define GUIPERF_PIPELINE_HPP_

#include <cstddef>
#include <vector>

#include "guiperf/frame.hpp"
#include "guiperf/keyframes.hpp"
#include "guiperf/report.hpp"
#include "guiperf/segmenter.hpp"
#include "guiperf/similarity.hpp"
#include "guiperf/tapdetect.hpp"

namespace guiperf {

struct AnalysisConfig {
  DetectorConfig detector;
  std::size_t gap_tolerance = kDefaultGapTolerance;
  double tap_radius_px = kDefaultTapRadiusPx;
  SsimParams ssim;
  ForestConfig forest;
  AlertThresholds thresholds;
};

// Every intermediate product of one video's analysis, index-aligned per
// interaction.
struct AnalysisResult {
  std::vector<TapDetection> detections;
  std::vector<Interaction> interactions;
  std::vector<SimilaritySeries> series;
  std::vector<KeyframeResult> keyframes;
  std::vector<ResponsivenessMeasurement> measurements;
  ReportDocument report;
};

// Detect, segment, compare and localise keyframes for one screencast.
AnalysisResult analyze_sequence(const FrameSequence& seq,
                                const AnalysisConfig& cfg);

}  // namespace guiperf

#endif  // GUIPERF_PIPELINE_HPP_
