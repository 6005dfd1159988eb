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

#ifndef GUIPERF_KEYFRAMES_HPP_
#define GUIPERF_KEYFRAMES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "guiperf/frame.hpp"
#include "guiperf/segmenter.hpp"
#include "guiperf/similarity.hpp"

namespace guiperf {

struct ForestConfig {
  int tree_count = 100;
  int subsample_size = 64;
  double score_threshold = 0.6;
  std::uint64_t seed = 42;
  // Response is the first anomaly reaching this fraction of the largest
  // anomalous dissimilarity; 0 selects the first anomaly outright.
  double substantial_change_fraction = 0.3;
  // Shorter series skip the forest and threshold dissimilarity directly.
  int min_series_length = 8;
  double fallback_dissimilarity = 0.02;

  void validate() const;
};

enum class KeyframeStatus { kResponsive, kNoVisibleFeedback, kTooShort };

std::string_view to_string(KeyframeStatus s);
KeyframeStatus parse_keyframe_status(std::string_view s);

struct KeyframeResult {
  KeyframeStatus status = KeyframeStatus::kTooShort;
  std::optional<std::size_t> response_frame;
  std::optional<std::size_t> finish_frame;
  std::vector<std::size_t> anomaly_indices;
};

struct AlertThresholds {
  double response_ms = 100.0;
  double finish_ms = 1000.0;
};

struct Severity {
  bool slow_response = false;
  bool slow_finish = false;
  bool operator==(const Severity&) const = default;
};

struct ResponsivenessMeasurement {
  std::size_t interaction_id = 0;
  Gesture gesture = Gesture::kTap;
  KeyframeStatus status = KeyframeStatus::kTooShort;
  std::optional<double> response_ms;
  std::optional<double> finish_ms;
  Severity severity;
};

// Anomaly scores of one-dimensional points (dissimilarities), in (0, 1).
std::vector<double> isolation_forest_scores(std::span<const double> points,
                                            const ForestConfig& cfg);

// Indices j of the series whose dissimilarity 1 - values[j] is anomalous,
// ascending. Long series need a forest score at or above the threshold and
// a dissimilarity strictly above the series median; short ones only need
// the fallback dissimilarity.
std::vector<std::size_t> detect_anomalies(const SimilaritySeries& series,
                                          const ForestConfig& cfg);

// Maps anomaly j to frame start + j + 1, the first frame showing the change.
KeyframeResult locate_keyframes(const Interaction& interaction,
                                const SimilaritySeries& series,
                                std::span<const std::size_t> anomalies,
                                const ForestConfig& cfg);

ResponsivenessMeasurement compute_responsiveness(
    const FrameSequence& seq, const Interaction& interaction,
    const KeyframeResult& kf, const AlertThresholds& thresholds);

}  // namespace guiperf

#endif  // GUIPERF_KEYFRAMES_HPP_
