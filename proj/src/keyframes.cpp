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

#include "guiperf/keyframes.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "guiperf/error.hpp"
#include "guiperf/isolation_forest.hpp"
#include "guiperf/report.hpp"

namespace guiperf {

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> dissimilarities(const SimilaritySeries& series) {
  std::vector<double> x(series.values.size());
  std::transform(series.values.begin(), series.values.end(), x.begin(),
                 [](double s) { return 1.0 - s; });
  return x;
}

}  // namespace

void ForestConfig::validate() const {
  if (tree_count < 1 || subsample_size < 1 || min_series_length < 1) {
    throw Error("forest: counts must be positive");
  }
  if (!(score_threshold > 0.0 && score_threshold < 1.0)) {
    throw Error("forest: score threshold must lie in (0, 1)");
  }
  if (!(substantial_change_fraction >= 0.0 &&
        substantial_change_fraction <= 1.0)) {
    throw Error("forest: substantial change fraction must lie in [0, 1]");
  }
  if (!(fallback_dissimilarity > 0.0 && fallback_dissimilarity < 1.0)) {
    throw Error("forest: fallback dissimilarity must lie in (0, 1)");
  }
}

std::string_view to_string(KeyframeStatus s) {
  switch (s) {
    case KeyframeStatus::kResponsive:
      return "Responsive";
    case KeyframeStatus::kNoVisibleFeedback:
      return "NoVisibleFeedback";
    case KeyframeStatus::kTooShort:
      return "TooShort";
  }
  return "TooShort";
}

KeyframeStatus parse_keyframe_status(std::string_view s) {
  if (s == "Responsive") return KeyframeStatus::kResponsive;
  if (s == "NoVisibleFeedback") return KeyframeStatus::kNoVisibleFeedback;
  if (s == "TooShort") return KeyframeStatus::kTooShort;
  throw Error(fmt::format("unknown status \"{}\"", s));
}

std::vector<double> isolation_forest_scores(std::span<const double> points,
                                            const ForestConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw Error("isolation forest: empty input");
  const IsolationForest forest(points, cfg.tree_count, cfg.subsample_size,
                               cfg.seed);
  std::vector<double> scores(points.size());
  std::transform(points.begin(), points.end(), scores.begin(),
                 [&forest](double x) { return forest.score(x); });
  return scores;
}

std::vector<std::size_t> detect_anomalies(const SimilaritySeries& series,
                                          const ForestConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> out;
  const std::vector<double> x = dissimilarities(series);
  if (x.empty()) return out;
  if (x.size() < static_cast<std::size_t>(cfg.min_series_length)) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] >= cfg.fallback_dissimilarity) out.push_back(j);
    }
    return out;
  }
  const std::vector<double> scores = isolation_forest_scores(x, cfg);
  const double mid = median(x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (scores[j] >= cfg.score_threshold && x[j] > mid) out.push_back(j);
  }
  return out;
}

KeyframeResult locate_keyframes(const Interaction& interaction,
                                const SimilaritySeries& series,
                                std::span<const std::size_t> anomalies,
                                const ForestConfig& cfg) {
  KeyframeResult kf;
  kf.anomaly_indices.assign(anomalies.begin(), anomalies.end());
  if (series.too_short || series.values.empty()) {
    kf.status = KeyframeStatus::kTooShort;
    return kf;
  }
  if (anomalies.empty()) {
    kf.status = KeyframeStatus::kNoVisibleFeedback;
    return kf;
  }
  for (std::size_t j : anomalies) {
    if (j >= series.values.size()) {
      throw Error(fmt::format("anomaly index {} outside series of {}", j,
                              series.values.size()));
    }
  }
  double strongest = 0.0;
  for (std::size_t j : anomalies) {
    strongest = std::max(strongest, 1.0 - series.values[j]);
  }
  const double bar = cfg.substantial_change_fraction * strongest;
  std::size_t response = anomalies.front();
  for (std::size_t j : anomalies) {
    if (1.0 - series.values[j] >= bar) {
      response = j;
      break;
    }
  }
  kf.status = KeyframeStatus::kResponsive;
  kf.response_frame = interaction.start_frame + response + 1;
  kf.finish_frame = interaction.start_frame + anomalies.back() + 1;
  return kf;
}

ResponsivenessMeasurement compute_responsiveness(
    const FrameSequence& seq, const Interaction& interaction,
    const KeyframeResult& kf, const AlertThresholds& thresholds) {
  ResponsivenessMeasurement m;
  m.interaction_id = interaction.id;
  m.gesture = interaction.gesture;
  m.status = kf.status;
  if (kf.status == KeyframeStatus::kResponsive) {
    const double t0 = seq[interaction.start_frame].pts_ms;
    m.response_ms = seq[*kf.response_frame].pts_ms - t0;
    m.finish_ms = seq[*kf.finish_frame].pts_ms - t0;
  }
  m.severity = classify_severity(m, thresholds);
  return m;
}

}  // namespace guiperf
