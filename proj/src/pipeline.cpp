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

#include "guiperf/pipeline.hpp"

#include <utility>

namespace guiperf {

AnalysisResult analyze_sequence(const FrameSequence& seq,
                                const AnalysisConfig& cfg) {
  AnalysisResult r;
  r.detections = detect_taps(seq, cfg.detector);
  const auto tap_sequences = group_detections(r.detections, cfg.gap_tolerance);
  r.interactions =
      segment_interactions(tap_sequences, seq.size(), cfg.tap_radius_px);

  std::vector<InteractionRecord> records;
  records.reserve(r.interactions.size());
  for (const Interaction& interaction : r.interactions) {
    SimilaritySeries series = similarity_series(seq, interaction, cfg.ssim);
    const auto anomalies = detect_anomalies(series, cfg.forest);
    KeyframeResult kf =
        locate_keyframes(interaction, series, anomalies, cfg.forest);
    ResponsivenessMeasurement m =
        compute_responsiveness(seq, interaction, kf, cfg.thresholds);
    records.push_back(make_record(seq, interaction, kf, m));
    r.series.push_back(std::move(series));
    r.keyframes.push_back(std::move(kf));
    r.measurements.push_back(m);
  }
  r.report =
      build_report(seq.source_id(), seq.nominal_fps(), std::move(records));
  return r;
}

}  // namespace guiperf
