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

#ifndef GUIPERF_REPORT_HPP_
#define GUIPERF_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "guiperf/keyframes.hpp"

namespace guiperf {

// Timestamps such as i * 1000 / 60 carry rounding error, so durations are
// compared at nanosecond resolution.
inline constexpr double kTimestampTolerance = 1e-6;

// Strictly above the threshold, beyond timestamp rounding.
bool exceeds_threshold(double ms, double threshold_ms);

// Strictly above the threshold is slow. Interactions without visible
// feedback carry no flag.
Severity classify_severity(const ResponsivenessMeasurement& m,
                           const AlertThresholds& t);

struct InteractionRecord {
  std::size_t id = 0;
  Gesture gesture = Gesture::kTap;
  std::size_t start_frame = 0;
  double start_pts_ms = 0.0;
  std::size_t end_frame = 0;
  KeyframeStatus status = KeyframeStatus::kTooShort;
  std::optional<std::size_t> response_frame;
  std::optional<double> response_ms;
  std::optional<std::size_t> finish_frame;
  std::optional<double> finish_ms;
  Severity severity;
};

struct ReportSummary {
  std::size_t interaction_count = 0;
  std::size_t slow_response_count = 0;
  std::size_t slow_finish_count = 0;
  // Over Responsive interactions only; absent when there are none.
  std::optional<double> median_response_ms;
  std::optional<double> median_finish_ms;
};

struct ReportDocument {
  std::string source_id;
  double nominal_fps = 0.0;
  std::vector<InteractionRecord> interactions;
  ReportSummary summary;
};

InteractionRecord make_record(const FrameSequence& seq,
                              const Interaction& interaction,
                              const KeyframeResult& kf,
                              const ResponsivenessMeasurement& m);

ReportSummary summarize(std::span<const InteractionRecord> records);

ReportDocument build_report(std::string source_id, double nominal_fps,
                            std::vector<InteractionRecord> records);

enum class ReportFormat { kJson, kText };

// JSON output is canonical: sorted keys, two-space indent, every real
// printed with two decimals. Equal documents give identical bytes.
std::string emit_report(const ReportDocument& doc, ReportFormat format);
void emit_report(const ReportDocument& doc, ReportFormat format,
                 std::ostream& out);
void write_report(const ReportDocument& doc, const std::filesystem::path& path,
                  ReportFormat format = ReportFormat::kJson);

nlohmann::json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::json& j);
ReportDocument parse_report(std::string_view text);
ReportDocument read_report(const std::filesystem::path& path);

// Canonical serialisation shared by every JSON document the tools write.
std::string canonical_json(const nlohmann::json& j);

}  // namespace guiperf

#endif  // GUIPERF_REPORT_HPP_
