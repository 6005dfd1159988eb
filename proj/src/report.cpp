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

#include "guiperf/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "guiperf/error.hpp"

namespace guiperf {

using nlohmann::json;

namespace {

std::optional<double> median_of(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string format_real(double v) {
  std::string s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

void write_canonical(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        write_canonical(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_canonical(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

std::string text_table(const ReportDocument& doc) {
  std::string out = fmt::format(
      "source: {}  fps: {:.2f}  interactions: {}  slow response: {}  slow "
      "finish: {}\n",
      doc.source_id, doc.nominal_fps, doc.summary.interaction_count,
      doc.summary.slow_response_count, doc.summary.slow_finish_count);
  out += fmt::format("{:>4} {:<7} {:>7} {:>7} {:<17} {:>7} {:>10} {:>7} {:>10}  {}\n",
                     "id", "gesture", "start", "end", "status", "resp_f",
                     "resp_ms", "fin_f", "fin_ms", "flags");
  auto frame_cell = [](const std::optional<std::size_t>& v) {
    return v ? fmt::format("{}", *v) : std::string("-");
  };
  auto ms_cell = [](const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("-");
  };
  for (const InteractionRecord& r : doc.interactions) {
    std::string flags;
    if (r.severity.slow_response) flags += "SlowResponse";
    if (r.severity.slow_finish) flags += flags.empty() ? "SlowFinish" : " SlowFinish";
    out += fmt::format(
        "{:>4} {:<7} {:>7} {:>7} {:<17} {:>7} {:>10} {:>7} {:>10}  {}\n", r.id,
        to_string(r.gesture), r.start_frame, r.end_frame, to_string(r.status),
        frame_cell(r.response_frame), ms_cell(r.response_ms),
        frame_cell(r.finish_frame), ms_cell(r.finish_ms), flags);
  }
  if (doc.summary.median_response_ms) {
    out += fmt::format("median response: {} ms  median finish: {} ms\n",
                       format_real(*doc.summary.median_response_ms),
                       format_real(*doc.summary.median_finish_ms));
  }
  return out;
}

}  // namespace

bool exceeds_threshold(double ms, double threshold_ms) {
  return ms > threshold_ms + kTimestampTolerance;
}

Severity classify_severity(const ResponsivenessMeasurement& m,
                           const AlertThresholds& t) {
  Severity s;
  if (m.status != KeyframeStatus::kResponsive) return s;
  s.slow_response =
      m.response_ms && exceeds_threshold(*m.response_ms, t.response_ms);
  s.slow_finish = m.finish_ms && exceeds_threshold(*m.finish_ms, t.finish_ms);
  return s;
}

InteractionRecord make_record(const FrameSequence& seq,
                              const Interaction& interaction,
                              const KeyframeResult& kf,
                              const ResponsivenessMeasurement& m) {
  InteractionRecord r;
  r.id = interaction.id;
  r.gesture = interaction.gesture;
  r.start_frame = interaction.start_frame;
  r.start_pts_ms = seq[interaction.start_frame].pts_ms;
  r.end_frame = interaction.end_frame;
  r.status = kf.status;
  r.response_frame = kf.response_frame;
  r.finish_frame = kf.finish_frame;
  r.response_ms = m.response_ms;
  r.finish_ms = m.finish_ms;
  r.severity = m.severity;
  return r;
}

ReportSummary summarize(std::span<const InteractionRecord> records) {
  ReportSummary s;
  s.interaction_count = records.size();
  std::vector<double> response;
  std::vector<double> finish;
  for (const InteractionRecord& r : records) {
    s.slow_response_count += r.severity.slow_response ? 1 : 0;
    s.slow_finish_count += r.severity.slow_finish ? 1 : 0;
    if (r.status == KeyframeStatus::kResponsive) {
      if (r.response_ms) response.push_back(*r.response_ms);
      if (r.finish_ms) finish.push_back(*r.finish_ms);
    }
  }
  s.median_response_ms = median_of(std::move(response));
  s.median_finish_ms = median_of(std::move(finish));
  return s;
}

ReportDocument build_report(std::string source_id, double nominal_fps,
                            std::vector<InteractionRecord> records) {
  ReportDocument doc;
  doc.source_id = std::move(source_id);
  doc.nominal_fps = nominal_fps;
  doc.interactions = std::move(records);
  doc.summary = summarize(doc.interactions);
  return doc;
}

json to_json(const ReportDocument& doc) {
  json interactions = json::array();
  for (const InteractionRecord& r : doc.interactions) {
    json rec = {{"id", r.id},
                {"gesture", to_string(r.gesture)},
                {"start_frame", r.start_frame},
                {"start_pts_ms", r.start_pts_ms},
                {"end_frame", r.end_frame},
                {"status", to_string(r.status)},
                {"severity",
                 {{"slow_response", r.severity.slow_response},
                  {"slow_finish", r.severity.slow_finish}}}};
    if (r.response_frame) rec["response_frame"] = *r.response_frame;
    if (r.response_ms) rec["response_ms"] = *r.response_ms;
    if (r.finish_frame) rec["finish_frame"] = *r.finish_frame;
    if (r.finish_ms) rec["finish_ms"] = *r.finish_ms;
    interactions.push_back(std::move(rec));
  }
  json summary = {{"interaction_count", doc.summary.interaction_count},
                  {"slow_response_count", doc.summary.slow_response_count},
                  {"slow_finish_count", doc.summary.slow_finish_count}};
  if (doc.summary.median_response_ms) {
    summary["median_response_ms"] = *doc.summary.median_response_ms;
  }
  if (doc.summary.median_finish_ms) {
    summary["median_finish_ms"] = *doc.summary.median_finish_ms;
  }
  return {{"source_id", doc.source_id},
          {"nominal_fps", doc.nominal_fps},
          {"interactions", std::move(interactions)},
          {"summary", std::move(summary)}};
}

ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument doc;
    doc.source_id = j.at("source_id").get<std::string>();
    doc.nominal_fps = j.at("nominal_fps").get<double>();
    for (const json& rec : j.at("interactions")) {
      InteractionRecord r;
      r.id = rec.at("id").get<std::size_t>();
      r.gesture = parse_gesture(rec.at("gesture").get<std::string>());
      r.start_frame = rec.at("start_frame").get<std::size_t>();
      r.start_pts_ms = rec.at("start_pts_ms").get<double>();
      r.end_frame = rec.at("end_frame").get<std::size_t>();
      r.status = parse_keyframe_status(rec.at("status").get<std::string>());
      r.response_frame = optional_field<std::size_t>(rec, "response_frame");
      r.response_ms = optional_field<double>(rec, "response_ms");
      r.finish_frame = optional_field<std::size_t>(rec, "finish_frame");
      r.finish_ms = optional_field<double>(rec, "finish_ms");
      const json& sev = rec.at("severity");
      r.severity.slow_response = sev.at("slow_response").get<bool>();
      r.severity.slow_finish = sev.at("slow_finish").get<bool>();
      doc.interactions.push_back(std::move(r));
    }
    const json& s = j.at("summary");
    doc.summary.interaction_count = s.at("interaction_count").get<std::size_t>();
    doc.summary.slow_response_count =
        s.at("slow_response_count").get<std::size_t>();
    doc.summary.slow_finish_count = s.at("slow_finish_count").get<std::size_t>();
    doc.summary.median_response_ms =
        optional_field<double>(s, "median_response_ms");
    doc.summary.median_finish_ms = optional_field<double>(s, "median_finish_ms");
    return doc;
  } catch (const json::exception& e) {
    throw Error(fmt::format("malformed report: {}", e.what()));
  }
}

ReportDocument parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(fmt::format("malformed report: {}", e.what()));
  }
  return report_from_json(j);
}

ReportDocument read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot read report {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str());
}

std::string canonical_json(const json& j) {
  std::string out;
  write_canonical(j, out, 0);
  out += '\n';
  return out;
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  return format == ReportFormat::kJson ? canonical_json(to_json(doc))
                                       : text_table(doc);
}

void emit_report(const ReportDocument& doc, ReportFormat format,
                 std::ostream& out) {
  out << emit_report(doc, format);
  out.flush();
  if (!out) throw Error("report sink is not writable");
}

void write_report(const ReportDocument& doc, const std::filesystem::path& path,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write report {}", path.string()));
  emit_report(doc, format, out);
}

}  // namespace guiperf
