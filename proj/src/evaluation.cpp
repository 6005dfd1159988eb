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

#include "guiperf/evaluation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace guiperf {

ClassMetrics ClassMetrics::From(std::size_t tp, std::size_t fp,
                                std::size_t fn) {
  ClassMetrics m;
  m.true_positives = tp;
  m.false_positives = fp;
  m.false_negatives = fn;
  m.precision = tp + fp == 0 ? (fn == 0 ? 1.0 : 0.0)
                             : static_cast<double>(tp) / (tp + fp);
  m.recall = tp + fn == 0 ? (fp == 0 ? 1.0 : 0.0)
                          : static_cast<double>(tp) / (tp + fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

namespace {

template <typename Pred>
std::vector<Match> greedy_match(std::span<const InteractionRecord> predicted,
                                std::span<const GroundTruthRecord> truth,
                                Pred same) {
  std::vector<Match> out;
  std::vector<bool> used(truth.size(), false);
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    for (std::size_t t = 0; t < truth.size(); ++t) {
      if (!used[t] && same(predicted[p], truth[t])) {
        used[t] = true;
        out.push_back(Match{p, t});
        break;
      }
    }
  }
  return out;
}

double frames_to_ms(std::size_t frames, double fps) {
  return static_cast<double>(frames) * 1000.0 / fps;
}

void accumulate(std::vector<long>& into, const std::vector<long>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

std::vector<Match> match_interactions(
    std::span<const InteractionRecord> predicted,
    std::span<const GroundTruthRecord> truth) {
  return greedy_match(predicted, truth,
                      [](const InteractionRecord& p, const GroundTruthRecord& t) {
                        return p.start_frame == t.f_start && p.gesture == t.type;
                      });
}

ClassMetrics evaluate_detection(std::span<const InteractionRecord> predicted,
                                std::span<const GroundTruthRecord> truth) {
  const std::size_t tp = match_interactions(predicted, truth).size();
  return ClassMetrics::From(tp, predicted.size() - tp, truth.size() - tp);
}

double gesture_accuracy(std::span<const InteractionRecord> predicted,
                        std::span<const GroundTruthRecord> truth) {
  auto matches = greedy_match(
      predicted, truth,
      [](const InteractionRecord& p, const GroundTruthRecord& t) {
        return p.start_frame == t.f_start;
      });
  if (matches.empty()) return 1.0;
  std::size_t agree = 0;
  for (const Match& m : matches) {
    agree += predicted[m.predicted].gesture == truth[m.truth].type;
  }
  return static_cast<double>(agree) / matches.size();
}

FrameErrors timing_errors(std::span<const InteractionRecord> predicted,
                          std::span<const GroundTruthRecord> truth) {
  FrameErrors e;
  for (const Match& m : match_interactions(predicted, truth)) {
    const InteractionRecord& p = predicted[m.predicted];
    const GroundTruthRecord& t = truth[m.truth];
    auto diff = [](std::size_t a, std::size_t b) {
      return std::labs(static_cast<long>(a) - static_cast<long>(b));
    };
    e.response.push_back(p.response_frame ? diff(*p.response_frame, t.f_response)
                                          : -1);
    e.finish.push_back(p.finish_frame ? diff(*p.finish_frame, t.f_finish) : -1);
  }
  return e;
}

TimingMetrics summarize_timing(std::span<const long> errors,
                               std::span<const int> limits, double fps) {
  TimingMetrics m;
  m.bucket_limits.assign(limits.begin(), limits.end());
  m.within.assign(limits.size(), 0.0);
  m.matches = errors.size();
  double sum = 0.0;
  for (long e : errors) {
    if (e < 0) continue;
    ++m.measured;
    sum += static_cast<double>(e);
    for (std::size_t b = 0; b < limits.size(); ++b) {
      if (e <= limits[b]) m.within[b] += 1.0;
    }
  }
  if (m.measured > 0) {
    m.mae_frames = sum / static_cast<double>(m.measured);
    m.mae_ms = m.mae_frames * 1000.0 / fps;
  }
  if (m.matches > 0) {
    for (double& w : m.within) w /= static_cast<double>(m.matches);
    m.beyond = 1.0 - (m.within.empty() ? 0.0 : m.within.back());
  }
  return m;
}

AlertCounts& AlertCounts::operator+=(const AlertCounts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

AlertOutcome alert_outcome(std::span<const InteractionRecord> predicted,
                           std::span<const GroundTruthRecord> truth,
                           const AlertThresholds& thresholds, double fps) {
  AlertOutcome out;
  auto tally = [](AlertCounts& c, bool pred, bool actual) {
    if (pred && actual) ++c.tp;
    else if (pred) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  };
  auto slow = [](const std::optional<double>& ms, double threshold) {
    return ms.has_value() && exceeds_threshold(*ms, threshold);
  };
  auto truth_slow_response = [&](const GroundTruthRecord& t) {
    return exceeds_threshold(frames_to_ms(t.f_response - t.f_start, fps),
                             thresholds.response_ms);
  };
  auto truth_slow_finish = [&](const GroundTruthRecord& t) {
    return exceeds_threshold(frames_to_ms(t.f_finish - t.f_start, fps),
                             thresholds.finish_ms);
  };
  const auto matches = match_interactions(predicted, truth);
  std::vector<bool> pred_matched(predicted.size(), false);
  std::vector<bool> truth_matched(truth.size(), false);
  for (const Match& m : matches) {
    pred_matched[m.predicted] = true;
    truth_matched[m.truth] = true;
    const InteractionRecord& p = predicted[m.predicted];
    const GroundTruthRecord& t = truth[m.truth];
    tally(out.response, slow(p.response_ms, thresholds.response_ms),
          truth_slow_response(t));
    tally(out.finish, slow(p.finish_ms, thresholds.finish_ms),
          truth_slow_finish(t));
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (pred_matched[i]) continue;
    tally(out.response, slow(predicted[i].response_ms, thresholds.response_ms),
          false);
    tally(out.finish, slow(predicted[i].finish_ms, thresholds.finish_ms), false);
  }
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth_matched[i]) continue;
    tally(out.response, false, truth_slow_response(truth[i]));
    tally(out.finish, false, truth_slow_finish(truth[i]));
  }
  return out;
}

namespace {

AlertingMetrics to_metrics(const AlertOutcome& o) {
  return AlertingMetrics{
      ClassMetrics::From(o.response.tp, o.response.fp, o.response.fn),
      ClassMetrics::From(o.finish.tp, o.finish.fp, o.finish.fn)};
}

}  // namespace

AlertingMetrics evaluate_alerting(std::span<const InteractionRecord> predicted,
                                  std::span<const GroundTruthRecord> truth,
                                  const AlertThresholds& thresholds,
                                  double fps) {
  return to_metrics(alert_outcome(predicted, truth, thresholds, fps));
}

EvalSummary evaluate_corpus(std::span<const EvalInput> inputs,
                            const AlertThresholds& thresholds) {
  EvalSummary s;
  std::size_t tp = 0, predicted = 0, actual = 0;
  std::size_t gesture_matches = 0, gesture_agree = 0;
  FrameErrors pooled;
  AlertOutcome alerts;
  double fps = 0.0;
  for (const EvalInput& in : inputs) {
    const auto& records = in.report->interactions;
    const auto& truth = *in.truth;
    const double f = in.report->nominal_fps;
    fps = f;
    ScenarioEvaluation e;
    e.source_id = in.report->source_id;
    e.fps = f;
    e.truth_count = truth.size();
    e.predicted_count = records.size();
    e.detection = evaluate_detection(records, truth);
    e.gesture_accuracy = gesture_accuracy(records, truth);
    const FrameErrors errors = timing_errors(records, truth);
    e.response = summarize_timing(errors.response, kResponseBuckets, f);
    e.finish = summarize_timing(errors.finish, kFinishBuckets, f);
    const AlertOutcome outcome = alert_outcome(records, truth, thresholds, f);
    e.alerting = to_metrics(outcome);

    tp += e.detection.true_positives;
    predicted += records.size();
    actual += truth.size();
    auto by_start = greedy_match(
        records, truth, [](const InteractionRecord& p, const GroundTruthRecord& t) {
          return p.start_frame == t.f_start;
        });
    gesture_matches += by_start.size();
    for (const Match& m : by_start) {
      gesture_agree += records[m.predicted].gesture == truth[m.truth].type;
    }
    accumulate(pooled.response, errors.response);
    accumulate(pooled.finish, errors.finish);
    alerts.response += outcome.response;
    alerts.finish += outcome.finish;
    s.scenarios.push_back(std::move(e));
  }
  s.detection = ClassMetrics::From(tp, predicted - tp, actual - tp);
  s.gesture_accuracy = gesture_matches == 0
                           ? 1.0
                           : static_cast<double>(gesture_agree) / gesture_matches;
  // Frame errors are pooled; millisecond means assume one frame rate.
  if (fps <= 0.0) fps = 60.0;
  s.response = summarize_timing(pooled.response, kResponseBuckets, fps);
  s.finish = summarize_timing(pooled.finish, kFinishBuckets, fps);
  s.alerting = to_metrics(alerts);
  return s;
}

namespace {

nlohmann::json class_json(const ClassMetrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"true_positives", m.true_positives},
          {"false_positives", m.false_positives},
          {"false_negatives", m.false_negatives}};
}

nlohmann::json timing_json(const TimingMetrics& m) {
  nlohmann::json buckets = nlohmann::json::object();
  for (std::size_t i = 0; i < m.bucket_limits.size(); ++i) {
    const int lim = m.bucket_limits[i];
    buckets[lim == 0 ? std::string("eq0") : "le" + std::to_string(lim)] =
        m.within[i];
  }
  if (!m.bucket_limits.empty()) {
    buckets["gt" + std::to_string(m.bucket_limits.back())] = m.beyond;
  }
  return {{"matches", m.matches},
          {"measured", m.measured},
          {"mae_frames", m.mae_frames},
          {"mae_ms", m.mae_ms},
          {"buckets", std::move(buckets)}};
}

nlohmann::json alerting_json(const AlertingMetrics& a) {
  return {{"response", class_json(a.response)}, {"finish", class_json(a.finish)}};
}

}  // namespace

nlohmann::json to_json(const EvalSummary& s) {
  nlohmann::json scenarios = nlohmann::json::array();
  for (const ScenarioEvaluation& e : s.scenarios) {
    scenarios.push_back({{"source_id", e.source_id},
                         {"truth_count", e.truth_count},
                         {"predicted_count", e.predicted_count},
                         {"detection", class_json(e.detection)},
                         {"gesture_accuracy", e.gesture_accuracy},
                         {"response", timing_json(e.response)},
                         {"finish", timing_json(e.finish)},
                         {"alerting", alerting_json(e.alerting)}});
  }
  return {{"detection", class_json(s.detection)},
          {"gesture_accuracy", s.gesture_accuracy},
          {"response", timing_json(s.response)},
          {"finish", timing_json(s.finish)},
          {"alerting", alerting_json(s.alerting)},
          {"scenarios", std::move(scenarios)}};
}

}  // namespace guiperf
