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

#include <gtest/gtest.h>

#include "guiperf/evaluation.hpp"

namespace guiperf {
namespace {

GroundTruthRecord truth(std::size_t start, std::size_t resp, std::size_t fin,
                        Gesture g = Gesture::kTap) {
  return GroundTruthRecord{start, resp, fin, fin + 30, g};
}

InteractionRecord predicted(std::size_t start, std::optional<std::size_t> resp,
                            std::optional<std::size_t> fin,
                            Gesture g = Gesture::kTap, double fps = 60.0) {
  InteractionRecord r;
  r.start_frame = start;
  r.gesture = g;
  if (resp) {
    r.status = KeyframeStatus::kResponsive;
    r.response_frame = resp;
    r.finish_frame = fin;
    r.response_ms = (*resp - start) * 1000.0 / fps;
    r.finish_ms = (*fin - start) * 1000.0 / fps;
  } else {
    r.status = KeyframeStatus::kNoVisibleFeedback;
  }
  return r;
}

std::vector<InteractionRecord> exact(const std::vector<GroundTruthRecord>& t) {
  std::vector<InteractionRecord> out;
  for (const auto& g : t) {
    out.push_back(predicted(g.f_start, g.f_response, g.f_finish, g.type));
  }
  return out;
}

std::vector<GroundTruthRecord> ten_truths() {
  std::vector<GroundTruthRecord> t;
  for (std::size_t k = 0; k < 10; ++k) {
    t.push_back(truth(100 * k, 100 * k + 3 + k, 100 * k + 10 + 7 * k,
                      k % 3 ? Gesture::kTap : Gesture::kSwipe));
  }
  return t;
}

TEST(ClassMetricsTest, DegenerateConventions) {
  const auto none = ClassMetrics::From(0, 0, 0);
  EXPECT_EQ(none.precision, 1.0);
  EXPECT_EQ(none.recall, 1.0);
  EXPECT_EQ(none.f1, 1.0);
  const auto missed = ClassMetrics::From(0, 0, 3);
  EXPECT_EQ(missed.precision, 0.0);
  EXPECT_EQ(missed.recall, 0.0);
  EXPECT_EQ(missed.f1, 0.0);
  const auto spurious = ClassMetrics::From(0, 2, 0);
  EXPECT_EQ(spurious.precision, 0.0);
  EXPECT_EQ(spurious.recall, 0.0);
  const auto mixed = ClassMetrics::From(6, 2, 4);
  EXPECT_DOUBLE_EQ(mixed.precision, 0.75);
  EXPECT_DOUBLE_EQ(mixed.recall, 0.6);
  EXPECT_DOUBLE_EQ(mixed.f1, 2 * 0.75 * 0.6 / 1.35);
}

TEST(Detection, ExactPredictionsArePerfect) {
  const auto t = ten_truths();
  const auto m = evaluate_detection(exact(t), t);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(gesture_accuracy(exact(t), t), 1.0);
}

TEST(Detection, NineOfTen) {
  const auto t = ten_truths();
  auto p = exact(t);
  p.erase(p.begin() + 4);
  const auto m = evaluate_detection(p, t);
  EXPECT_DOUBLE_EQ(m.precision, 1.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.9);
}

TEST(Detection, StartAndGestureMustBothMatch) {
  const std::vector<GroundTruthRecord> t{truth(10, 15, 20), truth(50, 55, 60)};
  const std::vector<InteractionRecord> p{
      predicted(10, 15, 20, Gesture::kSwipe), predicted(51, 55, 60)};
  const auto m = evaluate_detection(p, t);
  EXPECT_EQ(m.true_positives, 0u);
  EXPECT_EQ(gesture_accuracy(p, t), 0.0);
  // Each truth matches at most once.
  const std::vector<InteractionRecord> dup{predicted(10, 15, 20),
                                           predicted(10, 15, 20)};
  EXPECT_EQ(evaluate_detection(dup, t).true_positives, 1u);
}

TEST(Timing, ExactIsAllZero) {
  const auto t = ten_truths();
  const auto e = timing_errors(exact(t), t);
  const auto r = summarize_timing(e.response, kResponseBuckets, 60.0);
  EXPECT_EQ(r.mae_frames, 0.0);
  EXPECT_EQ(r.within.front(), 1.0);
  EXPECT_EQ(r.beyond, 0.0);
}

TEST(Timing, OneMatchOffByTwo) {
  const auto t = ten_truths();
  auto p = exact(t);
  *p[6].response_frame += 2;
  const auto e = timing_errors(p, t);
  const auto r = summarize_timing(e.response, kResponseBuckets, 60.0);
  EXPECT_DOUBLE_EQ(r.mae_frames, 0.2);
  EXPECT_DOUBLE_EQ(r.mae_ms, 0.2 * 1000.0 / 60.0);
  EXPECT_DOUBLE_EQ(r.within[0], 0.9);  // = 0
  EXPECT_DOUBLE_EQ(r.within[1], 0.9);  // <= 1
  EXPECT_DOUBLE_EQ(r.within[2], 1.0);  // <= 2
  EXPECT_DOUBLE_EQ(r.within[3], 1.0);  // <= 3
}

TEST(Timing, UnmeasuredMatchLandsInTail) {
  const auto t = ten_truths();
  auto p = exact(t);
  p[2] = predicted(t[2].f_start, std::nullopt, std::nullopt, t[2].type);
  const auto e = timing_errors(p, t);
  const auto f = summarize_timing(e.finish, kFinishBuckets, 60.0);
  EXPECT_EQ(f.matches, 10u);
  EXPECT_EQ(f.measured, 9u);
  EXPECT_EQ(f.mae_frames, 0.0);
  EXPECT_DOUBLE_EQ(f.within.back(), 0.9);
  EXPECT_DOUBLE_EQ(f.beyond, 0.1);
}

TEST(Timing, BucketsAreCumulative) {
  const std::vector<long> errors{0, 1, 2, 3, 4, 5, 6, 7, 9, -1, 0};
  const auto m = summarize_timing(errors, kFinishBuckets, 30.0);
  for (std::size_t b = 1; b < m.within.size(); ++b) {
    EXPECT_LE(m.within[b - 1], m.within[b]);
  }
  EXPECT_LE(m.within.back(), 1.0);
  EXPECT_NEAR(m.within.back() + m.beyond, 1.0, 1e-12);
}

TEST(Alerting, VacuousWhenEverythingIsFast) {
  const auto t = ten_truths();
  const auto a = evaluate_alerting(exact(t), t, AlertThresholds{1e6, 1e6}, 60.0);
  EXPECT_EQ(a.response.precision, 1.0);
  EXPECT_EQ(a.response.recall, 1.0);
  EXPECT_EQ(a.finish.f1, 1.0);
}

TEST(Alerting, SlowTruthPredictedFastIsFalseNegative) {
  // 120 ms true response predicted as 95 ms.
  const std::vector<GroundTruthRecord> t{truth(0, 12, 20)};
  InteractionRecord p = predicted(0, 10, 20, Gesture::kTap, 100.0);
  p.response_ms = 95.0;
  const auto o = alert_outcome(std::vector{p}, t, AlertThresholds{}, 100.0);
  EXPECT_EQ(o.response.fn, 1u);
  EXPECT_EQ(o.response.tp + o.response.fp, 0u);
}

TEST(Alerting, UnmatchedRecordsCountEndToEnd) {
  const std::vector<GroundTruthRecord> t{truth(0, 30, 90), truth(200, 202, 210)};
  // The first truth is missed; a spurious slow prediction appears.
  const std::vector<InteractionRecord> p{predicted(150, 170, 300),
                                         predicted(200, 202, 210)};
  const auto o = alert_outcome(p, t, AlertThresholds{}, 60.0);
  EXPECT_EQ(o.response.fn, 1u);
  EXPECT_EQ(o.response.fp, 1u);
  EXPECT_EQ(o.response.tn, 1u);
  EXPECT_EQ(o.finish.fp, 1u);
  EXPECT_EQ(o.finish.fn, 1u);
}

TEST(Alerting, ExactlyAtThresholdIsNotSlow) {
  const std::vector<GroundTruthRecord> t{truth(100, 106, 160)};
  const auto o = alert_outcome(exact(t), t, AlertThresholds{}, 60.0);
  EXPECT_EQ(o.response.tn, 1u);
  EXPECT_EQ(o.finish.tn, 1u);
}

TEST(Corpus, PoolsScenarios) {
  const auto t = ten_truths();
  ReportDocument a = build_report("a", 60.0, exact(t));
  auto partial = exact(t);
  partial.resize(5);
  ReportDocument b = build_report("b", 60.0, partial);
  const std::vector<EvalInput> in{{&a, &t}, {&b, &t}};
  const EvalSummary s = evaluate_corpus(in, AlertThresholds{});
  EXPECT_DOUBLE_EQ(s.detection.recall, 15.0 / 20.0);
  EXPECT_DOUBLE_EQ(s.detection.precision, 1.0);
  ASSERT_EQ(s.scenarios.size(), 2u);
  EXPECT_DOUBLE_EQ(s.scenarios[1].detection.recall, 0.5);
  const auto j = to_json(s);
  EXPECT_DOUBLE_EQ(j.at("detection").at("recall").get<double>(), 0.75);
  EXPECT_TRUE(j.at("response").at("buckets").contains("le3"));
  EXPECT_TRUE(j.at("finish").at("buckets").contains("gt6"));
}

}  // namespace
}  // namespace guiperf
