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

#ifndef GUIPERF_EVALUATION_HPP_
#define GUIPERF_EVALUATION_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guiperf/keyframes.hpp"
#include "guiperf/report.hpp"
#include "guiperf/synthgen.hpp"

namespace guiperf {

// Binary-class quality. With no positives on either side precision (or
// recall) is 1 when the other side has none either and 0 otherwise; F1 is 0
// when both are 0.
struct ClassMetrics {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;

  static ClassMetrics From(std::size_t tp, std::size_t fp, std::size_t fn);
};

struct Match {
  std::size_t predicted = 0;
  std::size_t truth = 0;
};

// Greedy one-to-one pairing in order: a prediction matches the first
// unmatched truth with the same start frame and gesture.
std::vector<Match> match_interactions(
    std::span<const InteractionRecord> predicted,
    std::span<const GroundTruthRecord> truth);

ClassMetrics evaluate_detection(std::span<const InteractionRecord> predicted,
                                std::span<const GroundTruthRecord> truth);

// Fraction of matched interactions whose gesture agrees. Matching already
// requires equal gestures, so this compares start-frame matches instead.
double gesture_accuracy(std::span<const InteractionRecord> predicted,
                        std::span<const GroundTruthRecord> truth);

struct TimingMetrics {
  // Matches scored; matches without a measurement count in the last bucket
  // and are left out of the mean errors.
  std::size_t matches = 0;
  std::size_t measured = 0;
  double mae_frames = 0.0;
  double mae_ms = 0.0;
  // Cumulative fractions at |error| <= limit, plus the tail fraction.
  std::vector<int> bucket_limits;
  std::vector<double> within;
  double beyond = 0.0;
};

inline constexpr std::array<int, 4> kResponseBuckets{0, 1, 2, 3};
inline constexpr std::array<int, 4> kFinishBuckets{0, 1, 3, 6};

struct FrameErrors {
  std::vector<long> response;  // -1 marks an unmeasured match
  std::vector<long> finish;
};

FrameErrors timing_errors(std::span<const InteractionRecord> predicted,
                          std::span<const GroundTruthRecord> truth);

TimingMetrics summarize_timing(std::span<const long> errors,
                               std::span<const int> limits, double fps);

struct AlertCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  AlertCounts& operator+=(const AlertCounts& o);
};

struct AlertOutcome {
  AlertCounts response;
  AlertCounts finish;
};

// End to end: unmatched predictions can only add false positives and
// unmatched truths only false negatives. Predicted classes come from the
// reported durations, truth classes from the frame numbers at `fps`.
AlertOutcome alert_outcome(std::span<const InteractionRecord> predicted,
                           std::span<const GroundTruthRecord> truth,
                           const AlertThresholds& thresholds, double fps);

struct AlertingMetrics {
  ClassMetrics response;
  ClassMetrics finish;
};

AlertingMetrics evaluate_alerting(std::span<const InteractionRecord> predicted,
                                  std::span<const GroundTruthRecord> truth,
                                  const AlertThresholds& thresholds, double fps);

struct ScenarioEvaluation {
  std::string source_id;
  double fps = 0.0;
  std::size_t truth_count = 0;
  std::size_t predicted_count = 0;
  ClassMetrics detection;
  double gesture_accuracy = 1.0;
  TimingMetrics response;
  TimingMetrics finish;
  AlertingMetrics alerting;
};

struct EvalSummary {
  ClassMetrics detection;
  double gesture_accuracy = 1.0;
  TimingMetrics response;
  TimingMetrics finish;
  AlertingMetrics alerting;
  std::vector<ScenarioEvaluation> scenarios;
};

struct EvalInput {
  const ReportDocument* report = nullptr;
  const std::vector<GroundTruthRecord>* truth = nullptr;
};

// Pools counts and errors over all scenarios (micro-averaged).
EvalSummary evaluate_corpus(std::span<const EvalInput> inputs,
                            const AlertThresholds& thresholds);

nlohmann::json to_json(const EvalSummary& s);

}  // namespace guiperf

#endif  // GUIPERF_EVALUATION_HPP_
