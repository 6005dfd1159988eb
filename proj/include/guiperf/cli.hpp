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

#ifndef GUIPERF_CLI_HPP_
#define GUIPERF_CLI_HPP_

#include <filesystem>
#include <optional>
#include <vector>

#include "guiperf/keyframes.hpp"
#include "guiperf/pipeline.hpp"

namespace guiperf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitInvalid = 2;

struct AnalyzeOptions {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir;
  std::optional<double> fps_hint;
  // A JSONL file (single input) or a directory of <source_id>.jsonl files.
  std::optional<std::filesystem::path> detections;
  AnalysisConfig analysis;
  int workers = 1;
};

// One JSON report per input video, written as <out>/<source_id>.json.
int cmd_analyze(const AnalyzeOptions& opts);

enum class SynthFormat { kManifest, kY4m };

struct SynthOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  SynthFormat format = SynthFormat::kManifest;
};

// Writes <out>/videos/<name>/manifest.jsonl (or <out>/videos/<name>.y4m)
// and <out>/truth/<name>.jsonl per scenario.
int cmd_synth(const SynthOptions& opts);

struct EvalOptions {
  std::filesystem::path reports_dir;
  std::filesystem::path truth_dir;
  AlertThresholds thresholds;
  // Defaults to <reports>/eval_summary.json.
  std::optional<std::filesystem::path> out;
};

inline constexpr const char* kEvalSummaryName = "eval_summary.json";

int cmd_eval(const EvalOptions& opts);

// Parses the command line and dispatches. Returns the process exit code.
int run(int argc, char** argv);

}  // namespace guiperf::cli

#endif  // GUIPERF_CLI_HPP_
