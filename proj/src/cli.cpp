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

#include "guiperf/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "guiperf/error.hpp"
#include "guiperf/evaluation.hpp"
#include "guiperf/frameio.hpp"
#include "guiperf/report.hpp"
#include "guiperf/synthgen.hpp"

namespace guiperf::cli {
namespace {

namespace fs = std::filesystem;

// Bad command line or configuration; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

constexpr const char* kMp4Recipe =
    "convert it first, e.g. ffmpeg -i in.mp4 -pix_fmt yuv420p -f yuv4mpegpipe "
    "out.y4m";

enum class InputKind { kManifest, kY4m };

struct VideoInput {
  fs::path path;
  InputKind kind;
  std::string source_id;
};

bool is_container_video(const fs::path& p) {
  static const std::set<std::string> kExt{".mp4", ".mov", ".mkv", ".avi",
                                          ".webm", ".m4v"};
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return kExt.contains(ext);
}

std::optional<VideoInput> classify_file(const fs::path& p) {
  if (p.extension() == ".jsonl") {
    return VideoInput{p, InputKind::kManifest, source_id_for_path(p)};
  }
  if (p.extension() == ".y4m") {
    return VideoInput{p, InputKind::kY4m, source_id_for_path(p)};
  }
  return std::nullopt;
}

void collect_inputs(const fs::path& p, std::vector<VideoInput>& out) {
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    throw UsageError(fmt::format("input {} does not exist", p.string()));
  }
  if (fs::is_directory(p)) {
    if (fs::exists(p / "manifest.jsonl")) {
      out.push_back(*classify_file(p / "manifest.jsonl"));
      return;
    }
    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(p)) entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    const std::size_t before = out.size();
    for (const fs::path& e : entries) {
      if (fs::is_directory(e) && fs::exists(e / "manifest.jsonl")) {
        out.push_back(*classify_file(e / "manifest.jsonl"));
      } else if (fs::is_regular_file(e) && e.extension() == ".y4m") {
        out.push_back(*classify_file(e));
      } else if (fs::is_regular_file(e) && is_container_video(e)) {
        spdlog::warn("skipping {}: {}", e.string(), kMp4Recipe);
      }
    }
    if (out.size() == before) {
      spdlog::warn("no videos found in {}", p.string());
    }
    return;
  }
  if (is_container_video(p)) {
    throw UsageError(fmt::format("{} is not a frame manifest or Y4M stream; {}",
                                 p.string(), kMp4Recipe));
  }
  auto v = classify_file(p);
  if (!v) {
    throw UsageError(fmt::format(
        "{}: unsupported input, expected manifest.jsonl, .y4m or a directory",
        p.string()));
  }
  out.push_back(*v);
}

std::vector<VideoInput> resolve_inputs(const std::vector<fs::path>& paths) {
  std::vector<VideoInput> out;
  for (const fs::path& p : paths) collect_inputs(p, out);
  std::map<std::string, fs::path> seen;
  for (const VideoInput& v : out) {
    auto [it, inserted] = seen.emplace(v.source_id, v.path);
    if (!inserted) {
      throw UsageError(fmt::format("inputs {} and {} share source_id '{}'",
                                   it->second.string(), v.path.string(),
                                   v.source_id));
    }
  }
  return out;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw UsageError(
        fmt::format("cannot create output directory {}", dir.string()));
  }
}

bool analyze_one(const VideoInput& in, const AnalyzeOptions& opts) {
  try {
    FrameSequence seq = in.kind == InputKind::kManifest
                            ? load_manifest(in.path)
                            : read_y4m(in.path, opts.fps_hint);
    AnalysisConfig cfg = opts.analysis;
    if (cfg.detector.mode == DetectorMode::kExternal) {
      fs::path det = *opts.detections;
      if (fs::is_directory(det)) det /= seq.source_id() + ".jsonl";
      cfg.detector.external_path = det;
    }
    const AnalysisResult result = analyze_sequence(seq, cfg);
    const fs::path out = opts.out_dir / (seq.source_id() + ".json");
    write_report(result.report, out);
    spdlog::info("{}: {} interactions, {} slow response, {} slow finish -> {}",
                 seq.source_id(), result.report.summary.interaction_count,
                 result.report.summary.slow_response_count,
                 result.report.summary.slow_finish_count, out.string());
    return true;
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", in.path.string(), e.what());
    return false;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitPartialFailure;
  }
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts) {
  return guarded([&] {
    if (opts.workers < 1) throw UsageError("--workers must be at least 1");
    if (opts.inputs.empty()) throw UsageError("no inputs given");
    try {
      DetectorConfig detector = opts.analysis.detector;
      if (opts.detections) detector.external_path = opts.detections;
      detector.validate();
      opts.analysis.ssim.validate();
      opts.analysis.forest.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (opts.analysis.detector.mode == DetectorMode::kExternal &&
        !opts.detections) {
      throw UsageError("--detector external needs --detections");
    }
    if (opts.detections && !fs::exists(*opts.detections)) {
      throw UsageError(fmt::format("detections path {} does not exist",
                                   opts.detections->string()));
    }
    const std::vector<VideoInput> inputs = resolve_inputs(opts.inputs);
    if (opts.detections && fs::is_regular_file(*opts.detections) &&
        inputs.size() > 1) {
      throw UsageError(
          "a single detections file needs a single input; pass a directory "
          "of <source_id>.jsonl files instead");
    }
    prepare_out_dir(opts.out_dir);
    if (inputs.empty()) return kExitOk;

    std::vector<char> ok(inputs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < inputs.size(); i = next++) {
        ok[i] = analyze_one(inputs[i], opts) ? 1 : 0;
      }
    };
    const std::size_t n =
        std::min<std::size_t>(static_cast<std::size_t>(opts.workers),
                              inputs.size());
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    const auto failed = std::count(ok.begin(), ok.end(), 0);
    if (failed > 0) {
      spdlog::error("{} of {} videos failed", failed, inputs.size());
      return kExitPartialFailure;
    }
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& opts) {
  return guarded([&] {
    std::vector<Scenario> scenarios;
    try {
      scenarios = load_scenarios(opts.scenario);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    prepare_out_dir(opts.out_dir / "videos");
    prepare_out_dir(opts.out_dir / "truth");
    for (const Scenario& sc : scenarios) {
      const Screencast cast = generate_screencast(sc);
      if (opts.format == SynthFormat::kY4m) {
        const fs::path p = opts.out_dir / "videos" / (sc.name + ".y4m");
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(fmt::format("cannot write {}", p.string()));
        write_y4m(cast.frames, out, Y4mChroma::k420);
      } else {
        write_manifest(cast.frames, opts.out_dir / "videos" / sc.name);
      }
      write_truth(cast.truth, opts.out_dir / "truth" / (sc.name + ".jsonl"));
      spdlog::info("{}: {} frames, {} touches", sc.name, sc.duration_frames,
                   sc.touches.size());
    }
    return kExitOk;
  });
}

int cmd_eval(const EvalOptions& opts) {
  return guarded([&] {
    for (const fs::path& d : {opts.reports_dir, opts.truth_dir}) {
      if (!fs::is_directory(d)) {
        throw UsageError(fmt::format("{} is not a directory", d.string()));
      }
    }
    std::map<std::string, ReportDocument> reports;
    for (const auto& e : fs::directory_iterator(opts.reports_dir)) {
      const fs::path& p = e.path();
      if (p.extension() != ".json" || p.filename() == kEvalSummaryName) continue;
      ReportDocument doc = read_report(p);
      std::string id = doc.source_id;
      if (!reports.emplace(id, std::move(doc)).second) {
        throw UsageError(fmt::format("two reports for source_id '{}'", id));
      }
    }
    std::map<std::string, std::vector<GroundTruthRecord>> truths;
    for (const auto& e : fs::directory_iterator(opts.truth_dir)) {
      if (e.path().extension() != ".jsonl") continue;
      truths.emplace(e.path().stem().string(), read_truth(e.path()));
    }
    std::vector<std::string> orphans;
    for (const auto& [id, doc] : reports) {
      if (!truths.contains(id)) orphans.push_back("report " + id);
    }
    for (const auto& [id, t] : truths) {
      if (!reports.contains(id)) orphans.push_back("truth " + id);
    }
    if (!orphans.empty()) {
      throw UsageError(fmt::format("unpaired files: {}",
                                   fmt::join(orphans, ", ")));
    }
    std::vector<EvalInput> inputs;
    for (const auto& [id, doc] : reports) {
      inputs.push_back(EvalInput{&doc, &truths.at(id)});
    }
    const EvalSummary summary = evaluate_corpus(inputs, opts.thresholds);
    const std::string text = to_json(summary).dump(2) + "\n";
    const fs::path out =
        opts.out.value_or(opts.reports_dir / kEvalSummaryName);
    std::ofstream f(out);
    if (!(f << text)) {
      throw Error(fmt::format("cannot write {}", out.string()));
    }
    std::cout << text;
    spdlog::info("detection f1 {:.3f}, response f1 {:.3f}, finish f1 {:.3f}",
                 summary.detection.f1, summary.alerting.response.f1,
                 summary.alerting.finish.f1);
    return kExitOk;
  });
}

int run(int argc, char** argv) {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("guiperf");
    spdlog::set_default_logger(l);
    spdlog::set_pattern("[%l] %v");
    return l;
  }();
  (void)logger;

  CLI::App app{"Measure GUI responsiveness from screencasts"};
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  AnalyzeOptions analyze;
  std::string detector = "builtin";
  int ssim_window = analyze.analysis.ssim.window;
  int downscale = analyze.analysis.ssim.downscale_max_dim.value_or(0);
  double fps_hint = 0.0;
  auto* a = app.add_subcommand("analyze", "Analyze screencasts into reports");
  a->add_option("--in", analyze.inputs,
                "Manifest, .y4m file or directory of them")
      ->required();
  a->add_option("--out", analyze.out_dir, "Report directory")->required();
  a->add_option("--fps-hint", fps_hint, "Frame rate for Y4M without F tag")
      ->check(CLI::PositiveNumber);
  a->add_option("--detector", detector, "Tap detector")
      ->check(CLI::IsMember({"builtin", "external"}));
  a->add_option("--detections", analyze.detections,
                "Detection JSONL file or directory of <source_id>.jsonl");
  a->add_option("--ssim-window", ssim_window, "SSIM window side")
      ->capture_default_str();
  a->add_option("--downscale", downscale,
                "Longest side for SSIM, 0 keeps full resolution")
      ->capture_default_str();
  a->add_option("--forest-seed", analyze.analysis.forest.seed)
      ->capture_default_str();
  a->add_option("--score-threshold", analyze.analysis.forest.score_threshold)
      ->capture_default_str();
  a->add_option("--response-threshold-ms", analyze.analysis.thresholds.response_ms)
      ->capture_default_str();
  a->add_option("--finish-threshold-ms", analyze.analysis.thresholds.finish_ms)
      ->capture_default_str();
  a->add_option("--workers", analyze.workers, "Videos analyzed concurrently")
      ->capture_default_str();

  SynthOptions synth;
  std::string synth_format = "manifest";
  auto* s = app.add_subcommand("synth", "Render synthetic screencasts");
  s->add_option("--scenario", synth.scenario, "Scenario JSON")->required();
  s->add_option("--out", synth.out_dir, "Output directory")->required();
  s->add_option("--format", synth_format, "Video container")
      ->check(CLI::IsMember({"manifest", "y4m"}))
      ->capture_default_str();

  EvalOptions eval;
  std::string eval_out;
  auto* e = app.add_subcommand("eval", "Score reports against ground truth");
  e->add_option("--reports", eval.reports_dir, "Report directory")->required();
  e->add_option("--truth", eval.truth_dir, "Ground-truth directory")->required();
  e->add_option("--response-threshold-ms", eval.thresholds.response_ms)
      ->capture_default_str();
  e->add_option("--finish-threshold-ms", eval.thresholds.finish_ms)
      ->capture_default_str();
  e->add_option("--out", eval_out, "Summary path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  spdlog::set_level(quiet     ? spdlog::level::err
                    : verbose ? spdlog::level::debug
                              : spdlog::level::info);

  if (a->parsed()) {
    if (fps_hint > 0.0) analyze.fps_hint = fps_hint;
    analyze.analysis.detector.mode =
        detector == "external" ? DetectorMode::kExternal : DetectorMode::kBuiltin;
    analyze.analysis.ssim.window = ssim_window;
    analyze.analysis.ssim.downscale_max_dim =
        downscale > 0 ? std::optional<int>(downscale) : std::nullopt;
    return cmd_analyze(analyze);
  }
  if (s->parsed()) {
    synth.format =
        synth_format == "y4m" ? SynthFormat::kY4m : SynthFormat::kManifest;
    return cmd_synth(synth);
  }
  if (!eval_out.empty()) eval.out = eval_out;
  return cmd_eval(eval);
}

}  // namespace guiperf::cli
