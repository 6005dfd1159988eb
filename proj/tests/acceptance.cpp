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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include "guiperf/cli.hpp"
#include "guiperf/evaluation.hpp"
#include "guiperf/frameio.hpp"
#include "guiperf/keyframes.hpp"
#include "guiperf/pipeline.hpp"
#include "guiperf/similarity.hpp"
#include "guiperf/synthgen.hpp"

namespace fs = std::filesystem;
using namespace guiperf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Verdict& v) {
  std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(),
              v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

void guarded(int id, const std::string& name, const std::function<Verdict()>& fn) {
  try {
    report(id, name, fn());
  } catch (const std::exception& e) {
    report(id, name, Verdict{false, fmt::format("exception: {}", e.what())});
  }
}

// Every window position visited directly, statistics accumulated per pixel.
double brute_force_ssim(const GrayImage& a, const GrayImage& b) {
  constexpr int kWin = 8;
  const double c1 = std::pow(0.01 * 255, 2);
  const double c2 = std::pow(0.03 * 255, 2);
  double total = 0;
  long count = 0;
  for (int y = 0; y + kWin <= a.rows(); ++y) {
    for (int x = 0; x + kWin <= a.cols(); ++x) {
      double sa = 0, sb = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          sa += a(y + i, x + j);
          sb += b(y + i, x + j);
        }
      }
      const double n = kWin * kWin;
      const double ma = sa / n, mb = sb / n;
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          const double da = a(y + i, x + j) - ma;
          const double db = b(y + i, x + j) - mb;
          va += da * da;
          vb += db * db;
          cov += da * db;
        }
      }
      va /= n, vb /= n, cov /= n;
      total += (2 * ma * mb + c1) * (2 * cov + c2) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return total / count;
}

GrayImage random_gray(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> d(0, 255);
  GrayImage img(rows, cols);
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    img.data()[i] = static_cast<std::uint8_t>(d(rng));
  }
  return img;
}

Verdict ssim_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  SsimParams p;
  p.downscale_max_dim.reset();
  double worst = 0, worst_self = 0;
  for (int k = 0; k < 20; ++k) {
    const GrayImage a = random_gray(rng, 64, 64);
    GrayImage b = random_gray(rng, 64, 64);
    if (k % 2) b = (a.cast<int>() / 2 + b.cast<int>() / 2).cast<std::uint8_t>();
    worst = std::max(worst, std::abs(ssim(a, b, p) - brute_force_ssim(a, b)));
    worst_self = std::max(worst_self, std::abs(ssim(a, a, p) - 1.0));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && worst_self <= 1e-9 && secs < 5.0,
          fmt::format("max |ssim - oracle| = {:.2e}, max |ssim(a,a) - 1| = "
                      "{:.2e}, {:.3f} s",
                      worst, worst_self, secs)};
}

void fill_disc(GrayImage& img, double cx, double cy, double r, double alpha) {
  for (int y = 0; y < img.rows(); ++y) {
    for (int x = 0; x < img.cols(); ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) {
        img(y, x) = static_cast<std::uint8_t>(
            std::lround((1 - alpha) * img(y, x) + alpha * 16.0));
      }
    }
  }
}

// Ten frames 16 ms apart. The indicator shows on the first frame only and
// the screen changes twice: a panel appears on the fourth frame and a second
// one settles on the tenth, so the change spans f4 to f10.
Verdict worked_example() {
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < 10; ++i) {
    GrayImage img = GrayImage::Constant(320, 180, 240);
    if (i >= 3) img.block(40, 10, 100, 160).setConstant(150);
    if (i >= 9) img.block(200, 10, 80, 160).setConstant(110);
    if (i == 0) fill_disc(img, 90, 250, 24, 0.5);
    frames.push_back(Frame::Gray(i, 16.0 * i, std::move(img)));
  }
  const FrameSequence seq(std::move(frames), 62.5, "worked");
  AnalysisConfig cfg;
  cfg.ssim.downscale_max_dim.reset();
  const auto r = analyze_sequence(seq, cfg);
  if (r.measurements.size() != 1) {
    return {false, fmt::format("expected 1 interaction, got {}",
                               r.measurements.size())};
  }
  const auto& m = r.measurements.front();
  const bool ok = m.response_ms == 48.0 && m.finish_ms == 144.0;
  return {ok, fmt::format("RT = {} ms, FT = {} ms (want 48 / 144)",
                          m.response_ms.value_or(-1), m.finish_ms.value_or(-1))};
}

struct CorpusRun {
  std::vector<Scenario> scenarios;
  std::vector<std::vector<GroundTruthRecord>> truth;
  std::vector<ReportDocument> reports;
  std::vector<AnalysisResult> results;
  std::vector<std::size_t> frame_counts;
  EvalSummary summary;
  double seconds = 0;
};

CorpusRun run_corpus(bool noise) {
  CorpusRun run;
  run.scenarios = canonical_corpus(noise);
  AnalysisConfig cfg;
  cfg.ssim.downscale_max_dim.reset();
  const auto t0 = Clock::now();
  for (const Scenario& sc : run.scenarios) {
    Screencast cast = generate_screencast(sc);
    run.frame_counts.push_back(cast.frames.size());
    run.results.push_back(analyze_sequence(cast.frames, cfg));
    run.reports.push_back(run.results.back().report);
    run.truth.push_back(std::move(cast.truth));
  }
  run.seconds = seconds_since(t0);
  std::vector<EvalInput> in;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    in.push_back(EvalInput{&run.reports[i], &run.truth[i]});
  }
  run.summary = evaluate_corpus(in, AlertThresholds{});
  return run;
}

double bucket(const TimingMetrics& m, int limit) {
  const auto it = std::find(m.bucket_limits.begin(), m.bucket_limits.end(), limit);
  return m.within.at(static_cast<std::size_t>(it - m.bucket_limits.begin()));
}

Verdict crisp_detection(const CorpusRun& run) {
  const auto& s = run.summary;
  const bool ok = s.detection.precision >= 0.95 && s.detection.recall >= 0.95 &&
                  s.gesture_accuracy == 1.0 && run.seconds < 300.0;
  return {ok, fmt::format("precision {:.3f}, recall {:.3f}, gesture accuracy "
                          "{:.3f}, {:.1f} s",
                          s.detection.precision, s.detection.recall,
                          s.gesture_accuracy, run.seconds)};
}

Verdict crisp_timing(const CorpusRun& run) {
  const auto& s = run.summary;
  const double r3 = bucket(s.response, 3);
  const double f6 = bucket(s.finish, 6);
  const bool ok = r3 >= 0.95 && s.response.mae_frames <= 1.5 && f6 >= 0.89;
  return {ok, fmt::format("response <=3 frames {:.3f}, response MAE {:.2f} "
                          "frames, finish <=6 frames {:.3f}",
                          r3, s.response.mae_frames, f6)};
}

Verdict noisy_alerting(const CorpusRun& run) {
  const auto& a = run.summary.alerting;
  const bool ok = a.response.f1 >= 0.90 && a.finish.f1 >= 0.85;
  return {ok, fmt::format("response F1 {:.3f}, finish F1 {:.3f}, {} banner "
                          "scenarios",
                          a.response.f1, a.finish.f1,
                          std::count_if(run.scenarios.begin(), run.scenarios.end(),
                                        [](const Scenario& s) {
                                          return s.banner.has_value();
                                        }))};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Four noisy scenarios, two with the banner, written as Y4M and analyzed
// through the batch command with one and three workers.
Verdict determinism() {
  const fs::path root = fs::temp_directory_path() /
                        fmt::format("guiperf_acceptance_{}", std::random_device{}());
  fs::create_directories(root / "in");
  const auto corpus = canonical_corpus(true);
  std::vector<std::string> ids;
  for (std::size_t s : {0, 1, 4, 7}) {
    const Screencast cast = generate_screencast(corpus[s]);
    std::ofstream out(root / "in" / (corpus[s].name + ".y4m"), std::ios::binary);
    write_y4m(cast.frames, out);
    ids.push_back(corpus[s].name);
  }
  for (int workers : {1, 3}) {
    cli::AnalyzeOptions opts;
    opts.inputs = {root / "in"};
    opts.out_dir = root / fmt::format("w{}", workers);
    opts.workers = workers;
    if (cli::cmd_analyze(opts) != cli::kExitOk) {
      fs::remove_all(root);
      return {false, fmt::format("analyze with {} workers failed", workers)};
    }
  }
  std::size_t same = 0;
  for (const auto& id : ids) {
    const std::string a = slurp(root / "w1" / (id + ".json"));
    same += !a.empty() && a == slurp(root / "w3" / (id + ".json"));
  }
  fs::remove_all(root);
  return {same == ids.size(),
          fmt::format("{}/{} reports byte-identical across 1 and 3 workers",
                      same, ids.size())};
}

Verdict forest_sanity() {
  std::vector<std::string> problems;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<double> x(32, 0.0);
    x[31] = 0.9;
    ForestConfig c;
    c.seed = seed;
    const auto s = isolation_forest_scores(x, c);
    if (std::max_element(s.begin(), s.end()) - s.begin() != 31) {
      problems.push_back(fmt::format("outlier not top for seed {}", seed));
    }
    const std::vector<double> flat(32, 0.25);
    const auto u = isolation_forest_scores(flat, c);
    if (std::any_of(u.begin(), u.end(), [&](double v) { return v != u[0]; })) {
      problems.push_back(fmt::format("constant series not uniform, seed {}", seed));
    }
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0, 1);
  ForestConfig plain;
  plain.substantial_change_fraction = 0.0;
  int with_anomalies = 0;
  for (int trial = 0; trial < 100; ++trial) {
    SimilaritySeries series;
    series.values.resize(8 + rng() % 60);
    for (double& v : series.values) {
      v = uni(rng) < 0.75 ? 1.0 - 0.02 * uni(rng) : uni(rng);
    }
    const auto anomalies = detect_anomalies(series, plain);
    Interaction span;
    span.start_frame = 1000;
    span.end_frame = 1000 + series.values.size();
    const auto kf = locate_keyframes(span, series, anomalies, plain);
    if (anomalies.empty()) continue;
    ++with_anomalies;
    if (kf.response_frame != 1001 + anomalies.front() ||
        kf.finish_frame != 1001 + anomalies.back()) {
      problems.push_back(fmt::format("series {} not first/last anomaly", trial));
    }
  }
  if (with_anomalies == 0) problems.push_back("no series had anomalies");
  return {problems.empty(),
          problems.empty()
              ? fmt::format("outlier top on seeds 0-9, constant series uniform, "
                            "{} of 100 series map to first/last anomaly",
                            with_anomalies)
              : problems.front()};
}

Verdict throughput() {
  Scenario sc;
  sc.name = "hd";
  sc.width = 720;
  sc.height = 1280;
  sc.duration_frames = 300;
  const std::vector<std::pair<double, double>> spots{
      {360, 900}, {200, 400}, {520, 1000}, {300, 500}};
  std::size_t onset = 10;
  for (std::size_t k = 0; k < spots.size(); ++k) {
    Touch t;
    t.onset_frame = onset;
    t.indicator_radius_px = 40;
    t.path = {{onset, spots[k].first, spots[k].second}};
    t.response_lag_frames = 6 + static_cast<int>(k) * 3;
    t.transition_frames = 8 + static_cast<int>(k) * 4;
    t.transition_kind = static_cast<TransitionKind>(k % 3);
    sc.touches.push_back(t);
    onset += 70;
  }
  const Screencast cast = generate_screencast(sc);
  const AnalysisConfig cfg;  // downscale to 320 on the long side
  const auto t0 = Clock::now();
  const auto r = analyze_sequence(cast.frames, cfg);
  const double secs = seconds_since(t0);
  return {secs <= 9.0 && r.interactions.size() == sc.touches.size(),
          fmt::format("{} frames at {}x{} in {:.2f} s, {} interactions", 
                      cast.frames.size(), sc.width, sc.height, secs,
                      r.interactions.size())};
}

Verdict invariants(const std::vector<const CorpusRun*>& runs) {
  std::size_t responsive = 0;
  std::vector<std::string> problems;
  for (const CorpusRun* run : runs) {
    for (std::size_t s = 0; s < run->reports.size(); ++s) {
      const auto& recs = run->reports[s].interactions;
      const std::size_t last = run->frame_counts[s] - 1;
      const auto& dets = run->results[s].detections;
      const std::string where = run->reports[s].source_id;
      if (!recs.empty() && !dets.empty() &&
          recs.front().start_frame != dets.front().frame_index) {
        problems.push_back(where + ": first span does not start at first onset");
      }
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        const std::size_t expected_end =
            i + 1 < recs.size() ? recs[i + 1].start_frame - 1 : last;
        if (r.end_frame != expected_end || r.start_frame > r.end_frame) {
          problems.push_back(fmt::format("{}: span {} breaks the partition", where, i));
        }
        if (r.status != KeyframeStatus::kResponsive) continue;
        ++responsive;
        const bool ordered = r.start_frame < *r.response_frame &&
                             *r.response_frame <= *r.finish_frame &&
                             *r.finish_frame <= r.end_frame &&
                             *r.response_ms <= *r.finish_ms;
        if (!ordered) {
          problems.push_back(fmt::format("{}: interaction {} out of order", where, i));
        }
      }
    }
  }
  return {problems.empty() && responsive > 0,
          problems.empty()
              ? fmt::format("{} responsive measurements ordered, spans partition "
                            "every video",
                            responsive)
              : fmt::format("{} violations, first: {}", problems.size(),
                            problems.front())};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  guarded(1, "SSIM oracle equivalence", ssim_oracle);
  guarded(2, "worked example timings", worked_example);

  CorpusRun crisp, noisy;
  bool crisp_ok = false, noisy_ok = false;
  guarded(3, "crisp corpus detection", [&] {
    crisp = run_corpus(false);
    crisp_ok = true;
    return crisp_detection(crisp);
  });
  guarded(4, "crisp corpus timing", [&] {
    if (!crisp_ok) return Verdict{false, "crisp corpus did not run"};
    return crisp_timing(crisp);
  });
  guarded(5, "alerting with banner noise", [&] {
    noisy = run_corpus(true);
    noisy_ok = true;
    return noisy_alerting(noisy);
  });
  guarded(6, "batch determinism", determinism);
  guarded(7, "isolation forest sanity", forest_sanity);
  guarded(8, "720p throughput", throughput);
  guarded(9, "measurement invariants", [&] {
    std::vector<const CorpusRun*> runs;
    if (crisp_ok) runs.push_back(&crisp);
    if (noisy_ok) runs.push_back(&noisy);
    if (runs.empty()) return Verdict{false, "no corpus ran"};
    return invariants(runs);
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
