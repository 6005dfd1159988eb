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

#include <fstream>
#include <random>
#include <sstream>

#include "guiperf/error.hpp"
#include "guiperf/frameio.hpp"
#include "guiperf/synthgen.hpp"
#include "test_util.hpp"

namespace guiperf {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Scenario small_scenario() {
  Scenario sc;
  sc.name = "small";
  sc.width = 48;
  sc.height = 64;
  sc.fps = 60.0;
  sc.duration_frames = 300;
  Touch t;
  t.onset_frame = 10;
  t.path = {PathPoint{10, 24, 40}};
  t.indicator_radius_px = 9;
  t.response_lag_frames = 6;
  t.transition_frames = 4;
  sc.touches.push_back(t);
  return sc;
}

TEST(Manifest, RoundTripKeepsRateTimestampsAndPixels) {
  TempDir dir("manifest");
  const Screencast cast = generate_screencast(small_scenario());
  const fs::path manifest = write_manifest(cast.frames, dir.path() / "clip");
  EXPECT_EQ(manifest.filename(), "manifest.jsonl");

  const FrameSequence back = load_manifest(manifest);
  EXPECT_EQ(back.source_id(), "clip");
  EXPECT_EQ(back.size(), 300u);
  EXPECT_DOUBLE_EQ(back.nominal_fps(), 60.0);
  EXPECT_NEAR(back[299].pts_ms, 299 * 1000.0 / 60.0, 1e-9);
  EXPECT_NEAR(back[299].pts_ms, 4983.33, 0.01);
  for (std::size_t i = 0; i < back.size(); i += 37) {
    EXPECT_TRUE((back[i].pixels == cast.frames[i].pixels).all()) << i;
  }
}

TEST(Manifest, SourceIdFallsBackToStem) {
  EXPECT_EQ(source_id_for_path("videos/run7/manifest.jsonl"), "run7");
  EXPECT_EQ(source_id_for_path("videos/other.jsonl"), "other");
  EXPECT_EQ(source_id_for_path("videos/cap.y4m"), "cap");
}

class ManifestErrors : public ::testing::Test {
 protected:
  void SetUp() override {
    write_png(Frame::Gray(0, 0, GrayImage::Constant(4, 4, 10)),
              dir_.path() / "a.png");
    write_png(Frame::Gray(0, 0, GrayImage::Constant(5, 4, 10)),
              dir_.path() / "big.png");
  }
  std::string load(const std::string& body) {
    const fs::path p = dir_.path() / "m.jsonl";
    std::ofstream(p) << body;
    return error_of([&] { load_manifest(p); });
  }
  TempDir dir_{"manifest_err"};
};

TEST_F(ManifestErrors, MissingImageNamesEntry) {
  const std::string e = load(
      "{\"nominal_fps\":30,\"width\":4,\"height\":4}\n"
      "{\"index\":0,\"pts_ms\":0,\"image\":\"a.png\"}\n"
      "{\"index\":1,\"pts_ms\":33,\"image\":\"gone.png\"}\n");
  EXPECT_NE(e.find("entry 1"), std::string::npos) << e;
}

TEST_F(ManifestErrors, NonMonotonicTimestamp) {
  const std::string e = load(
      "{\"nominal_fps\":30,\"width\":4,\"height\":4}\n"
      "{\"index\":0,\"pts_ms\":10,\"image\":\"a.png\"}\n"
      "{\"index\":1,\"pts_ms\":5,\"image\":\"a.png\"}\n");
  EXPECT_NE(e.find("non-monotonic timestamp at entry 1"), std::string::npos) << e;
}

TEST_F(ManifestErrors, DimensionMismatch) {
  const std::string e = load(
      "{\"nominal_fps\":30,\"width\":4,\"height\":4}\n"
      "{\"index\":0,\"pts_ms\":0,\"image\":\"a.png\"}\n"
      "{\"index\":1,\"pts_ms\":33,\"image\":\"big.png\"}\n");
  EXPECT_NE(e.find("dimension mismatch at entry 1"), std::string::npos) << e;
}

TEST_F(ManifestErrors, MissingHeaderField) {
  const std::string e = load("{\"width\":4,\"height\":4}\n");
  EXPECT_NE(e.find("nominal_fps"), std::string::npos) << e;
}

TEST(Png, RgbRoundTrip) {
  TempDir dir("png");
  std::mt19937_64 rng(3);
  const Frame f = Frame::Rgb(0, 0.0, 7, 5, testing::random_gray(rng, 5, 21));
  write_png(f, dir.path() / "c.png");
  const Frame back = read_png(dir.path() / "c.png");
  EXPECT_EQ(back.colorspace, Colorspace::kRgb);
  EXPECT_TRUE((back.pixels == f.pixels).all());
}

TEST(Y4m, SynthRoundTripPreservesLuma) {
  const Screencast cast = generate_screencast(small_scenario());
  for (Y4mChroma chroma : {Y4mChroma::k420, Y4mChroma::kMono}) {
    std::stringstream buf;
    write_y4m(cast.frames, buf, chroma);
    const FrameSequence back = parse_y4m(buf, "rt");
    ASSERT_EQ(back.size(), cast.frames.size());
    EXPECT_DOUBLE_EQ(back.nominal_fps(), 60.0);
    GrayImage scratch;
    for (std::size_t i = 0; i < back.size(); ++i) {
      ASSERT_TRUE((gray_plane(back[i], scratch) == cast.frames[i].pixels).all())
          << "frame " << i;
    }
  }
}

TEST(Y4m, FractionalRateAndTimestamps) {
  std::stringstream s;
  s << "YUV4MPEG2 W2 H2 F30000:1001 C420jpeg\n";
  for (int i = 0; i < 3; ++i) s << "FRAME\n" << std::string(4 + 2, '\x80');
  const FrameSequence seq = parse_y4m(s);
  EXPECT_NEAR(seq.nominal_fps(), 29.97, 0.001);
  EXPECT_NEAR(seq[2].pts_ms, 2 * 1001.0 / 30.0, 1e-9);
}

TEST(Y4m, FullRangeYuvToRgb) {
  std::stringstream s;
  // One 2x2 frame: Y = 100, Cb = 128, Cr = 200.
  s << "YUV4MPEG2 W2 H2 F25:1 C420jpeg\nFRAME\n"
    << std::string(4, 'd') << '\x80' << '\xc8';
  const FrameSequence seq = parse_y4m(s);
  const Frame& f = seq[0];
  ASSERT_EQ(f.colorspace, Colorspace::kRgb);
  const double cr = 200 - 128.0;
  EXPECT_EQ(f.pixels(0, 0), std::lround(std::clamp(100 + 1.402 * cr, 0.0, 255.0)));
  EXPECT_EQ(f.pixels(0, 1), std::lround(100 - 0.714136 * cr));
  EXPECT_EQ(f.pixels(0, 2), 100);
}

TEST(Y4m, TruncatedPayloadNamesFrame) {
  std::stringstream s;
  s << "YUV4MPEG2 W4 H4 F30:1 Cmono\nFRAME\n"
    << std::string(16, 'a') << "FRAME\n" << std::string(7, 'a');
  EXPECT_NE(error_of([&] { parse_y4m(s); }).find("truncated frame payload at frame 1"),
            std::string::npos);
}

TEST(Y4m, MissingRateNeedsHint) {
  auto make = [] {
    auto s = std::make_unique<std::stringstream>();
    *s << "YUV4MPEG2 W2 H2 Cmono\nFRAME\n" << std::string(4, 'a');
    return s;
  };
  auto a = make();
  EXPECT_THROW(parse_y4m(*a), Error);
  auto b = make();
  EXPECT_DOUBLE_EQ(parse_y4m(*b, "x", 24.0).nominal_fps(), 24.0);
}

TEST(Y4m, RejectsBadMagicAndColorspace) {
  std::stringstream a("MPEG W2 H2 F1:1\n");
  EXPECT_THROW(parse_y4m(a), Error);
  std::stringstream b("YUV4MPEG2 W2 H2 F1:1 C444\nFRAME\n");
  EXPECT_THROW(parse_y4m(b), Error);
}

}  // namespace
}  // namespace guiperf
