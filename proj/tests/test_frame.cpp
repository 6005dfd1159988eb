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

#include <cmath>
#include <random>

#include "guiperf/error.hpp"
#include "guiperf/frame.hpp"
#include "test_util.hpp"

namespace guiperf {
namespace {

TEST(Frame, GrayConstructorValidatesShape) {
  Frame f = Frame::Gray(3, 50.0, GrayImage::Constant(4, 6, 9));
  EXPECT_EQ(f.width, 6);
  EXPECT_EQ(f.height, 4);
  EXPECT_EQ(f.channels(), 1);
  f.pixels.resize(4, 5);
  EXPECT_THROW(f.validate(), Error);
}

TEST(Frame, RgbRasterInterleavesChannels) {
  Raster px(2, 9);
  px.setZero();
  Frame f = Frame::Rgb(0, 0.0, 3, 2, px);
  EXPECT_EQ(f.channels(), 3);
  EXPECT_THROW(Frame::Rgb(0, 0.0, 4, 2, px), Error);
}

TEST(Frame, GrayscaleMatchesPerPixelLuma) {
  std::mt19937_64 rng(7);
  const int w = 17, h = 11;
  Raster px = testing::random_gray(rng, h, 3 * w);
  const Frame rgb = Frame::Rgb(0, 0.0, w, h, px);
  const Frame gray = to_grayscale(rgb);
  ASSERT_EQ(gray.colorspace, Colorspace::kGray);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int r = px(y, 3 * x), g = px(y, 3 * x + 1), b = px(y, 3 * x + 2);
      // Integer form of the BT.601 weights, rounding half up.
      const int expect = (299 * r + 587 * g + 114 * b + 500) / 1000;
      EXPECT_NEAR(gray.pixels(y, x), expect, 1) << x << "," << y;
    }
  }
}

TEST(Frame, GrayPlaneAvoidsCopyForGrayFrames) {
  Frame f = Frame::Gray(0, 0.0, GrayImage::Constant(2, 2, 1));
  GrayImage scratch;
  EXPECT_EQ(&gray_plane(f, scratch), &f.pixels);
}

TEST(FrameSequence, RejectsEmptyAndBadRate) {
  EXPECT_THROW(FrameSequence({}, 60.0, "x"), Error);
  std::vector<Frame> one{Frame::Gray(0, 0.0, GrayImage::Zero(2, 2))};
  EXPECT_THROW(FrameSequence(one, 0.0, "x"), Error);
}

TEST(FrameSequence, ReportsDimensionMismatchEntry) {
  std::vector<Frame> frames{Frame::Gray(0, 0.0, GrayImage::Zero(2, 2)),
                            Frame::Gray(1, 16.0, GrayImage::Zero(2, 2)),
                            Frame::Gray(2, 33.0, GrayImage::Zero(3, 2))};
  try {
    FrameSequence seq(frames, 60.0, "x");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("dimension mismatch at entry 2"),
              std::string::npos)
        << e.what();
  }
}

TEST(FrameSequence, ReportsNonMonotonicTimestamp) {
  std::vector<Frame> frames{Frame::Gray(0, 0.0, GrayImage::Zero(2, 2)),
                            Frame::Gray(1, 16.0, GrayImage::Zero(2, 2)),
                            Frame::Gray(2, 16.0, GrayImage::Zero(2, 2))};
  try {
    FrameSequence seq(frames, 60.0, "x");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("non-monotonic timestamp at entry 2"),
              std::string::npos)
        << e.what();
  }
}

}  // namespace
}  // namespace guiperf
