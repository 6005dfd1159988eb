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

#ifndef GUIPERF_TESTS_TEST_UTIL_HPP_
#define GUIPERF_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "guiperf/frame.hpp"

namespace guiperf::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("guiperf_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline GrayImage random_gray(std::mt19937_64& rng, int rows, int cols,
                             int lo = 0, int hi = 255) {
  std::uniform_int_distribution<int> d(lo, hi);
  GrayImage img(rows, cols);
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    img.data()[i] = static_cast<std::uint8_t>(d(rng));
  }
  return img;
}

inline FrameSequence gray_sequence(const std::vector<GrayImage>& planes,
                                   double fps, std::string id = "test") {
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    frames.push_back(Frame::Gray(i, static_cast<double>(i) * 1000.0 / fps,
                                 planes[i]));
  }
  return FrameSequence(std::move(frames), fps, std::move(id));
}

// Disc of luma `ink` alpha-blended at opacity `alpha`; pixel centres sit at
// half-integer coordinates.
inline void stamp_disc(GrayImage& img, double cx, double cy, double r,
                       double alpha, int ink = 16) {
  for (int y = 0; y < img.rows(); ++y) {
    for (int x = 0; x < img.cols(); ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) {
        img(y, x) = static_cast<std::uint8_t>(
            std::lround((1.0 - alpha) * img(y, x) + alpha * ink));
      }
    }
  }
}

}  // namespace guiperf::testing

#endif  // GUIPERF_TESTS_TEST_UTIL_HPP_
