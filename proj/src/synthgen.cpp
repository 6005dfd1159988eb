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

#include "guiperf/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "guiperf/error.hpp"
#include "guiperf/isolation_forest.hpp"

namespace guiperf {
namespace {

constexpr int kHeaderHeight = 56;
constexpr int kContentTop = 120;
constexpr std::uint8_t kIndicatorLuma = 16;

// Frames spent on the visible part of a transition before any hold.
int opening_frames(TransitionKind k) {
  switch (k) {
    case TransitionKind::kFullScreen: return 6;
    case TransitionKind::kPartialRegion: return 5;
    case TransitionKind::kFade: return 4;
  }
  return 1;
}

constexpr int kLoadingFrames = 3;

double hash01(int a, int b, int c) {
  std::uint64_t h = static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ull ^
                    static_cast<std::uint64_t>(b) * 0xC2B2AE3D27D4EB4Full ^
                    static_cast<std::uint64_t>(c) * 0x165667B19E3779F9ull;
  SplitMix64 mix(h);
  return mix.uniform();
}

void fill_rect(GrayImage& img, int x, int y, int w, int h, std::uint8_t v,
               int clip_y0 = 0, int clip_y1 = -1) {
  if (clip_y1 < 0) clip_y1 = static_cast<int>(img.rows());
  const int x0 = std::max(x, 0);
  const int x1 = std::min<int>(x + w, static_cast<int>(img.cols()));
  const int y0 = std::max({y, 0, clip_y0});
  const int y1 = std::min({y + h, static_cast<int>(img.rows()), clip_y1});
  if (x0 >= x1 || y0 >= y1) return;
  img.block(y0, x0, y1 - y0, x1 - x0).setConstant(v);
}

struct Panel {
  BBox region;
  int variant = 0;
};

struct AppState {
  int page = 0;
  std::vector<Panel> panels;
};

int row_count(int page, int height) {
  const int top = kContentTop + (page % 3) * 8;
  const int pitch = 48 + (page % 4) * 6 + 12;
  return std::max(0, (height - 8 - top + 12) / pitch);
}

// `load` in [0, 1] is the fraction of list rows already populated.
void draw_page(GrayImage& img, int page, double load) {
  static constexpr std::array<std::uint8_t, 4> kBackground{244, 234, 250, 238};
  static constexpr std::array<std::uint8_t, 3> kHeader{196, 184, 208};
  const int width = static_cast<int>(img.cols());
  const int height = static_cast<int>(img.rows());
  const std::uint8_t bg = kBackground[page % 4];
  img.setConstant(bg);
  fill_rect(img, 0, 0, width, kHeaderHeight, kHeader[page % 3]);
  fill_rect(img, 16, 24, 100 + 20 * (page % 5), 6, 150);

  const int top = kContentTop + (page % 3) * 8;
  const int row_h = 48 + (page % 4) * 6;
  const int rows = row_count(page, height);
  const int shown = static_cast<int>(std::ceil(load * rows - 1e-9));
  const int inner = width - 24 - 32;
  for (int r = 0; r < shown; ++r) {
    const int y = top + r * (row_h + 12);
    fill_rect(img, 12, y, width - 24, row_h,
              static_cast<std::uint8_t>(bg - 18 - 6 * ((page + r) % 2)));
    fill_rect(img, 28, y + 12,
              static_cast<int>(inner * (0.45 + 0.4 * hash01(page, r, 1))), 6,
              160);
    fill_rect(img, 28, y + 28,
              static_cast<int>(inner * (0.3 + 0.4 * hash01(page, r, 2))), 4,
              180);
  }
}

// Draws the top `visible_h` rows of a panel.
void draw_panel(GrayImage& img, const Panel& p, double load, int visible_h) {
  const BBox& b = p.region;
  const int y_end = b.y + std::clamp(visible_h, 0, b.h);
  const std::uint8_t shade = p.variant % 2 == 0 ? 226 : 212;
  fill_rect(img, b.x, b.y, b.w, b.h, shade, b.y, y_end);
  fill_rect(img, b.x, b.y, b.w, 2, 150, b.y, y_end);
  fill_rect(img, b.x, b.y, 2, b.h, 150, b.y, y_end);
  fill_rect(img, b.x + b.w - 2, b.y, 2, b.h, 150, b.y, y_end);
  fill_rect(img, b.x, b.y + b.h - 2, b.w, 2, 150, b.y, y_end);
  const int lines = std::max(0, (b.h - 24) / 28);
  const int shown = static_cast<int>(std::ceil(load * lines - 1e-9));
  for (int k = 0; k < shown; ++k) {
    fill_rect(img, b.x + 16, b.y + 16 + k * 28,
              static_cast<int>((b.w - 32) *
                               (0.5 + 0.4 * hash01(p.variant, k, 3))),
              6, 170, b.y, y_end);
  }
}

void draw_state(GrayImage& img, const AppState& s, double last_load = 1.0,
                bool page_is_new = false) {
  draw_page(img, s.page, page_is_new ? last_load : 1.0);
  for (std::size_t i = 0; i < s.panels.size(); ++i) {
    const bool newest = !page_is_new && i + 1 == s.panels.size();
    draw_panel(img, s.panels[i], newest ? last_load : 1.0,
               s.panels[i].region.h);
  }
}

void draw_banner(GrayImage& img, const BannerNoise& b, std::uint64_t seed,
                 std::size_t frame) {
  const std::uint64_t cycle = frame / static_cast<std::size_t>(b.period_frames);
  SplitMix64 rng(seed * 0x9E3779B97F4A7C15ull + cycle * 0xD1B54A32D192ED03ull);
  const BBox& r = b.region;
  int y = r.y;
  for (int band = 0; band < 3; ++band) {
    const int h = band == 2 ? r.y + r.h - y : r.h / 3;
    fill_rect(img, r.x, y, r.w, h,
              static_cast<std::uint8_t>(170 + rng.below(80)));
    y += h;
  }
  const int bar_w = std::max(8, r.w / 3);
  fill_rect(img, r.x + 8 + static_cast<int>(rng.below(std::max(1, r.w / 3))),
            r.y + r.h / 2 - 3, bar_w, 6,
            static_cast<std::uint8_t>(140 + rng.below(30)));
}

void blend_disc(GrayImage& img, double cx, double cy, double radius,
                double alpha) {
  if (alpha <= 0.0) return;
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)));
  const int x1 = std::min<int>(static_cast<int>(img.cols()) - 1,
                               static_cast<int>(std::ceil(cx + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)));
  const int y1 = std::min<int>(static_cast<int>(img.rows()) - 1,
                               static_cast<int>(std::ceil(cy + radius)));
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y) {
    const double dy = y + 0.5 - cy;
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx;
      if (dx * dx + dy * dy > r2) continue;
      const double v = (1.0 - alpha) * img(y, x) + alpha * kIndicatorLuma;
      img(y, x) = static_cast<std::uint8_t>(std::lround(v));
    }
  }
}

// Indicator position and opacity at `frame`, or nothing when not visible.
struct IndicatorPose {
  double x, y, alpha;
};

std::optional<IndicatorPose> indicator_at(const Touch& t, std::size_t frame) {
  if (frame < t.onset_frame || frame >= t.indicator_gone_frame()) {
    return std::nullopt;
  }
  const auto& path = t.path;
  if (frame >= path.back().frame) {
    const double k = static_cast<double>(frame - path.back().frame);
    const double fade =
        t.fade_frames == 0 ? 1.0 : 1.0 - k / static_cast<double>(t.fade_frames);
    return IndicatorPose{path.back().x, path.back().y,
                         t.indicator_opacity * fade};
  }
  auto next = std::upper_bound(
      path.begin(), path.end(), frame,
      [](std::size_t f, const PathPoint& p) { return f < p.frame; });
  const PathPoint& b = *next;
  const PathPoint& a = *(next - 1);
  const double u = static_cast<double>(frame - a.frame) /
                   static_cast<double>(b.frame - a.frame);
  return IndicatorPose{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                       t.indicator_opacity};
}

BBox default_region(const Touch& t, int width, int height) {
  const double y = t.path.front().y;
  if (y < height / 2.0) {
    return BBox{16, height / 2 + 16, width - 32, height / 2 - 48};
  }
  return BBox{16, kContentTop - 8, width - 32, height / 2 - kContentTop - 16};
}

bool overlaps(const BBox& a, const BBox& b) {
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h &&
         b.y < a.y + a.h;
}

class Renderer {
 public:
  explicit Renderer(const Scenario& sc) : sc_(sc) {
    AppState s;
    states_.push_back(s);
    for (const Touch& t : sc.touches) {
      if (t.transition_kind == TransitionKind::kPartialRegion) {
        Panel panel{t.region.value_or(default_region(t, sc.width, sc.height)),
                    static_cast<int>(states_.size())};
        // Alternate shades when stacking so the new panel always shows.
        for (auto it = s.panels.rbegin(); it != s.panels.rend(); ++it) {
          if (overlaps(it->region, panel.region)) {
            panel.variant = it->variant + 1;
            break;
          }
        }
        s.panels.push_back(panel);
      } else {
        s.page += 1;
        s.panels.clear();
      }
      states_.push_back(s);
    }
  }

  void render(std::size_t frame, GrayImage& img) {
    img.resize(sc_.height, sc_.width);
    std::size_t active = sc_.touches.size();
    for (std::size_t i = 0; i < sc_.touches.size(); ++i) {
      if (sc_.touches[i].response_frame() <= frame) active = i;
    }
    if (active == sc_.touches.size()) {
      draw_state(img, states_.front());
    } else if (frame > sc_.touches[active].finish_frame()) {
      draw_state(img, states_[active + 1]);
    } else {
      draw_transition(active, frame, img);
    }
    if (sc_.banner) draw_banner(img, *sc_.banner, sc_.seed, frame);
    for (const Touch& t : sc_.touches) {
      if (auto pose = indicator_at(t, frame)) {
        blend_disc(img, pose->x, pose->y, t.indicator_radius_px, pose->alpha);
      }
    }
  }

 private:
  void draw_transition(std::size_t i, std::size_t frame, GrayImage& img) {
    const Touch& t = sc_.touches[i];
    const int total = t.transition_frames;
    const int k = static_cast<int>(frame - t.response_frame());
    const int open = std::min(total, opening_frames(t.transition_kind));
    const int loading = std::min(total - open, kLoadingFrames);
    const double p = std::min(1.0, (k + 1.0) / open);
    double load = 1.0;
    if (loading > 0) {
      const int into = k - (total - loading);
      load = into < 0 ? 0.0 : (into + 1.0) / loading;
    }
    const AppState& before = states_[i];
    const AppState& after = states_[i + 1];
    switch (t.transition_kind) {
      case TransitionKind::kPartialRegion: {
        draw_state(img, before);
        const Panel& panel = after.panels.back();
        draw_panel(img, panel, load,
                   static_cast<int>(std::lround(p * panel.region.h)));
        break;
      }
      case TransitionKind::kFullScreen: {
        draw_state(img, before);
        scratch_.resize(img.rows(), img.cols());
        draw_state(scratch_, after, load, true);
        const int offset =
            static_cast<int>(std::lround(sc_.height * (1.0 - p)));
        if (offset < sc_.height) {
          img.bottomRows(sc_.height - offset) =
              scratch_.topRows(sc_.height - offset);
        }
        break;
      }
      case TransitionKind::kFade: {
        draw_state(img, before);
        scratch_.resize(img.rows(), img.cols());
        draw_state(scratch_, after, load, true);
        img = ((1.0 - p) * img.cast<double>() + p * scratch_.cast<double>())
                  .round()
                  .cast<std::uint8_t>();
        break;
      }
    }
  }

  const Scenario& sc_;
  std::vector<AppState> states_;
  GrayImage scratch_;
};

std::size_t touch_window_end(const Touch& t) {
  return std::max(t.finish_frame(), t.indicator_gone_frame() - 1);
}

}  // namespace

std::string_view to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::kFullScreen: return "full_screen";
    case TransitionKind::kPartialRegion: return "partial_region";
    case TransitionKind::kFade: return "fade";
  }
  return "full_screen";
}

TransitionKind parse_transition_kind(std::string_view s) {
  if (s == "full_screen") return TransitionKind::kFullScreen;
  if (s == "partial_region") return TransitionKind::kPartialRegion;
  if (s == "fade") return TransitionKind::kFade;
  throw Error(fmt::format("unknown transition kind '{}'", s));
}

void Scenario::validate() const {
  if (width < 32 || height < 32) {
    throw Error(fmt::format("scenario '{}': frame size {}x{} too small", name,
                            width, height));
  }
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    throw Error(fmt::format("scenario '{}': fps must be positive", name));
  }
  if (duration_frames < 2) {
    throw Error(fmt::format("scenario '{}': duration must be at least 2 frames",
                            name));
  }
  if (banner) {
    const BBox& r = banner->region;
    if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 || r.x + r.w > width ||
        r.y + r.h > height) {
      throw Error(fmt::format("scenario '{}': banner region outside frame", name));
    }
    if (banner->period_frames < 1) {
      throw Error(fmt::format("scenario '{}': banner period must be positive",
                              name));
    }
  }
  for (std::size_t i = 0; i < touches.size(); ++i) {
    const Touch& t = touches[i];
    auto fail = [&](std::string_view what) {
      throw Error(fmt::format("scenario '{}': touch {}: {}", name, i, what));
    };
    if (t.path.empty()) fail("empty path");
    if (t.path.front().frame != t.onset_frame) {
      fail("path must start at the onset frame");
    }
    for (std::size_t k = 1; k < t.path.size(); ++k) {
      if (t.path[k].frame <= t.path[k - 1].frame) {
        fail("path frames must be strictly increasing");
      }
    }
    if (!(t.indicator_radius_px > 0.0)) fail("indicator radius must be positive");
    if (!(t.indicator_opacity >= 0.0 && t.indicator_opacity <= 1.0)) {
      fail("indicator opacity must lie in [0, 1]");
    }
    if (t.fade_frames < 0) fail("fade frames must be non-negative");
    if (t.response_lag_frames < 1) fail("response must begin after onset");
    if (t.transition_frames < 1) fail("transition needs at least one frame");
    if (t.finish_frame() >= duration_frames) fail("transition ends after the video");
    if (t.region) {
      const BBox& r = *t.region;
      if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 || r.x + r.w > width ||
          r.y + r.h > height) {
        fail("region outside frame");
      }
    }
    if (i > 0) {
      const Touch& prev = touches[i - 1];
      if (t.onset_frame <= prev.onset_frame) {
        fail("onset frames must be strictly increasing");
      }
      if (t.onset_frame <= touch_window_end(prev)) {
        fail(fmt::format("window overlaps touch {}", i - 1));
      }
    }
  }
}

std::vector<GroundTruthRecord> ground_truth(const Scenario& sc) {
  sc.validate();
  std::vector<GroundTruthRecord> out;
  out.reserve(sc.touches.size());
  for (std::size_t i = 0; i < sc.touches.size(); ++i) {
    const Touch& t = sc.touches[i];
    const std::size_t end = i + 1 < sc.touches.size()
                                ? sc.touches[i + 1].onset_frame - 1
                                : sc.duration_frames - 1;
    out.push_back(GroundTruthRecord{t.onset_frame, t.response_frame(),
                                    t.finish_frame(), end, t.gesture});
  }
  return out;
}

Screencast generate_screencast(const Scenario& sc) {
  auto truth = ground_truth(sc);
  Renderer renderer(sc);
  std::vector<Frame> frames;
  frames.reserve(sc.duration_frames);
  GrayImage img;
  for (std::size_t f = 0; f < sc.duration_frames; ++f) {
    renderer.render(f, img);
    frames.push_back(
        Frame::Gray(f, static_cast<double>(f) * 1000.0 / sc.fps, img));
  }
  return Screencast{FrameSequence(std::move(frames), sc.fps, sc.name),
                    std::move(truth)};
}

std::vector<Scenario> canonical_corpus(bool with_noise) {
  constexpr int kWidth = 360;
  constexpr int kHeight = 640;
  constexpr double kRadius = 20.0;
  constexpr int kFade = 4;
  std::vector<Scenario> corpus;
  for (int s = 0; s < 20; ++s) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(s));
    auto uniform_int = [&](int lo, int hi) {
      return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto chance = [&](double p) {
      return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };
    Scenario sc;
    sc.name = fmt::format("scenario_{:02d}", s);
    sc.width = kWidth;
    sc.height = kHeight;
    sc.fps = 60.0;
    sc.seed = static_cast<std::uint64_t>(s);
    // Drawn unconditionally so both corpus variants share their layout.
    const int period = uniform_int(45, 90);
    if (with_noise && s % 4 == 0) {
      sc.banner =
          BannerNoise{BBox{12, kHeaderHeight + 4, kWidth - 24, 48}, period};
    }
    std::size_t cursor = static_cast<std::size_t>(uniform_int(8, 20));
    const int count = uniform_int(10, 15);
    for (int n = 0; n < count; ++n) {
      Touch t;
      t.onset_frame = cursor;
      t.indicator_radius_px = kRadius;
      t.fade_frames = kFade;
      t.gesture = chance(0.3) ? Gesture::kSwipe : Gesture::kTap;
      const bool top_half = chance(0.5);
      const double y_lo = top_half ? 150.0 : 350.0;
      const double y_hi = top_half ? 290.0 : 600.0;
      double x = uniform_int(40, kWidth - 40);
      double y = uniform_int(static_cast<int>(y_lo), static_cast<int>(y_hi));
      t.path.push_back(PathPoint{cursor, x, y});
      if (t.gesture == Gesture::kTap) {
        if (chance(0.5)) t.path.push_back(PathPoint{cursor + 1, x, y});
      } else {
        const int steps = uniform_int(6, 10);
        const double speed = uniform_int(10, 25);
        const bool horizontal = chance(0.6);
        double dx = 0.0;
        double dy = 0.0;
        if (horizontal) {
          const double span = std::min(speed * steps, kWidth - 80.0);
          x = uniform_int(40, static_cast<int>(kWidth - 40 - span));
          dx = span / steps;
          if (chance(0.5)) {
            x += span;
            dx = -dx;
          }
        } else {
          const double span = std::min(speed * steps, y_hi - y_lo);
          y = y_lo + std::uniform_real_distribution<double>(
                         0.0, y_hi - y_lo - span)(rng);
          dy = span / steps;
          if (chance(0.5)) {
            y += span;
            dy = -dy;
          }
        }
        t.path.front() = PathPoint{cursor, x, y};
        t.path.push_back(PathPoint{cursor + steps, x + dx * steps,
                                   y + dy * steps});
      }
      const int gone =
          static_cast<int>(t.indicator_gone_frame() - t.onset_frame);
      const int lag = uniform_int(1, 30);
      t.response_lag_frames = lag;
      // Transitions that repaint the whole screen wait for the indicator to
      // clear; earlier responses stay in the other half of the screen.
      if (lag < gone) {
        t.transition_kind = TransitionKind::kPartialRegion;
      } else {
        const int pick = uniform_int(0, 2);
        t.transition_kind = pick == 0   ? TransitionKind::kFullScreen
                            : pick == 1 ? TransitionKind::kFade
                                        : TransitionKind::kPartialRegion;
      }
      const double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      t.transition_frames = roll < 0.6    ? uniform_int(1, 8)
                            : roll < 0.85 ? uniform_int(9, 30)
                                          : uniform_int(31, 70);
      cursor = touch_window_end(t) + 1 + uniform_int(20, 40);
      sc.touches.push_back(std::move(t));
    }
    sc.duration_frames = cursor;
    corpus.push_back(std::move(sc));
  }
  return corpus;
}

namespace {

nlohmann::json bbox_json(const BBox& b) {
  return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

BBox bbox_from(const nlohmann::json& j) {
  return BBox{j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(),
              j.at("h").get<int>()};
}

}  // namespace

nlohmann::json to_json(const Scenario& sc) {
  nlohmann::json touches = nlohmann::json::array();
  for (const Touch& t : sc.touches) {
    nlohmann::json path = nlohmann::json::array();
    for (const PathPoint& p : t.path) {
      path.push_back({{"frame", p.frame}, {"x", p.x}, {"y", p.y}});
    }
    nlohmann::json tj{{"onset_frame", t.onset_frame},
                      {"gesture", std::string(to_string(t.gesture))},
                      {"path", std::move(path)},
                      {"indicator_radius_px", t.indicator_radius_px},
                      {"indicator_opacity", t.indicator_opacity},
                      {"fade_frames", t.fade_frames},
                      {"response_lag_frames", t.response_lag_frames},
                      {"transition_frames", t.transition_frames},
                      {"transition_kind",
                       std::string(to_string(t.transition_kind))}};
    if (t.region) tj["region"] = bbox_json(*t.region);
    touches.push_back(std::move(tj));
  }
  nlohmann::json noise{{"kind", "none"}};
  if (sc.banner) {
    noise = {{"kind", "animated_banner"},
             {"region", bbox_json(sc.banner->region)},
             {"period_frames", sc.banner->period_frames}};
  }
  return {{"name", sc.name},
          {"width", sc.width},
          {"height", sc.height},
          {"fps", sc.fps},
          {"duration_frames", sc.duration_frames},
          {"seed", sc.seed},
          {"noise", std::move(noise)},
          {"touches", std::move(touches)}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));
    sc.width = j.at("width").get<int>();
    sc.height = j.at("height").get<int>();
    sc.fps = j.at("fps").get<double>();
    sc.duration_frames = j.at("duration_frames").get<std::size_t>();
    sc.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      const std::string kind = n.at("kind").get<std::string>();
      if (kind == "animated_banner") {
        sc.banner = BannerNoise{bbox_from(n.at("region")),
                                n.at("period_frames").get<int>()};
      } else if (kind != "none") {
        throw Error(fmt::format("unknown noise kind '{}'", kind));
      }
    }
    for (const auto& tj : j.at("touches")) {
      Touch t;
      t.onset_frame = tj.at("onset_frame").get<std::size_t>();
      t.gesture = parse_gesture(tj.at("gesture").get<std::string>());
      for (const auto& pj : tj.at("path")) {
        t.path.push_back(PathPoint{pj.at("frame").get<std::size_t>(),
                                   pj.at("x").get<double>(),
                                   pj.at("y").get<double>()});
      }
      t.indicator_radius_px = tj.value("indicator_radius_px", 20.0);
      t.indicator_opacity = tj.value("indicator_opacity", 0.45);
      t.fade_frames = tj.value("fade_frames", 4);
      t.response_lag_frames = tj.at("response_lag_frames").get<int>();
      t.transition_frames = tj.at("transition_frames").get<int>();
      t.transition_kind = parse_transition_kind(
          tj.value("transition_kind", std::string("full_screen")));
      if (tj.contains("region")) t.region = bbox_from(tj.at("region"));
      sc.touches.push_back(std::move(t));
    }
    sc.validate();
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("malformed scenario: {}", e.what()));
  }
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open scenario file {}", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (j.is_array()) {
    std::vector<Scenario> out;
    for (const auto& item : j) out.push_back(scenario_from_json(item));
    return out;
  }
  if (j.is_object() && j.contains("canonical_corpus")) {
    const auto& cfg = j.at("canonical_corpus");
    return canonical_corpus(cfg.is_object() ? cfg.value("noise", true) : true);
  }
  return {scenario_from_json(j)};
}

nlohmann::json to_json(const GroundTruthRecord& r) {
  return {{"f_start", r.f_start},
          {"f_response", r.f_response},
          {"f_finish", r.f_finish},
          {"f_end", r.f_end},
          {"type", std::string(to_string(r.type))}};
}

GroundTruthRecord truth_from_json(const nlohmann::json& j) {
  GroundTruthRecord r{j.at("f_start").get<std::size_t>(),
                      j.at("f_response").get<std::size_t>(),
                      j.at("f_finish").get<std::size_t>(),
                      j.at("f_end").get<std::size_t>(),
                      parse_gesture(j.at("type").get<std::string>())};
  if (!(r.f_start < r.f_response && r.f_response <= r.f_finish &&
        r.f_finish <= r.f_end)) {
    throw Error(fmt::format("truth record with f_start {} violates ordering",
                            r.f_start));
  }
  return r;
}

void write_truth(const std::vector<GroundTruthRecord>& truth,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  for (const auto& r : truth) out << to_json(r).dump() << '\n';
  if (!out) throw Error(fmt::format("failed writing {}", path.string()));
}

std::vector<GroundTruthRecord> read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::vector<GroundTruthRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(truth_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

}  // namespace guiperf
