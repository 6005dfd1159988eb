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

#include "guiperf/frameio.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "guiperf/error.hpp"

namespace guiperf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint8_t clamp_byte(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

template <typename T>
T required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(fmt::format("{}: missing field \"{}\"", where, key));
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(fmt::format("{}: field \"{}\" has the wrong type", where, key));
  }
}

std::string manifest_source_id(const fs::path& path) {
  if (path.filename() == "manifest.jsonl") {
    const fs::path parent = fs::absolute(path).parent_path();
    if (!parent.filename().empty()) return parent.filename().string();
  }
  return path.stem().string();
}

struct Y4mHeader {
  int width = 0;
  int height = 0;
  long rate_num = 0;
  long rate_den = 0;
  bool mono = false;
};

Y4mHeader parse_y4m_header(const std::string& line) {
  std::istringstream tokens(line);
  std::string magic;
  tokens >> magic;
  if (magic != "YUV4MPEG2") throw Error("malformed Y4M header: bad magic");
  Y4mHeader h;
  std::string tok;
  while (tokens >> tok) {
    const char tag = tok[0];
    const std::string value = tok.substr(1);
    try {
      switch (tag) {
        case 'W':
          h.width = std::stoi(value);
          break;
        case 'H':
          h.height = std::stoi(value);
          break;
        case 'F': {
          const auto colon = value.find(':');
          if (colon == std::string::npos) {
            throw Error("malformed Y4M header: frame rate " + value);
          }
          h.rate_num = std::stol(value.substr(0, colon));
          h.rate_den = std::stol(value.substr(colon + 1));
          break;
        }
        case 'C':
          if (value == "mono") {
            h.mono = true;
          } else if (value.rfind("420", 0) == 0 &&
                     value.find("p1") == std::string::npos) {
            h.mono = false;
          } else {
            throw Error("unsupported Y4M colorspace C" + value);
          }
          break;
        default:
          break;  // I, A, X: not needed
      }
    } catch (const std::logic_error&) {
      throw Error("malformed Y4M header parameter " + tok);
    }
  }
  if (h.width < 1 || h.height < 1) {
    throw Error("malformed Y4M header: missing or invalid W/H");
  }
  return h;
}

}  // namespace

FrameSequence load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open manifest {}", path.string()));
  const fs::path base = path.parent_path();

  std::string line;
  if (!std::getline(in, line)) {
    throw Error(fmt::format("manifest {} is empty", path.string()));
  }
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(fmt::format("manifest header: {}", e.what()));
  }
  const double fps = required<double>(header, "nominal_fps", "manifest header");
  const int width = required<int>(header, "width", "manifest header");
  const int height = required<int>(header, "height", "manifest header");

  std::vector<Frame> frames;
  std::size_t entry = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = fmt::format("manifest entry {}", entry);
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(fmt::format("{}: {}", where, e.what()));
    }
    const auto index = required<long>(row, "index", where);
    const double pts = required<double>(row, "pts_ms", where);
    const auto image = required<std::string>(row, "image", where);
    if (index != static_cast<long>(entry)) {
      throw Error(fmt::format("index mismatch at entry {}", entry));
    }
    if (!frames.empty() && !(pts > frames.back().pts_ms)) {
      throw Error(fmt::format("non-monotonic timestamp at entry {}", entry));
    }
    Frame f;
    try {
      f = read_png(base / image, entry, pts);
    } catch (const Error& e) {
      throw Error(fmt::format("{}: {}", where, e.what()));
    }
    if (f.width != width || f.height != height ||
        (!frames.empty() && f.colorspace != frames.front().colorspace)) {
      throw Error(fmt::format("dimension mismatch at entry {}", entry));
    }
    frames.push_back(std::move(f));
    ++entry;
  }
  if (frames.empty()) {
    throw Error(fmt::format("manifest {} lists no frames", path.string()));
  }
  return FrameSequence(std::move(frames), fps, manifest_source_id(path));
}

fs::path write_manifest(const FrameSequence& seq, const fs::path& dir) {
  fs::create_directories(dir / "frames");
  const fs::path manifest = dir / "manifest.jsonl";
  std::ofstream out(manifest);
  if (!out) throw Error(fmt::format("cannot write {}", manifest.string()));
  out << json{{"nominal_fps", seq.nominal_fps()},
              {"width", seq.width()},
              {"height", seq.height()}}
             .dump()
      << '\n';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::string rel = fmt::format("frames/{:06d}.png", i);
    write_png(seq[i], dir / rel);
    out << json{{"index", i}, {"pts_ms", seq[i].pts_ms}, {"image", rel}}.dump()
        << '\n';
  }
  if (!out) throw Error(fmt::format("write failed for {}", manifest.string()));
  return manifest;
}

std::string source_id_for_path(const fs::path& path) {
  if (path.extension() == ".y4m") return path.stem().string();
  return manifest_source_id(path);
}

FrameSequence parse_y4m(std::istream& in, std::string source_id,
                        std::optional<double> fps_hint) {
  std::string line;
  if (!std::getline(in, line)) throw Error("malformed Y4M header: empty stream");
  const Y4mHeader h = parse_y4m_header(line);

  long num = h.rate_num;
  long den = h.rate_den;
  if (num <= 0 || den <= 0) {
    if (!fps_hint || !(*fps_hint > 0.0)) {
      throw Error("malformed Y4M header: missing frame rate");
    }
    // Express the hint as a rational with millisecond-friendly precision.
    num = std::lround(*fps_hint * 1000.0);
    den = 1000;
  }
  const double fps = static_cast<double>(num) / static_cast<double>(den);

  const std::size_t luma_size = static_cast<std::size_t>(h.width) * h.height;
  const int cw = (h.width + 1) / 2;
  const int ch = (h.height + 1) / 2;
  const std::size_t chroma_size =
      h.mono ? 0 : static_cast<std::size_t>(cw) * ch;
  std::vector<std::uint8_t> payload(luma_size + 2 * chroma_size);

  std::vector<Frame> frames;
  while (std::getline(in, line)) {
    if (line.rfind("FRAME", 0) != 0) {
      throw Error(fmt::format("malformed frame header at frame {}",
                              frames.size()));
    }
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
      throw Error(fmt::format("truncated frame payload at frame {}",
                              frames.size()));
    }
    const std::uint8_t* yp = payload.data();
    const std::uint8_t* up = yp + luma_size;
    const std::uint8_t* vp = up + chroma_size;
    Raster rgb(h.height, 3 * h.width);
    for (int y = 0; y < h.height; ++y) {
      std::uint8_t* dst = rgb.row(y).data();
      for (int x = 0; x < h.width; ++x) {
        const double luma = yp[static_cast<std::size_t>(y) * h.width + x];
        if (h.mono) {
          dst[3 * x] = dst[3 * x + 1] = dst[3 * x + 2] =
              static_cast<std::uint8_t>(luma);
          continue;
        }
        const std::size_t c = static_cast<std::size_t>(y / 2) * cw + x / 2;
        const double cb = up[c] - 128.0;
        const double cr = vp[c] - 128.0;
        dst[3 * x] = clamp_byte(luma + 1.402 * cr);
        dst[3 * x + 1] = clamp_byte(luma - 0.344136 * cb - 0.714136 * cr);
        dst[3 * x + 2] = clamp_byte(luma + 1.772 * cb);
      }
    }
    const std::size_t i = frames.size();
    const double pts = static_cast<double>(i) * 1000.0 *
                       static_cast<double>(den) / static_cast<double>(num);
    frames.push_back(Frame::Rgb(i, pts, h.width, h.height, std::move(rgb)));
  }
  if (frames.empty()) throw Error("Y4M stream contains no frames");
  return FrameSequence(std::move(frames), fps, std::move(source_id));
}

FrameSequence read_y4m(const fs::path& path, std::optional<double> fps_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  return parse_y4m(in, path.stem().string(), fps_hint);
}

void write_y4m(const FrameSequence& seq, std::ostream& out, Y4mChroma chroma) {
  long num = 0;
  long den = 1;
  for (long d : {1L, 1001L, 1000L, 1000000L}) {
    den = d;
    num = std::lround(seq.nominal_fps() * static_cast<double>(d));
    if (std::abs(static_cast<double>(num) / d - seq.nominal_fps()) < 1e-9) break;
  }
  out << "YUV4MPEG2 W" << seq.width() << " H" << seq.height() << " F" << num
      << ':' << den << " Ip A1:1 "
      << (chroma == Y4mChroma::kMono ? "Cmono" : "C420jpeg") << '\n';
  const std::size_t chroma_size =
      chroma == Y4mChroma::kMono
          ? 0
          : static_cast<std::size_t>((seq.width() + 1) / 2) *
                ((seq.height() + 1) / 2);
  const std::vector<char> neutral(2 * chroma_size, static_cast<char>(128));
  GrayImage scratch;
  for (const Frame& f : seq.frames()) {
    const GrayImage& y = gray_plane(f, scratch);
    out << "FRAME\n";
    out.write(reinterpret_cast<const char*>(y.data()),
              static_cast<std::streamsize>(y.size()));
    out.write(neutral.data(), static_cast<std::streamsize>(neutral.size()));
  }
  if (!out) throw Error("Y4M write failed");
}

Frame read_png(const fs::path& path, std::size_t index, double pts_ms) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(fmt::format("cannot read PNG {}: {}", path.string(),
                            image.message));
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  Raster pixels(height, width * (color ? 3 : 1));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(fmt::format("cannot decode PNG {}: {}", path.string(),
                            image.message));
  }
  if (color) return Frame::Rgb(index, pts_ms, width, height, std::move(pixels));
  return Frame::Gray(index, pts_ms, std::move(pixels));
}

void write_png(const Frame& frame, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width);
  image.height = static_cast<png_uint_32>(frame.height);
  image.format = frame.colorspace == Colorspace::kRgb ? PNG_FORMAT_RGB
                                                      : PNG_FORMAT_GRAY;
  image.flags = PNG_IMAGE_FLAG_FAST;
  if (!png_image_write_to_file(&image, path.c_str(), 0, frame.pixels.data(), 0,
                               nullptr)) {
    throw Error(fmt::format("cannot write PNG {}: {}", path.string(),
                            image.message));
  }
}

}  // namespace guiperf
