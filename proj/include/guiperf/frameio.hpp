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

#ifndef GUIPERF_FRAMEIO_HPP_
#define GUIPERF_FRAMEIO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "guiperf/frame.hpp"

namespace guiperf {

// Frame manifest: JSON lines. Line 1 is the header
//   {"nominal_fps": 60, "width": 360, "height": 640}
// and every further line is one frame
//   {"index": 0, "pts_ms": 0.0, "image": "frames/000000.png"}
// with image paths relative to the manifest's directory.
//
// source_id is the manifest's parent directory name, or the file stem when
// the manifest is not called manifest.jsonl.
FrameSequence load_manifest(const std::filesystem::path& path);

// The source_id that load_manifest or read_y4m will assign to `path`.
std::string source_id_for_path(const std::filesystem::path& path);

// Writes PNGs into `dir`/frames and `dir`/manifest.jsonl. Returns the
// manifest path.
std::filesystem::path write_manifest(const FrameSequence& seq,
                                     const std::filesystem::path& dir);

// YUV4MPEG2, 4:2:0 (any siting) or mono. Frames are converted to RGB with
// full-range BT.601 and stamped pts_ms = i * 1000 * den / num. `fps_hint`
// substitutes for a missing F parameter.
FrameSequence parse_y4m(std::istream& in, std::string source_id = "y4m",
                        std::optional<double> fps_hint = std::nullopt);
FrameSequence read_y4m(const std::filesystem::path& path,
                       std::optional<double> fps_hint = std::nullopt);

enum class Y4mChroma { kMono, k420 };

// Luma comes from to_grayscale; 4:2:0 output carries neutral chroma.
void write_y4m(const FrameSequence& seq, std::ostream& out,
               Y4mChroma chroma = Y4mChroma::k420);

Frame read_png(const std::filesystem::path& path, std::size_t index = 0,
               double pts_ms = 0.0);
void write_png(const Frame& frame, const std::filesystem::path& path);

}  // namespace guiperf

#endif  // GUIPERF_FRAMEIO_HPP_
