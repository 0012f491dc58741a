// __BEGIN_LICENSE__
//  Copyright (c) 2026, The satdsm Authors. All rights reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License"); you may
//  not use this file except in compliance with the License. You may obtain a
//  copy of the License at
//  http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
// __END_LICENSE__

#include "satdsm/depth_map.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>

#include "satdsm/errors.h"
#include "satdsm/text_util.h"

namespace satdsm {
namespace {

std::uint32_t ByteSwap(std::uint32_t v) {
  return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) |
         (v >> 24);
}

constexpr bool kHostLittleEndian = std::endian::native == std::endian::little;

}  // namespace

DepthMap::DepthMap(int width, int height, std::string view_id)
    : width_(width), height_(height), view_id_(std::move(view_id)) {
  if (width < 0 || height < 0) {
    Throw(ErrorCode::InvalidArgument, "negative depth map dimensions");
  }
  values_.assign(static_cast<std::size_t>(width) * height, 0.0);
  valid_.assign(values_.size(), 0);
}

void DepthMap::Set(int line, int samp, double depth) {
  const std::size_t i = Index(line, samp);
  if (std::isfinite(depth) && depth > 0.0) {
    values_[i] = depth;
    valid_[i] = 1;
  } else {
    values_[i] = 0.0;
    valid_[i] = 0;
  }
}

void DepthMap::Invalidate(int line, int samp) {
  const std::size_t i = Index(line, samp);
  values_[i] = 0.0;
  valid_[i] = 0;
}

std::size_t DepthMap::ValidCount() const {
  return static_cast<std::size_t>(
      std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

double DepthMap::ValidFraction() const {
  if (values_.empty()) return 0.0;
  return static_cast<double>(ValidCount()) / values_.size();
}

std::string EncodePfm(const DepthMap& map) {
  std::string out = "Pf\n" + std::to_string(map.width()) + " " +
                    std::to_string(map.height()) + "\n" +
                    (kHostLittleEndian ? "-1.0\n" : "1.0\n");
  const std::size_t header = out.size();
  out.resize(header + sizeof(float) * map.width() * map.height());
  char* dst = out.data() + header;
  for (int line = map.height() - 1; line >= 0; --line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      const float v = map.valid(line, samp)
                          ? static_cast<float>(map.at(line, samp))
                          : std::numeric_limits<float>::quiet_NaN();
      std::memcpy(dst, &v, sizeof(float));
      dst += sizeof(float);
    }
  }
  return out;
}

DepthMap DecodePfm(std::string_view bytes, std::string view_id) {
  // Header tokens: magic, width, height, scale.
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string_view {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(
                                     bytes[pos]))) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    }
    return bytes.substr(start, pos - start);
  };
  if (next_token() != "Pf") {
    Throw(ErrorCode::MalformedFile, "not a single-channel PFM (expected Pf)");
  }
  const auto width = ParseInt(next_token());
  const auto height = ParseInt(next_token());
  const auto scale = ParseDouble(next_token());
  if (!width || !height || !scale || *width < 0 || *height < 0 ||
      *scale == 0.0) {
    Throw(ErrorCode::MalformedFile, "bad PFM header");
  }
  // Exactly one whitespace byte separates the scale from the raster.
  ++pos;
  const std::size_t count = static_cast<std::size_t>(*width) * *height;
  if (bytes.size() < pos + count * sizeof(float)) {
    Throw(ErrorCode::MalformedFile, "PFM raster truncated");
  }
  const bool file_little = *scale < 0.0;
  const bool swap = file_little != kHostLittleEndian;

  DepthMap map(static_cast<int>(*width), static_cast<int>(*height),
               std::move(view_id));
  const char* src = bytes.data() + pos;
  for (int line = map.height() - 1; line >= 0; --line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      std::uint32_t raw;
      std::memcpy(&raw, src, sizeof(raw));
      src += sizeof(raw);
      if (swap) raw = ByteSwap(raw);
      float v;
      std::memcpy(&v, &raw, sizeof(v));
      map.Set(line, samp, static_cast<double>(v));
    }
  }
  return map;
}

void SavePfm(const DepthMap& map, const std::filesystem::path& path) {
  WriteTextFile(path, EncodePfm(map));
}

DepthMap LoadPfm(const std::filesystem::path& path, std::string view_id) {
  try {
    return DecodePfm(ReadTextFile(path), std::move(view_id));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace satdsm
