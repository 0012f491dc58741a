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

#ifndef SATDSM_DEPTH_MAP_H
#define SATDSM_DEPTH_MAP_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace satdsm {

// Per-view raster of slant-range depths in meters. Pixel (line, samp) sits at
// row line, column samp; invalid pixels are excluded from every statistic.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, std::string view_id = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::string& view_id() const { return view_id_; }
  void set_view_id(std::string id) { view_id_ = std::move(id); }

  bool valid(int line, int samp) const { return valid_[Index(line, samp)]; }
  double at(int line, int samp) const { return values_[Index(line, samp)]; }

  // Non-finite or non-positive values are stored as invalid.
  void Set(int line, int samp, double depth);
  void Invalidate(int line, int samp);

  bool Contains(int line, int samp) const {
    return line >= 0 && line < height_ && samp >= 0 && samp < width_;
  }

  std::size_t ValidCount() const;
  double ValidFraction() const;

  bool operator==(const DepthMap& other) const = default;

 private:
  std::size_t Index(int line, int samp) const {
    return static_cast<std::size_t>(line) * width_ + samp;
  }

  int width_ = 0;
  int height_ = 0;
  std::string view_id_;
  std::vector<double> values_;
  std::vector<std::uint8_t> valid_;
};

// Single-channel PFM: "Pf", "<width> <height>", a scale whose sign gives the
// byte order (negative = little endian), then float32 rows bottom to top.
// Invalid pixels are written as NaN. Values are rounded to float32.
std::string EncodePfm(const DepthMap& map);
DepthMap DecodePfm(std::string_view bytes, std::string view_id = {});

void SavePfm(const DepthMap& map, const std::filesystem::path& path);
DepthMap LoadPfm(const std::filesystem::path& path, std::string view_id = {});

}  // namespace satdsm

#endif  // SATDSM_DEPTH_MAP_H
