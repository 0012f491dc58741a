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

// Geo-referenced height raster used both for ground truth and for
// reconstructed surfaces, plus its ASCII interchange format.

#ifndef SATDSM_DSM_GRID_H
#define SATDSM_DSM_GRID_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satdsm/geodesy.h"

namespace satdsm {

// Grid axes run along local east/north. (origin_lon, origin_lat) is the
// center of the south-west cell, which is also the origin of the grid's
// LocalFrame, so cell (col, row) has its center at (col, row) * cell_size.
struct GridSpec {
  int cols = 0;
  int rows = 0;
  double origin_lon = 0.0;
  double origin_lat = 0.0;
  double cell_size = 1.0;  // meters

  LocalFrame frame() const { return LocalFrame(origin_lon, origin_lat); }
  void Validate() const;
  // Equal dims, origin within 1e-9 deg, cell size within 1e-9.
  bool Matches(const GridSpec& other) const;
  bool operator==(const GridSpec& other) const = default;
};

class DsmGrid {
 public:
  static constexpr double kNoData = -9999.0;

  DsmGrid() = default;
  explicit DsmGrid(const GridSpec& spec, double fill = kNoData);

  const GridSpec& spec() const { return spec_; }
  const LocalFrame& frame() const { return frame_; }
  int cols() const { return spec_.cols; }
  int rows() const { return spec_.rows; }
  double cell_size() const { return spec_.cell_size; }

  // row 0 is the southern-most row.
  double at(int col, int row) const { return heights_[Index(col, row)]; }
  void set(int col, int row, double h) { heights_[Index(col, row)] = h; }
  bool valid(int col, int row) const { return at(col, row) != kNoData; }

  const std::vector<double>& heights() const { return heights_; }

  std::size_t ValidCount() const;
  // (min, max) over valid cells; nullopt when every cell is nodata.
  std::optional<std::pair<double, double>> ValidRange() const;

  // Bilinear interpolation between cell centers. Returns nullopt outside the
  // hull of cell centers or when any of the four corners is nodata.
  std::optional<double> SampleLocal(double east, double north) const;
  std::optional<double> Sample(double lon, double lat) const;

  // Cell whose square contains (east, north), if inside the grid.
  std::optional<std::pair<int, int>> CellOf(double east, double north) const;

  bool operator==(const DsmGrid& other) const {
    return spec_ == other.spec_ && heights_ == other.heights_;
  }

 private:
  std::size_t Index(int col, int row) const {
    return static_cast<std::size_t>(row) * spec_.cols + col;
  }

  GridSpec spec_;
  LocalFrame frame_;
  std::vector<double> heights_;
};

// ASCII layout: six `key value` header lines (ncols, nrows, origin_lon,
// origin_lat, cellsize_m, nodata_value), a blank line, then rows from north
// to south with space separated values written with 17 significant digits.
std::string SerializeDsmAscii(const DsmGrid& grid);
DsmGrid ParseDsmAscii(std::string_view text);

DsmGrid LoadDsm(const std::filesystem::path& path);
void SaveDsm(const DsmGrid& grid, const std::filesystem::path& path);

}  // namespace satdsm

#endif  // SATDSM_DSM_GRID_H
