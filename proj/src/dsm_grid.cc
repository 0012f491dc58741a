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

#include "satdsm/dsm_grid.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "satdsm/errors.h"
#include "satdsm/text_util.h"

namespace satdsm {

void GridSpec::Validate() const {
  if (cols <= 0 || rows <= 0) {
    Throw(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    Throw(ErrorCode::InvalidArgument, "grid cell size must be positive");
  }
}

bool GridSpec::Matches(const GridSpec& o) const {
  return cols == o.cols && rows == o.rows &&
         std::abs(origin_lon - o.origin_lon) <= 1e-9 &&
         std::abs(origin_lat - o.origin_lat) <= 1e-9 &&
         std::abs(cell_size - o.cell_size) <= 1e-9;
}

DsmGrid::DsmGrid(const GridSpec& spec, double fill)
    : spec_(spec), frame_(spec.frame()) {
  spec_.Validate();
  heights_.assign(static_cast<std::size_t>(spec.cols) * spec.rows, fill);
}

std::size_t DsmGrid::ValidCount() const {
  return static_cast<std::size_t>(std::count_if(
      heights_.begin(), heights_.end(), [](double h) { return h != kNoData; }));
}

std::optional<std::pair<double, double>> DsmGrid::ValidRange() const {
  std::optional<std::pair<double, double>> range;
  for (double h : heights_) {
    if (h == kNoData) continue;
    if (!range) {
      range.emplace(h, h);
    } else {
      range->first = std::min(range->first, h);
      range->second = std::max(range->second, h);
    }
  }
  return range;
}

std::optional<double> DsmGrid::SampleLocal(double east, double north) const {
  if (spec_.cols < 2 || spec_.rows < 2) return std::nullopt;
  constexpr double kEdgeSlack = 1e-6;  // cells
  double fc = east / spec_.cell_size;
  double fr = north / spec_.cell_size;
  if (!(fc >= -kEdgeSlack && fc <= spec_.cols - 1 + kEdgeSlack &&
        fr >= -kEdgeSlack && fr <= spec_.rows - 1 + kEdgeSlack)) {
    return std::nullopt;
  }
  fc = std::clamp(fc, 0.0, spec_.cols - 1.0);
  fr = std::clamp(fr, 0.0, spec_.rows - 1.0);
  const int c0 = std::min(static_cast<int>(fc), spec_.cols - 2);
  const int r0 = std::min(static_cast<int>(fr), spec_.rows - 2);
  const double tc = fc - c0;
  const double tr = fr - r0;
  const double h00 = at(c0, r0);
  const double h10 = at(c0 + 1, r0);
  const double h01 = at(c0, r0 + 1);
  const double h11 = at(c0 + 1, r0 + 1);
  if (h00 == kNoData || h10 == kNoData || h01 == kNoData || h11 == kNoData) {
    return std::nullopt;
  }
  const double south = (1.0 - tc) * h00 + tc * h10;
  const double north_row = (1.0 - tc) * h01 + tc * h11;
  return (1.0 - tr) * south + tr * north_row;
}

std::optional<double> DsmGrid::Sample(double lon, double lat) const {
  const double east = (lon - frame_.origin_lon()) * frame_.meters_per_deg_lon();
  const double north = (lat - frame_.origin_lat()) * frame_.meters_per_deg_lat();
  return SampleLocal(east, north);
}

std::optional<std::pair<int, int>> DsmGrid::CellOf(double east,
                                                   double north) const {
  const double fc = std::floor(east / spec_.cell_size + 0.5);
  const double fr = std::floor(north / spec_.cell_size + 0.5);
  if (!(fc >= 0.0 && fc < spec_.cols && fr >= 0.0 && fr < spec_.rows)) {
    return std::nullopt;
  }
  return std::make_pair(static_cast<int>(fc), static_cast<int>(fr));
}

std::string SerializeDsmAscii(const DsmGrid& grid) {
  const GridSpec& s = grid.spec();
  std::string out;
  out.reserve(static_cast<std::size_t>(s.cols) * s.rows * 12 + 256);
  out += "ncols " + std::to_string(s.cols) + "\n";
  out += "nrows " + std::to_string(s.rows) + "\n";
  out += "origin_lon " + FormatDouble17(s.origin_lon) + "\n";
  out += "origin_lat " + FormatDouble17(s.origin_lat) + "\n";
  out += "cellsize_m " + FormatDouble17(s.cell_size) + "\n";
  out += "nodata_value -9999.0\n";
  out += "\n";
  for (int row = s.rows - 1; row >= 0; --row) {
    for (int col = 0; col < s.cols; ++col) {
      if (col > 0) out += ' ';
      out += FormatDouble17(grid.at(col, row));
    }
    out += '\n';
  }
  return out;
}

DsmGrid ParseDsmAscii(std::string_view text) {
  std::istringstream in{std::string(text)};
  GridSpec spec;
  double nodata = DsmGrid::kNoData;
  const char* keys[] = {"ncols",      "nrows",      "origin_lon",
                        "origin_lat", "cellsize_m", "nodata_value"};
  for (const char* expected : keys) {
    std::string key, value;
    if (!(in >> key >> value) || key != expected) {
      Throw(ErrorCode::MalformedFile,
            std::string("DSM header: expected '") + expected + "'");
    }
    const auto number = ParseDouble(value);
    if (!number) {
      Throw(ErrorCode::MalformedNumber, "DSM header " + key + ": " + value);
    }
    if (key == "ncols") spec.cols = static_cast<int>(*number);
    if (key == "nrows") spec.rows = static_cast<int>(*number);
    if (key == "origin_lon") spec.origin_lon = *number;
    if (key == "origin_lat") spec.origin_lat = *number;
    if (key == "cellsize_m") spec.cell_size = *number;
    if (key == "nodata_value") nodata = *number;
  }
  DsmGrid grid(spec);
  std::string token;
  for (int row = spec.rows - 1; row >= 0; --row) {
    for (int col = 0; col < spec.cols; ++col) {
      if (!(in >> token)) {
        Throw(ErrorCode::MalformedFile, "DSM data truncated");
      }
      const auto v = ParseDouble(token);
      if (!v || !std::isfinite(*v)) {
        Throw(ErrorCode::MalformedNumber, "DSM value '" + token + "'");
      }
      grid.set(col, row, *v == nodata ? DsmGrid::kNoData : *v);
    }
  }
  if (in >> token) Throw(ErrorCode::MalformedFile, "trailing DSM data");
  return grid;
}

DsmGrid LoadDsm(const std::filesystem::path& path) {
  try {
    return ParseDsmAscii(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void SaveDsm(const DsmGrid& grid, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeDsmAscii(grid));
}

}  // namespace satdsm
