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

#include "satdsm/dsm_reconstruction.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "satdsm/errors.h"
#include "satdsm/parallel.h"

namespace satdsm {

GeodeticPoint BackProject(const RpcModel& model, const ImageCoord& c,
                          double depth, const NearPlane& plane,
                          const LocalFrame& frame, const AltBracket& bracket) {
  constexpr double kTolerance = 1e-4;
  constexpr int kMaxSteps = 60;
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    Throw(ErrorCode::DepthOutOfBracket, "depth must be positive");
  }
  if (!(bracket.hi > bracket.lo)) {
    Throw(ErrorCode::InvalidArgument, "empty altitude bracket");
  }
  const LocalPoint near_point =
      frame.ToLocal(Localize(model, c, plane.z_ref));
  auto excess = [&](double alt) {
    return Distance(frame.ToLocal(Localize(model, c, alt)), near_point) -
           depth;
  };

  // The distance grows as the altitude drops away from z_ref.
  double lo = bracket.lo;
  double hi = bracket.hi;
  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (std::abs(f_lo) < kTolerance) return Localize(model, c, lo);
  if (std::abs(f_hi) < kTolerance) return Localize(model, c, hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "depth " << depth << " m not reachable between altitudes "
        << bracket.lo << " and " << bracket.hi;
    Throw(ErrorCode::DepthOutOfBracket, msg.str());
  }
  double mid = 0.5 * (lo + hi);
  for (int step = 0; step < kMaxSteps; ++step) {
    mid = 0.5 * (lo + hi);
    const double f = excess(mid);
    if (std::abs(f) < kTolerance) break;
    (f > 0.0 ? lo : hi) = mid;
  }
  return Localize(model, c, mid);
}

GeoPointCloud Aggregate(std::span<const DepthMap> maps,
                        std::span<const ViewCamera> cameras,
                        const LocalFrame& frame, int stride) {
  if (maps.size() != cameras.size()) {
    Throw(ErrorCode::InvalidArgument, "one camera per depth map required");
  }
  if (stride < 1) Throw(ErrorCode::InvalidArgument, "stride must be >= 1");

  GeoPointCloud cloud;
  for (std::size_t v = 0; v < maps.size(); ++v) {
    const DepthMap& map = maps[v];
    const ViewCamera& cam = cameras[v];
    const int lines = (map.height() + stride - 1) / stride;
    const int samps = (map.width() + stride - 1) / stride;
    const std::size_t n = static_cast<std::size_t>(lines) * samps;
    std::vector<std::optional<GeodeticPoint>> points(n);
    std::vector<unsigned char> skipped(n, 0);

    ParallelFor(0, static_cast<std::size_t>(lines), [&](std::size_t li) {
      const int line = static_cast<int>(li) * stride;
      for (int si = 0; si < samps; ++si) {
        const int samp = si * stride;
        if (!map.valid(line, samp)) continue;
        try {
          points[li * samps + si] =
              BackProject(cam.model,
                          {static_cast<double>(line), static_cast<double>(samp)},
                          map.at(line, samp), cam.plane, frame, cam.bracket());
        } catch (const Error&) {
          skipped[li * samps + si] = 1;
        }
      }
    });

    for (std::size_t i = 0; i < n; ++i) {
      if (points[i]) {
        cloud.points.push_back(*points[i]);
        cloud.view_index.push_back(static_cast<int>(v));
      }
      cloud.skipped += skipped[i];
    }
  }
  return cloud;
}

double NearestRankPercentile(std::vector<double>& values, int percent) {
  if (values.empty()) {
    Throw(ErrorCode::EmptyInput, "percentile of an empty set");
  }
  if (percent < 1 || percent > 100) {
    Throw(ErrorCode::InvalidArgument, "percent must be in [1, 100]");
  }
  const std::size_t n = values.size();
  // ceil(p * n / 100) in integer arithmetic.
  const std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;
  auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

DsmGrid RasterizeP90(const GeoPointCloud& cloud, const GridSpec& grid) {
  DsmGrid dsm(grid);
  const LocalFrame& frame = dsm.frame();

  std::vector<std::pair<std::size_t, double>> binned;
  binned.reserve(cloud.points.size());
  for (const GeodeticPoint& p : cloud.points) {
    if (!std::isfinite(p.alt)) continue;
    LocalPoint q;
    try {
      q = frame.ToLocal(p);
    } catch (const Error&) {
      continue;
    }
    const auto cell = dsm.CellOf(q.east, q.north);
    if (!cell) continue;
    binned.emplace_back(
        static_cast<std::size_t>(cell->second) * grid.cols + cell->first,
        p.alt);
  }
  std::sort(binned.begin(), binned.end());

  std::vector<double> heights;
  for (std::size_t i = 0; i < binned.size();) {
    std::size_t j = i;
    heights.clear();
    while (j < binned.size() && binned[j].first == binned[i].first) {
      heights.push_back(binned[j].second);
      ++j;
    }
    const std::size_t cell = binned[i].first;
    dsm.set(static_cast<int>(cell % grid.cols),
            static_cast<int>(cell / grid.cols),
            NearestRankPercentile(heights, 90));
    i = j;
  }
  return dsm;
}

DsmGrid FillHoles(const DsmGrid& dsm, int max_radius) {
  if (max_radius < 1) Throw(ErrorCode::InvalidArgument, "radius must be >= 1");
  DsmGrid out = dsm;
  std::vector<double> neighbors;
  for (int row = 0; row < dsm.rows(); ++row) {
    for (int col = 0; col < dsm.cols(); ++col) {
      if (dsm.valid(col, row)) continue;
      neighbors.clear();
      for (int dr = -max_radius; dr <= max_radius; ++dr) {
        for (int dc = -max_radius; dc <= max_radius; ++dc) {
          const int r = row + dr;
          const int c = col + dc;
          if (r < 0 || r >= dsm.rows() || c < 0 || c >= dsm.cols()) continue;
          if (dsm.valid(c, r)) neighbors.push_back(dsm.at(c, r));
        }
      }
      if (neighbors.size() < 3) continue;
      std::sort(neighbors.begin(), neighbors.end());
      out.set(col, row, neighbors[(neighbors.size() - 1) / 2]);
    }
  }
  return out;
}

}  // namespace satdsm
