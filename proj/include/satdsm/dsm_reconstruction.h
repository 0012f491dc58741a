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

// Depth back-projection along RPC rays, multi-view point aggregation, and
// percentile rasterization into a DSM.

#ifndef SATDSM_DSM_RECONSTRUCTION_H
#define SATDSM_DSM_RECONSTRUCTION_H

#include <span>
#include <string>
#include <vector>

#include "satdsm/depth_map.h"
#include "satdsm/dsm_grid.h"
#include "satdsm/geodesy.h"
#include "satdsm/pseudo_depth.h"
#include "satdsm/rpc_model.h"

namespace satdsm {

struct AltBracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Everything needed to turn one view's depths into 3D points.
struct ViewCamera {
  std::string view_id;
  RpcModel model;
  NearPlane plane;
  double alt_min = 0.0;  // lower end of the back-projection bracket

  AltBracket bracket() const { return {alt_min, plane.z_ref}; }
};

// Point on the ray a -> Localize(c, a) whose distance to the ray's z_ref
// point equals depth. Bisection on altitude over the bracket, stopping once
// the distance matches to 1e-4 m or after 60 steps. Throws DepthOutOfBracket
// if depth is not reachable inside the bracket.
GeodeticPoint BackProject(const RpcModel& model, const ImageCoord& c,
                          double depth, const NearPlane& plane,
                          const LocalFrame& frame, const AltBracket& bracket);

struct GeoPointCloud {
  std::vector<GeodeticPoint> points;
  std::vector<int> view_index;
  std::size_t skipped = 0;  // pixels whose depth fell outside the bracket

  std::size_t size() const { return points.size(); }
};

// Back-projects every valid pixel on a stride x stride lattice starting at
// (0, 0). Points are ordered by view, then line, then samp.
GeoPointCloud Aggregate(std::span<const DepthMap> maps,
                        std::span<const ViewCamera> cameras,
                        const LocalFrame& frame, int stride = 1);

// Nearest-rank percentile: the element at 1-based rank ceil(p * n / 100) of
// the ascending order. Reorders values. Requires a non-empty input.
double NearestRankPercentile(std::vector<double>& values, int percent);

// Bins points into the grid cell containing their (east, north) and keeps
// the nearest-rank 90th percentile altitude per cell; empty cells are nodata.
// Independent of point order.
DsmGrid RasterizeP90(const GeoPointCloud& cloud, const GridSpec& grid);

// One pass of hole filling: every nodata cell with at least 3 valid cells in
// its (2r+1)^2 Chebyshev neighborhood takes their median (lower middle for
// even counts). Neighborhoods are read from the input grid only.
DsmGrid FillHoles(const DsmGrid& dsm, int max_radius = 2);

}  // namespace satdsm

#endif  // SATDSM_DSM_RECONSTRUCTION_H
