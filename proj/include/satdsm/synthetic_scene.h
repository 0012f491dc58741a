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

// Procedural ground truth: seeded DSMs, analytically exact affine RPC
// cameras, RPCs fitted to perspective cameras, and a brute-force ray-march
// depth renderer that serves as the reference for pseudo-depth construction.

#ifndef SATDSM_SYNTHETIC_SCENE_H
#define SATDSM_SYNTHETIC_SCENE_H

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "satdsm/depth_map.h"
#include "satdsm/dsm_grid.h"
#include "satdsm/geodesy.h"
#include "satdsm/rpc_model.h"

namespace satdsm {

enum class TerrainMode { kFlat, kSinusoidal };

struct SyntheticSceneSpec {
  int cols = 256;
  int rows = 256;
  double cell_size = 0.5;
  double ground_alt = 20.0;
  int building_count = 0;
  double building_height_min = 3.0;
  double building_height_max = 10.0;
  double building_size_min = 6.0;   // footprint side, meters
  double building_size_max = 16.0;
  TerrainMode terrain = TerrainMode::kFlat;
  double amplitude = 5.0;           // sinusoidal only
  double period = 100.0;            // sinusoidal only
  std::uint64_t seed = 0;
  double origin_lon = -81.7;        // south-west cell center
  double origin_lat = 30.3;

  void Validate() const;
  GridSpec grid() const;
  // Local coordinates of the grid's central point.
  LocalPoint Center() const;
};

// Terrain base plus flat-roofed axis-aligned boxes. Deterministic in seed.
DsmGrid MakeDsm(const SyntheticSceneSpec& spec);

struct SyntheticView {
  double off_nadir_deg = 0.0;
  // Direction, counter-clockwise from east, in which raised points are
  // displaced on the ground plane (away from the sensor).
  double azimuth_deg = 0.0;
  double gsd = 0.5;  // meters per pixel
  int width = 256;
  int height = 256;
  // Ground point imaged at the image center, in the frame's local coordinates.
  LocalPoint center;

  void Validate() const;
};

// Closed-form affine pushbroom projection of a local point:
//   samp = (w-1)/2 + [(e - ce) + (u - cu) tan(theta) cos(az)] / gsd
//   line = (h-1)/2 - [(n - cn) + (u - cu) tan(theta) sin(az)] / gsd
ImageCoord AffineProject(const SyntheticView& view, const LocalPoint& p);

// Exact RPC representation of AffineProject in the given frame: unit
// denominators, numerators with constant and linear terms only. The
// normalization covers the view footprint over alt_bounds.
RpcModel MakeAffineRpc(const SyntheticView& view, const LocalFrame& frame,
                       std::pair<double, double> alt_bounds);

// Pinhole camera placed standoff meters from view.center along the viewing
// direction, focal length chosen so the ground sample at the center is
// view.gsd. k1 adds radial distortion on normalized image coordinates.
using GroundToImage = std::function<ImageCoord(const GeodeticPoint&)>;
GroundToImage MakePerspectiveCamera(const SyntheticView& view,
                                    const LocalFrame& frame, double standoff,
                                    double k1 = 0.0);

struct RpcFitResult {
  RpcModel model;
  double max_residual_px = 0.0;
  double rms_residual_px = 0.0;
};

// Least-squares RPC fit of an arbitrary ground-to-image mapping over a
// grid x grid x layers lattice of the normalized cube. Only offsets and
// scales of `normalization` are used.
RpcFitResult FitRpc(const GroundToImage& camera, const RpcModel& normalization,
                    int grid = 13, int layers = 7);

// Affine normalization for `view` followed by a fit to its perspective
// counterpart.
RpcFitResult MakeFittedRpc(const SyntheticView& view, const LocalFrame& frame,
                           std::pair<double, double> alt_bounds,
                           double standoff, double k1 = 0.0);

struct RenderedView {
  DepthMap depth;
  std::vector<double> hit_alt;  // row-major, NaN where invalid
};

// Reference slant-range depth by exhaustive descent along each pixel's ray:
// altitude is stepped downward by march_step from the DSM maximum, the first
// sign change of (ray altitude - DSM altitude) is bisected to 1e-4 m, and the
// depth is the local-frame distance from the ray's z_ref point. Ray positions
// between 1 m knots are linearly interpolated while searching for the sign
// change; refinement uses the exact RPC ray. Rays leaving the DSM before the
// crossing are invalid.
RenderedView RenderView(const RpcModel& model, const DsmGrid& dsm,
                        const LocalFrame& frame, double z_ref, int width,
                        int height, double march_step = 0.01);

DepthMap RenderDepth(const RpcModel& model, const DsmGrid& dsm,
                     const LocalFrame& frame, double z_ref, int width,
                     int height);

// Stand-in for a depth predictor with a bounded output range: every valid
// depth is limited to max_depth.
DepthMap SaturateDepths(const DepthMap& map, double max_depth);

}  // namespace satdsm

#endif  // SATDSM_SYNTHETIC_SCENE_H
