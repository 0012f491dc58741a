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

// Slant-range pseudo depth for RPC imagery. Each pixel's depth is the
// distance between the point where its imaging ray crosses a horizontal
// near-plane above the scene and the point where it meets the surface.

#ifndef SATDSM_PSEUDO_DEPTH_H
#define SATDSM_PSEUDO_DEPTH_H

#include "satdsm/depth_map.h"
#include "satdsm/dsm_grid.h"
#include "satdsm/geodesy.h"
#include "satdsm/rpc_model.h"

namespace satdsm {

inline constexpr double kDefaultNearPlaneMargin = 50.0;

struct NearPlane {
  double z_ref = 0.0;
  double z_max = 0.0;
  double delta = kDefaultNearPlaneMargin;
};

// z_ref = z_max + delta. Throws NonPositiveMargin for delta <= 0.
NearPlane MakeNearPlane(double z_max, double delta = kDefaultNearPlaneMargin);

struct SurfaceHit {
  GeodeticPoint point;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // last |a_{k+1} - a_k|, meters
};

struct IntersectOptions {
  double tolerance = 1e-4;  // meters
  int max_iterations = 100;
  // 0 reproduces the plain fixed point; 0.5 averages each update with the
  // previous altitude, which tames steep terrain.
  double damping = 0.0;
};

// Fixed-point ray/surface intersection: a <- DSM(Localize(c, a)) starting at
// init_alt. The returned point lies on the imaging ray at the final altitude.
// Throws RayExitsFootprint when an iterate lands outside the DSM or on a
// nodata cell.
SurfaceHit IntersectSurface(const RpcModel& model, const ImageCoord& c,
                            const DsmGrid& dsm, double init_alt,
                            const IntersectOptions& options = {});

struct PseudoDepthResult {
  double depth = 0.0;
  GeodeticPoint near_point;
  SurfaceHit hit;
};

// The fixed point starts from the middle of the DSM's valid altitude range.
// A non-converged hit is still returned, flagged by hit.converged.
PseudoDepthResult PseudoDepthAt(const RpcModel& model, const ImageCoord& c,
                                const DsmGrid& dsm, const NearPlane& plane,
                                const LocalFrame& frame,
                                const IntersectOptions& options = {});

struct PseudoDepthStats {
  std::size_t pixels = 0;
  std::size_t valid = 0;
  std::size_t not_converged = 0;
  std::size_t exited_footprint = 0;
  std::size_t localize_failures = 0;
  double valid_fraction = 0.0;
  double mean_iterations = 0.0;  // over converged pixels
  int max_iterations = 0;
};

struct PseudoDepthMap {
  DepthMap depth;
  PseudoDepthStats stats;
};

// Applies PseudoDepthAt to every pixel center. Non-converged and
// footprint-exiting pixels are masked. Throws EmptyOutput if fewer than 1%
// of the pixels are valid.
PseudoDepthMap BuildPseudoDepthMap(const RpcModel& model, const DsmGrid& dsm,
                                   const NearPlane& plane,
                                   const LocalFrame& frame, int width,
                                   int height,
                                   const IntersectOptions& options = {});

}  // namespace satdsm

#endif  // SATDSM_PSEUDO_DEPTH_H
