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

// Multi-view depth fusion: max-depth clamp, cross-view scale/shift
// alignment, and geometric consistency filtering with median fusion.

#ifndef SATDSM_DEPTH_FUSION_H
#define SATDSM_DEPTH_FUSION_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satdsm/depth_map.h"
#include "satdsm/dsm_reconstruction.h"
#include "satdsm/geodesy.h"

namespace satdsm {

inline constexpr double kDefaultMaxDepth = 150.0;

enum class AlignmentMode { kNone, kScale, kScaleShift };

std::string_view AlignmentModeName(AlignmentMode mode);
// Accepts "none", "scale" and "scale+shift" (also "scale_shift").
AlignmentMode ParseAlignmentMode(std::string_view name);

struct FusionConfig {
  double max_depth = kDefaultMaxDepth;
  double consistency_tol = 1.0;  // meters of altitude
  int min_consistent_views = 1;
  AlignmentMode alignment = AlignmentMode::kNone;
  int alignment_iterations = 3;
  int alignment_stride = 4;     // pixel lattice used for alignment samples
  double huber_width = 1.0;     // meters
  int min_overlap_samples = 100;

  void Validate() const;
};

// d_aligned = scale * d + shift
struct ViewAlignment {
  double scale = 1.0;
  double shift = 0.0;
};

struct FusedDepthSet {
  std::vector<DepthMap> maps;
  // Per view, row-major: number of other views consistent with the pixel.
  std::vector<std::vector<std::uint16_t>> consistency;
  std::vector<ViewAlignment> alignment;
  std::vector<std::size_t> input_valid;
  std::vector<std::size_t> dropped;
};

// Invalidates pixels whose depth exceeds max_depth. Values equal to the
// bound are kept.
DepthMap ClampDepths(const DepthMap& map, double max_depth);

DepthMap ApplyAlignment(const DepthMap& map, const ViewAlignment& alignment);

// Estimates per-view (scale, shift) so that back-projected altitudes agree
// across views. View 0 is held at the identity. Each round visits views
// 1..n-1 in order and refits one view against the current state of all the
// others with Huber-weighted least squares on depth, followed by a Huber
// refit on the samples within three widths of that solution. Matches are
// recomputed after every fit of the view until its parameters settle. Throws
// InsufficientOverlap when a view has fewer than min_overlap_samples
// cross-view matches, or when fewer than two views are given.
std::vector<ViewAlignment> AlignViews(std::span<const DepthMap> maps,
                                      std::span<const ViewCamera> cameras,
                                      const LocalFrame& frame,
                                      const FusionConfig& config);

// Consistency filter and median fusion. Inputs are used as given; callers
// clamp and align first (see FuseDepths for the full sequence). A pixel of
// view i is kept when at least min_consistent_views other views see a
// surface within consistency_tol of its altitude at the nearest pixel of
// the reprojection. The fused depth is the slant range along view i's ray
// to the median altitude of the pixel's own estimate and its consistent
// estimates. min_consistent_views = 0 passes inputs through unchanged.
FusedDepthSet Fuse(std::span<const DepthMap> maps,
                   std::span<const ViewCamera> cameras,
                   const LocalFrame& frame, const FusionConfig& config);

// Clamp, then align (unless the mode is none), then Fuse.
FusedDepthSet FuseDepths(std::span<const DepthMap> maps,
                         std::span<const ViewCamera> cameras,
                         const LocalFrame& frame, const FusionConfig& config);

}  // namespace satdsm

#endif  // SATDSM_DEPTH_FUSION_H
