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

#include "satdsm/pseudo_depth.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "satdsm/errors.h"
#include "satdsm/parallel.h"

namespace satdsm {

NearPlane MakeNearPlane(double z_max, double delta) {
  if (!(delta > 0.0)) {
    Throw(ErrorCode::NonPositiveMargin,
          "near-plane margin must be positive, got " + std::to_string(delta));
  }
  if (!std::isfinite(z_max)) {
    Throw(ErrorCode::InvalidArgument, "z_max must be finite");
  }
  return {z_max + delta, z_max, delta};
}

SurfaceHit IntersectSurface(const RpcModel& model, const ImageCoord& c,
                            const DsmGrid& dsm, double init_alt,
                            const IntersectOptions& options) {
  if (!(options.damping >= 0.0 && options.damping < 1.0)) {
    Throw(ErrorCode::InvalidArgument, "damping must be in [0, 1)");
  }
  SurfaceHit hit;
  double alt = init_alt;
  while (hit.iterations < options.max_iterations) {
    const GeodeticPoint ground = Localize(model, c, alt);
    const auto z = dsm.Sample(ground.lon, ground.lat);
    if (!z) {
      std::ostringstream msg;
      msg << "ray of pixel (" << c.line << ", " << c.samp
          << ") leaves the DSM at altitude " << alt;
      Throw(ErrorCode::RayExitsFootprint, msg.str());
    }
    ++hit.iterations;
    const double next =
        (1.0 - options.damping) * *z + options.damping * alt;
    hit.residual = std::abs(next - alt);
    alt = next;
    if (hit.residual < options.tolerance) {
      hit.converged = true;
      break;
    }
  }
  hit.point = Localize(model, c, alt);
  return hit;
}

PseudoDepthResult PseudoDepthAt(const RpcModel& model, const ImageCoord& c,
                                const DsmGrid& dsm, const NearPlane& plane,
                                const LocalFrame& frame,
                                const IntersectOptions& options) {
  const auto range = dsm.ValidRange();
  if (!range) Throw(ErrorCode::InvalidArgument, "DSM has no valid cells");
  if (!(plane.z_ref > range->second)) {
    Throw(ErrorCode::InvalidArgument, "near-plane must lie above the DSM");
  }
  PseudoDepthResult result;
  result.near_point = Localize(model, c, plane.z_ref);
  result.hit = IntersectSurface(model, c, dsm,
                                0.5 * (range->first + range->second), options);
  result.depth = Distance(frame.ToLocal(result.hit.point),
                          frame.ToLocal(result.near_point));
  return result;
}

PseudoDepthMap BuildPseudoDepthMap(const RpcModel& model, const DsmGrid& dsm,
                                   const NearPlane& plane,
                                   const LocalFrame& frame, int width,
                                   int height,
                                   const IntersectOptions& options) {
  const auto range = dsm.ValidRange();
  if (!range) Throw(ErrorCode::InvalidArgument, "DSM has no valid cells");
  if (!(plane.z_ref > range->second)) {
    Throw(ErrorCode::InvalidArgument, "near-plane must lie above the DSM");
  }

  enum class Outcome : unsigned char { kValid, kNotConverged, kExited, kFailed };
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<double> depth(n, 0.0);
  std::vector<int> iterations(n, 0);
  std::vector<Outcome> outcome(n, Outcome::kFailed);

  ParallelFor(0, static_cast<std::size_t>(height), [&](std::size_t line) {
    for (int samp = 0; samp < width; ++samp) {
      const std::size_t i = line * width + samp;
      try {
        const PseudoDepthResult r =
            PseudoDepthAt(model, {static_cast<double>(line),
                                  static_cast<double>(samp)},
                          dsm, plane, frame, options);
        iterations[i] = r.hit.iterations;
        depth[i] = r.depth;
        outcome[i] = r.hit.converged ? Outcome::kValid : Outcome::kNotConverged;
      } catch (const Error& e) {
        outcome[i] = e.code() == ErrorCode::RayExitsFootprint ? Outcome::kExited
                                                              : Outcome::kFailed;
      }
    }
  });

  PseudoDepthMap out{DepthMap(width, height), {}};
  PseudoDepthStats& s = out.stats;
  s.pixels = n;
  double iteration_sum = 0.0;
  for (int line = 0; line < height; ++line) {
    for (int samp = 0; samp < width; ++samp) {
      const std::size_t i = static_cast<std::size_t>(line) * width + samp;
      switch (outcome[i]) {
        case Outcome::kValid:
          out.depth.Set(line, samp, depth[i]);
          if (out.depth.valid(line, samp)) {
            ++s.valid;
            iteration_sum += iterations[i];
            s.max_iterations = std::max(s.max_iterations, iterations[i]);
          }
          break;
        case Outcome::kNotConverged:
          ++s.not_converged;
          break;
        case Outcome::kExited:
          ++s.exited_footprint;
          break;
        case Outcome::kFailed:
          ++s.localize_failures;
          break;
      }
    }
  }
  s.valid_fraction = n ? static_cast<double>(s.valid) / n : 0.0;
  s.mean_iterations = s.valid ? iteration_sum / s.valid : 0.0;
  if (s.valid_fraction < 0.01) {
    Throw(ErrorCode::EmptyOutput,
          "only " + std::to_string(s.valid) + " of " + std::to_string(n) +
              " pixels produced a pseudo depth");
  }
  return out;
}

}  // namespace satdsm
