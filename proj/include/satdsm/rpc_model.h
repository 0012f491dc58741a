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

// Rational polynomial camera (RPC00B) model: parsing, forward projection, and
// altitude-parametrized inversion.

#ifndef SATDSM_RPC_MODEL_H
#define SATDSM_RPC_MODEL_H

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "satdsm/geodesy.h"

namespace satdsm {

// line is the image row (0 at top), samp the column (0 at left). Integer
// coordinates address pixel centers.
struct ImageCoord {
  double line = 0.0;
  double samp = 0.0;
};

using RpcCoefficients = std::array<double, 20>;

struct RpcModel {
  RpcCoefficients line_num{};
  RpcCoefficients line_den{};
  RpcCoefficients samp_num{};
  RpcCoefficients samp_den{};

  double lat_off = 0.0;
  double lon_off = 0.0;
  double height_off = 0.0;
  double line_off = 0.0;
  double samp_off = 0.0;

  double lat_scale = 1.0;
  double lon_scale = 1.0;
  double height_scale = 1.0;
  double line_scale = 1.0;
  double samp_scale = 1.0;

  bool operator==(const RpcModel& other) const = default;
};

// Normalized ground coordinates: P latitude, L longitude, H height.
struct NormalizedGround {
  double P = 0.0;
  double L = 0.0;
  double H = 0.0;
};

// The 20 cubic terms in RPC00B order:
// 1, L, P, H, LP, LH, PH, L^2, P^2, H^2, PLH, L^3, LP^2, LH^2, L^2P, P^3,
// PH^2, L^2H, P^2H, H^3.
RpcCoefficients CubicTerms(const NormalizedGround& g);

double EvaluatePolynomial(const RpcCoefficients& coeffs,
                          const RpcCoefficients& terms);

NormalizedGround Normalize(const RpcModel& model, const GeodeticPoint& p);
GeodeticPoint Denormalize(const RpcModel& model, const NormalizedGround& g);

// Checks the scale and denominator-normalization invariants. Throws
// NonPositiveScale or MalformedFile.
void ValidateRpc(const RpcModel& model);

// Parses the `KEY: value` text form. Unit suffixes after the number are
// ignored, as are unknown keys. A leading denominator coefficient other than
// 1 is normalized away by dividing the whole ratio through.
RpcModel ParseRpc(std::string_view text);
std::string SerializeRpc(const RpcModel& model);

RpcModel LoadRpc(const std::filesystem::path& path);
void SaveRpc(const RpcModel& model, const std::filesystem::path& path);

// Ground to image. Throws DenominatorNearZero when |D| < 1e-10.
ImageCoord Project(const RpcModel& model, const GeodeticPoint& p);

struct LocalizeOptions {
  double tolerance_px = 1e-8;
  int max_iterations = 50;
  double fd_step = 1e-6;  // normalized units
  // Iterates leaving |P| <= bound, |L| <= bound are treated as divergence.
  double footprint_bound = 2.0;
};

// Image to ground at a fixed altitude, by damped Newton iteration on the
// normalized (P, L) pair starting from (lat_off, lon_off). The step is halved
// whenever it would increase the pixel residual.
GeodeticPoint Localize(const RpcModel& model, const ImageCoord& c, double alt,
                       const LocalizeOptions& options = {});

// Endpoints of the pixel's imaging ray at two altitudes. The ray itself is the
// curve a -> Localize(model, c, a); no straight-line approximation is implied.
std::pair<GeodeticPoint, GeodeticPoint> ImagingRay(const RpcModel& model,
                                                   const ImageCoord& c,
                                                   double alt_top,
                                                   double alt_bottom);

}  // namespace satdsm

#endif  // SATDSM_RPC_MODEL_H
