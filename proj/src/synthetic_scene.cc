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

#include "satdsm/synthetic_scene.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "satdsm/errors.h"
#include "satdsm/parallel.h"

namespace satdsm {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform(rng);
}

double Terrain(const SyntheticSceneSpec& spec, double east, double north) {
  if (spec.terrain == TerrainMode::kFlat) return spec.ground_alt;
  const double k = 2.0 * std::numbers::pi / spec.period;
  return spec.ground_alt +
         spec.amplitude * std::sin(k * east) * std::cos(k * north);
}

struct Vec3 {
  double x, y, z;
};
Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
Vec3 Cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
Vec3 Normalized(const Vec3& a) { return (1.0 / std::sqrt(Dot(a, a))) * a; }

// Normalization shared by the affine and fitted cameras of a view.
RpcModel ViewNormalization(const SyntheticView& view, const LocalFrame& frame,
                           std::pair<double, double> alt_bounds) {
  view.Validate();
  const auto [alt_lo, alt_hi] = alt_bounds;
  if (!(alt_hi > alt_lo)) {
    Throw(ErrorCode::InvalidArgument, "altitude bounds must be increasing");
  }
  const double t = std::tan(view.off_nadir_deg * kDeg);
  const double max_dz = std::max(std::abs(alt_hi - view.center.up),
                                 std::abs(alt_lo - view.center.up));
  const double half_extent =
      0.5 * std::max(view.width, view.height) * view.gsd + t * max_dz;

  const GeodeticPoint c = frame.FromLocal(view.center);
  RpcModel m;
  m.lat_off = c.lat;
  m.lon_off = c.lon;
  m.height_off = 0.5 * (alt_lo + alt_hi);
  m.line_off = 0.5 * (view.height - 1);
  m.samp_off = 0.5 * (view.width - 1);
  m.lat_scale = half_extent / frame.meters_per_deg_lat();
  m.lon_scale = half_extent / frame.meters_per_deg_lon();
  m.height_scale = 0.5 * (alt_hi - alt_lo);
  m.line_scale = 0.5 * view.height;
  m.samp_scale = 0.5 * view.width;
  m.line_den[0] = 1.0;
  m.samp_den[0] = 1.0;
  return m;
}

}  // namespace

void SyntheticSceneSpec::Validate() const {
  if (cols < 2 || rows < 2) {
    Throw(ErrorCode::InvalidArgument, "scene needs at least 2x2 cells");
  }
  if (!(cell_size > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "cell size must be positive");
  }
  if (building_count < 0 ||
      !(building_height_min >= 0.0 &&
        building_height_max >= building_height_min)) {
    Throw(ErrorCode::InvalidArgument, "invalid building height range");
  }
  if (!(building_size_min > 0.0 && building_size_max >= building_size_min)) {
    Throw(ErrorCode::InvalidArgument, "invalid building size range");
  }
  if (terrain == TerrainMode::kSinusoidal && !(period > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "sinusoid period must be positive");
  }
}

GridSpec SyntheticSceneSpec::grid() const {
  return {cols, rows, origin_lon, origin_lat, cell_size};
}

LocalPoint SyntheticSceneSpec::Center() const {
  return {0.5 * (cols - 1) * cell_size, 0.5 * (rows - 1) * cell_size,
          ground_alt};
}

DsmGrid MakeDsm(const SyntheticSceneSpec& spec) {
  spec.Validate();
  DsmGrid dsm(spec.grid());
  for (int row = 0; row < spec.rows; ++row) {
    for (int col = 0; col < spec.cols; ++col) {
      dsm.set(col, row,
              Terrain(spec, col * spec.cell_size, row * spec.cell_size));
    }
  }

  std::mt19937_64 rng(spec.seed);
  const double extent_e = (spec.cols - 1) * spec.cell_size;
  const double extent_n = (spec.rows - 1) * spec.cell_size;
  for (int b = 0; b < spec.building_count; ++b) {
    const double size_e =
        Uniform(rng, spec.building_size_min, spec.building_size_max);
    const double size_n =
        Uniform(rng, spec.building_size_min, spec.building_size_max);
    const double height =
        Uniform(rng, spec.building_height_min, spec.building_height_max);
    const double ce = Uniform(rng, 0.5 * size_e, std::max(0.5 * size_e,
                                                          extent_e - 0.5 * size_e));
    const double cn = Uniform(rng, 0.5 * size_n, std::max(0.5 * size_n,
                                                          extent_n - 0.5 * size_n));
    const double roof = Terrain(spec, ce, cn) + height;
    const int c0 = std::max(0, static_cast<int>(std::ceil((ce - 0.5 * size_e) /
                                                          spec.cell_size)));
    const int c1 = std::min(spec.cols - 1,
                            static_cast<int>(std::floor(
                                (ce + 0.5 * size_e) / spec.cell_size)));
    const int r0 = std::max(0, static_cast<int>(std::ceil((cn - 0.5 * size_n) /
                                                          spec.cell_size)));
    const int r1 = std::min(spec.rows - 1,
                            static_cast<int>(std::floor(
                                (cn + 0.5 * size_n) / spec.cell_size)));
    for (int row = r0; row <= r1; ++row) {
      for (int col = c0; col <= c1; ++col) {
        dsm.set(col, row, std::max(dsm.at(col, row), roof));
      }
    }
  }
  return dsm;
}

void SyntheticView::Validate() const {
  if (!(off_nadir_deg >= 0.0 && off_nadir_deg < 45.0)) {
    Throw(ErrorCode::InvalidArgument, "off-nadir angle must be in [0, 45)");
  }
  if (!(gsd > 0.0)) Throw(ErrorCode::InvalidArgument, "gsd must be positive");
  if (width <= 0 || height <= 0) {
    Throw(ErrorCode::InvalidArgument, "image size must be positive");
  }
}

ImageCoord AffineProject(const SyntheticView& view, const LocalPoint& p) {
  const double t = std::tan(view.off_nadir_deg * kDeg);
  const double dx = std::cos(view.azimuth_deg * kDeg);
  const double dy = std::sin(view.azimuth_deg * kDeg);
  const double du = p.up - view.center.up;
  return {0.5 * (view.height - 1) -
              ((p.north - view.center.north) + du * t * dy) / view.gsd,
          0.5 * (view.width - 1) +
              ((p.east - view.center.east) + du * t * dx) / view.gsd};
}

RpcModel MakeAffineRpc(const SyntheticView& view, const LocalFrame& frame,
                       std::pair<double, double> alt_bounds) {
  RpcModel m = ViewNormalization(view, frame, alt_bounds);
  const double t = std::tan(view.off_nadir_deg * kDeg);
  const double dx = std::cos(view.azimuth_deg * kDeg);
  const double dy = std::sin(view.azimuth_deg * kDeg);
  const double g = view.gsd;
  const double dh = m.height_off - view.center.up;

  // Term order: [0] 1, [1] L, [2] P, [3] H.
  m.samp_num[0] = dh * t * dx / (g * m.samp_scale);
  m.samp_num[1] = m.lon_scale * frame.meters_per_deg_lon() / (g * m.samp_scale);
  m.samp_num[3] = m.height_scale * t * dx / (g * m.samp_scale);

  m.line_num[0] = -dh * t * dy / (g * m.line_scale);
  m.line_num[2] = -m.lat_scale * frame.meters_per_deg_lat() / (g * m.line_scale);
  m.line_num[3] = -m.height_scale * t * dy / (g * m.line_scale);
  return m;
}

GroundToImage MakePerspectiveCamera(const SyntheticView& view,
                                    const LocalFrame& frame, double standoff,
                                    double k1) {
  view.Validate();
  if (!(standoff > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "standoff must be positive");
  }
  const double theta = view.off_nadir_deg * kDeg;
  const double az = view.azimuth_deg * kDeg;
  const Vec3 center{view.center.east, view.center.north, view.center.up};
  const Vec3 position{
      center.x - standoff * std::sin(theta) * std::cos(az),
      center.y - standoff * std::sin(theta) * std::sin(az),
      center.z + standoff * std::cos(theta)};
  const Vec3 forward = Normalized(center - position);
  const Vec3 east{1.0, 0.0, 0.0};
  const Vec3 right = Normalized(east - Dot(east, forward) * forward);
  const Vec3 down = Cross(forward, right);
  const double focal = standoff / view.gsd;
  const double line0 = 0.5 * (view.height - 1);
  const double samp0 = 0.5 * (view.width - 1);

  return [=](const GeodeticPoint& g) {
    const LocalPoint p = frame.ToLocal(g);
    const Vec3 w = Vec3{p.east, p.north, p.up} - position;
    const double z = Dot(w, forward);
    double x = Dot(w, right) / z;
    double y = Dot(w, down) / z;
    const double radial = 1.0 + k1 * (x * x + y * y) * focal * focal /
                                    (samp0 * samp0 + line0 * line0 + 1.0);
    x *= radial;
    y *= radial;
    return ImageCoord{line0 + focal * y, samp0 + focal * x};
  };
}

RpcFitResult FitRpc(const GroundToImage& camera, const RpcModel& normalization,
                    int grid, int layers) {
  if (grid < 4 || layers < 4) {
    Throw(ErrorCode::InvalidArgument, "RPC fit lattice too coarse");
  }
  RpcModel m = normalization;
  m.line_num.fill(0.0);
  m.line_den.fill(0.0);
  m.samp_num.fill(0.0);
  m.samp_den.fill(0.0);
  m.line_den[0] = 1.0;
  m.samp_den[0] = 1.0;

  const int n = grid * grid * layers;
  std::vector<RpcCoefficients> terms(n);
  Eigen::VectorXd line_n(n), samp_n(n);
  int k = 0;
  for (int h = 0; h < layers; ++h) {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j, ++k) {
        const NormalizedGround g{-1.0 + 2.0 * i / (grid - 1),
                                 -1.0 + 2.0 * j / (grid - 1),
                                 -1.0 + 2.0 * h / (layers - 1)};
        terms[k] = CubicTerms(g);
        const ImageCoord c = camera(Denormalize(m, g));
        line_n(k) = (c.line - m.line_off) / m.line_scale;
        samp_n(k) = (c.samp - m.samp_off) / m.samp_scale;
      }
    }
  }

  // Linearized form: N(x) - y * (D(x) - 1) = y, with a small ridge to pin
  // down the common-factor null space of the rational form.
  constexpr double kRidge = 1e-9;
  auto solve = [&](const Eigen::VectorXd& y, RpcCoefficients& num,
                   RpcCoefficients& den) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 39, 39);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 39);
    for (int r = 0; r < n; ++r) {
      for (int t = 0; t < 20; ++t) a(r, t) = terms[r][t];
      for (int t = 1; t < 20; ++t) a(r, 19 + t) = -y(r) * terms[r][t];
      b(r) = y(r);
    }
    for (int t = 0; t < 39; ++t) a(n + t, t) = kRidge;
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    for (int t = 0; t < 20; ++t) num[t] = x(t);
    den[0] = 1.0;
    for (int t = 1; t < 20; ++t) den[t] = x(19 + t);
  };
  solve(line_n, m.line_num, m.line_den);
  solve(samp_n, m.samp_num, m.samp_den);

  RpcFitResult result;
  result.model = m;
  double sum_sq = 0.0;
  k = 0;
  for (int r = 0; r < n; ++r) {
    const double line = m.line_off +
                        m.line_scale * EvaluatePolynomial(m.line_num, terms[r]) /
                            EvaluatePolynomial(m.line_den, terms[r]);
    const double samp = m.samp_off +
                        m.samp_scale * EvaluatePolynomial(m.samp_num, terms[r]) /
                            EvaluatePolynomial(m.samp_den, terms[r]);
    const double dl = line - (m.line_off + m.line_scale * line_n(r));
    const double ds = samp - (m.samp_off + m.samp_scale * samp_n(r));
    const double e = std::hypot(dl, ds);
    result.max_residual_px = std::max(result.max_residual_px, e);
    sum_sq += e * e;
  }
  result.rms_residual_px = std::sqrt(sum_sq / n);
  return result;
}

RpcFitResult MakeFittedRpc(const SyntheticView& view, const LocalFrame& frame,
                           std::pair<double, double> alt_bounds,
                           double standoff, double k1) {
  const RpcModel norm = ViewNormalization(view, frame, alt_bounds);
  return FitRpc(MakePerspectiveCamera(view, frame, standoff, k1), norm);
}

RenderedView RenderView(const RpcModel& model, const DsmGrid& dsm,
                        const LocalFrame& frame, double z_ref, int width,
                        int height, double march_step) {
  const auto range = dsm.ValidRange();
  if (!range) Throw(ErrorCode::InvalidArgument, "DSM has no valid cells");
  const auto [dsm_min, dsm_max] = *range;
  if (!(z_ref > dsm_max)) {
    Throw(ErrorCode::InvalidArgument, "z_ref must lie above the DSM maximum");
  }
  if (!(march_step > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "march step must be positive");
  }

  RenderedView out{DepthMap(width, height),
                   std::vector<double>(static_cast<std::size_t>(width) * height,
                                       std::numeric_limits<double>::quiet_NaN())};
  const double top = dsm_max;
  const double bottom = dsm_min - march_step;
  const int steps = static_cast<int>(std::ceil((top - bottom) / march_step));
  constexpr double kKnotSpacing = 1.0;
  const int knots = static_cast<int>(std::ceil((top - bottom) / kKnotSpacing)) + 1;

  std::vector<double> depth(out.hit_alt.size(),
                            std::numeric_limits<double>::quiet_NaN());
  ParallelFor(0, static_cast<std::size_t>(height), [&](std::size_t line_index) {
    const int line = static_cast<int>(line_index);
    std::vector<double> knot_e(knots), knot_n(knots);
    for (int samp = 0; samp < width; ++samp) {
      const ImageCoord c{static_cast<double>(line), static_cast<double>(samp)};
      const std::size_t pixel = static_cast<std::size_t>(line) * width + samp;
      try {
        for (int k = 0; k < knots; ++k) {
          const LocalPoint q =
              frame.ToLocal(Localize(model, c, top - k * kKnotSpacing));
          knot_e[k] = q.east;
          knot_n[k] = q.north;
        }
        // Signed clearance of the ray above the surface at altitude a.
        auto clearance_interp = [&](double a) -> std::optional<double> {
          const double s = (top - a) / kKnotSpacing;
          const int k = std::min(static_cast<int>(s), knots - 2);
          const double w = s - k;
          const auto z = dsm.SampleLocal(
              (1.0 - w) * knot_e[k] + w * knot_e[k + 1],
              (1.0 - w) * knot_n[k] + w * knot_n[k + 1]);
          if (!z) return std::nullopt;
          return a - *z;
        };
        auto clearance_exact = [&](double a) -> std::optional<double> {
          const LocalPoint q = frame.ToLocal(Localize(model, c, a));
          const auto z = dsm.SampleLocal(q.east, q.north);
          if (!z) return std::nullopt;
          return a - *z;
        };

        int crossing = -1;
        for (int s = 0; s <= steps; ++s) {
          const auto f = clearance_interp(top - s * march_step);
          if (!f) break;
          if (*f <= 0.0) {
            crossing = s;
            break;
          }
        }
        if (crossing < 0) continue;

        double hit;
        if (crossing == 0) {
          hit = top;
        } else {
          double lo = top - crossing * march_step;        // at or below surface
          double hi = top - (crossing - 1) * march_step;  // above surface
          bool ok = true;
          while (hi - lo > 1e-4) {
            const double mid = 0.5 * (lo + hi);
            const auto f = clearance_exact(mid);
            if (!f) {
              ok = false;
              break;
            }
            (*f <= 0.0 ? lo : hi) = mid;
          }
          if (!ok) continue;
          hit = 0.5 * (lo + hi);
        }
        const LocalPoint near_point = frame.ToLocal(Localize(model, c, z_ref));
        const LocalPoint surface = frame.ToLocal(Localize(model, c, hit));
        depth[pixel] = Distance(near_point, surface);
        out.hit_alt[pixel] = hit;
      } catch (const Error&) {
        // Rays that cannot be traced inside the model's footprint stay
        // invalid.
      }
    }
  });

  for (int line = 0; line < height; ++line) {
    for (int samp = 0; samp < width; ++samp) {
      const std::size_t pixel = static_cast<std::size_t>(line) * width + samp;
      if (!std::isnan(depth[pixel])) out.depth.Set(line, samp, depth[pixel]);
    }
  }
  return out;
}

DepthMap RenderDepth(const RpcModel& model, const DsmGrid& dsm,
                     const LocalFrame& frame, double z_ref, int width,
                     int height) {
  return RenderView(model, dsm, frame, z_ref, width, height).depth;
}

DepthMap SaturateDepths(const DepthMap& map, double max_depth) {
  if (!(max_depth > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "max_depth must be positive");
  }
  DepthMap out = map;
  for (int line = 0; line < map.height(); ++line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      if (map.valid(line, samp) && map.at(line, samp) > max_depth) {
        out.Set(line, samp, max_depth);
      }
    }
  }
  return out;
}

}  // namespace satdsm
