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

#include "satdsm/depth_fusion.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "satdsm/errors.h"
#include "satdsm/parallel.h"

namespace satdsm {

namespace {

using PointMap = std::vector<std::optional<GeodeticPoint>>;

std::optional<GeodeticPoint> PointAt(const DepthMap& map,
                                     const ViewCamera& cam,
                                     const ViewAlignment& alignment,
                                     const LocalFrame& frame, int line,
                                     int samp) {
  if (!map.valid(line, samp)) return std::nullopt;
  const double d = alignment.scale * map.at(line, samp) + alignment.shift;
  if (!(d > 0.0)) return std::nullopt;
  try {
    return BackProject(cam.model,
                       {static_cast<double>(line), static_cast<double>(samp)},
                       d, cam.plane, frame, cam.bracket());
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<std::pair<int, int>> NearestPixel(const RpcModel& model,
                                                const DepthMap& map,
                                                const GeodeticPoint& p) {
  ImageCoord c;
  try {
    c = Project(model, p);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!std::isfinite(c.line) || !std::isfinite(c.samp)) return std::nullopt;
  const double line = std::round(c.line);
  const double samp = std::round(c.samp);
  if (line < 0 || samp < 0 || line >= map.height() || samp >= map.width()) {
    return std::nullopt;
  }
  return std::make_pair(static_cast<int>(line), static_cast<int>(samp));
}

// Slant range along the pixel's ray from its near-plane point down to alt.
double SlantRangeAt(const ViewCamera& cam, const LocalFrame& frame,
                    const ImageCoord& c, double alt) {
  const LocalPoint near_point =
      frame.ToLocal(Localize(cam.model, c, cam.plane.z_ref));
  return Distance(frame.ToLocal(Localize(cam.model, c, alt)), near_point);
}

PointMap BuildPointMap(const DepthMap& map, const ViewCamera& cam,
                       const LocalFrame& frame) {
  PointMap points(static_cast<std::size_t>(map.width()) * map.height());
  ParallelFor(0, static_cast<std::size_t>(map.height()), [&](std::size_t line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      points[line * map.width() + samp] =
          PointAt(map, cam, {}, frame, static_cast<int>(line), samp);
    }
  });
  return points;
}

void CheckInputs(std::span<const DepthMap> maps,
                 std::span<const ViewCamera> cameras) {
  if (maps.size() != cameras.size()) {
    Throw(ErrorCode::InvalidArgument, "one camera per depth map required");
  }
}

struct Sample {
  double raw = 0.0;
  double target = 0.0;
};

// One Huber-weighted IRLS solve of target ~ scale * raw + shift over the
// samples whose residual under `cutoff_from` is at most `cutoff` (all
// samples when cutoff is infinite).
ViewAlignment HuberIrls(const std::vector<Sample>& samples, ViewAlignment p,
                        bool with_shift, double huber_width,
                        const ViewAlignment& cutoff_from, double cutoff) {
  for (int iter = 0; iter < 50; ++iter) {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const Sample& s : samples) {
      if (std::abs(cutoff_from.scale * s.raw + cutoff_from.shift - s.target) >
          cutoff) {
        continue;
      }
      const double r = std::abs(p.scale * s.raw + p.shift - s.target);
      const double w = r <= huber_width ? 1.0 : huber_width / r;
      sw += w;
      sx += w * s.raw;
      sy += w * s.target;
      sxx += w * s.raw * s.raw;
      sxy += w * s.raw * s.target;
    }
    ViewAlignment next;
    if (with_shift) {
      const double det = sw * sxx - sx * sx;
      if (!(std::abs(det) > 0.0)) break;
      next.scale = (sw * sxy - sx * sy) / det;
      next.shift = (sxx * sy - sx * sxy) / det;
    } else {
      if (!(sxx > 0.0)) break;
      next.scale = sxy / sxx;
      next.shift = 0.0;
    }
    const bool settled = std::abs(next.scale - p.scale) < 1e-12 &&
                         std::abs(next.shift - p.shift) < 1e-9;
    p = next;
    if (settled) break;
  }
  return p;
}

// Huber fit over all samples, then a second Huber fit restricted to the
// samples within kInlierWidths Huber widths of the first solution. The
// second pass drops occlusion and facade matches, which are one-sided and
// would otherwise tilt the line through their bounded Huber influence.
constexpr double kInlierWidths = 3.0;

ViewAlignment FitAlignment(const std::vector<Sample>& samples,
                           ViewAlignment start, bool with_shift,
                           double huber_width) {
  constexpr double kAll = std::numeric_limits<double>::infinity();
  const ViewAlignment coarse =
      HuberIrls(samples, start, with_shift, huber_width, start, kAll);
  return HuberIrls(samples, coarse, with_shift, huber_width, coarse,
                   kInlierWidths * huber_width);
}

}  // namespace

std::string_view AlignmentModeName(AlignmentMode mode) {
  switch (mode) {
    case AlignmentMode::kNone:
      return "none";
    case AlignmentMode::kScale:
      return "scale";
    case AlignmentMode::kScaleShift:
      return "scale+shift";
  }
  return "none";
}

AlignmentMode ParseAlignmentMode(std::string_view name) {
  if (name == "none") return AlignmentMode::kNone;
  if (name == "scale") return AlignmentMode::kScale;
  if (name == "scale+shift" || name == "scale_shift") {
    return AlignmentMode::kScaleShift;
  }
  Throw(ErrorCode::ConfigError,
        "unknown alignment mode '" + std::string(name) + "'");
}

void FusionConfig::Validate() const {
  if (!(max_depth > 0.0)) {
    Throw(ErrorCode::ConfigError, "max_depth must be positive");
  }
  if (!(consistency_tol > 0.0)) {
    Throw(ErrorCode::ConfigError, "consistency_tol must be positive");
  }
  if (min_consistent_views < 0) {
    Throw(ErrorCode::ConfigError, "min_consistent_views must be >= 0");
  }
  if (alignment_iterations < 1 || alignment_stride < 1) {
    Throw(ErrorCode::ConfigError,
          "alignment iterations and stride must be >= 1");
  }
  if (!(huber_width > 0.0)) {
    Throw(ErrorCode::ConfigError, "huber_width must be positive");
  }
}

DepthMap ClampDepths(const DepthMap& map, double max_depth) {
  if (!(max_depth > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "max_depth must be positive");
  }
  DepthMap out = map;
  for (int line = 0; line < map.height(); ++line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      if (map.valid(line, samp) && map.at(line, samp) > max_depth) {
        out.Invalidate(line, samp);
      }
    }
  }
  return out;
}

DepthMap ApplyAlignment(const DepthMap& map, const ViewAlignment& alignment) {
  DepthMap out(map.width(), map.height(), map.view_id());
  for (int line = 0; line < map.height(); ++line) {
    for (int samp = 0; samp < map.width(); ++samp) {
      if (map.valid(line, samp)) {
        out.Set(line, samp,
                alignment.scale * map.at(line, samp) + alignment.shift);
      }
    }
  }
  return out;
}

std::vector<ViewAlignment> AlignViews(std::span<const DepthMap> maps,
                                      std::span<const ViewCamera> cameras,
                                      const LocalFrame& frame,
                                      const FusionConfig& config) {
  CheckInputs(maps, cameras);
  config.Validate();
  const std::size_t n = maps.size();
  std::vector<ViewAlignment> params(n);
  if (config.alignment == AlignmentMode::kNone) return params;
  if (n < 2) {
    Throw(ErrorCode::InsufficientOverlap,
          "alignment needs at least two views");
  }
  const bool with_shift = config.alignment == AlignmentMode::kScaleShift;
  const int stride = config.alignment_stride;

  // Samples of view v against the current parameters of every view.
  auto collect = [&](std::size_t v) {
    const DepthMap& map = maps[v];
    const ViewCamera& cam = cameras[v];
    const int lines = (map.height() + stride - 1) / stride;
    std::vector<std::vector<Sample>> per_line(lines);
    ParallelFor(0, static_cast<std::size_t>(lines), [&](std::size_t li) {
      const int line = static_cast<int>(li) * stride;
      for (int samp = 0; samp < map.width(); samp += stride) {
        const auto x = PointAt(map, cam, params[v], frame, line, samp);
        if (!x) continue;
        const ImageCoord c{static_cast<double>(line),
                           static_cast<double>(samp)};
        for (std::size_t j = 0; j < n; ++j) {
          if (j == v) continue;
          const auto px = NearestPixel(cameras[j].model, maps[j], *x);
          if (!px) continue;
          const auto xj = PointAt(maps[j], cameras[j], params[j], frame,
                                  px->first, px->second);
          if (!xj) continue;
          try {
            per_line[li].push_back(
                {map.at(line, samp), SlantRangeAt(cam, frame, c, xj->alt)});
          } catch (const Error&) {
          }
        }
      }
    });
    std::vector<Sample> samples;
    for (const auto& s : per_line) {
      samples.insert(samples.end(), s.begin(), s.end());
    }
    if (samples.size() < static_cast<std::size_t>(config.min_overlap_samples)) {
      Throw(ErrorCode::InsufficientOverlap,
            "view " + std::to_string(v) + " has only " +
                std::to_string(samples.size()) +
                " cross-view samples for alignment");
    }
    return samples;
  };

  // Matches depend on the view's own parameters, so each per-view solve
  // alternates matching and fitting until the parameters settle.
  constexpr int kMaxRematch = 10;
  for (int round = 0; round < config.alignment_iterations; ++round) {
    for (std::size_t v = 1; v < n; ++v) {
      for (int pass = 0; pass < kMaxRematch; ++pass) {
        const ViewAlignment next = FitAlignment(collect(v), params[v],
                                                with_shift, config.huber_width);
        const bool settled = std::abs(next.scale - params[v].scale) < 1e-6 &&
                             std::abs(next.shift - params[v].shift) < 1e-4;
        params[v] = next;
        if (settled) break;
      }
    }
  }
  return params;
}

FusedDepthSet Fuse(std::span<const DepthMap> maps,
                   std::span<const ViewCamera> cameras,
                   const LocalFrame& frame, const FusionConfig& config) {
  CheckInputs(maps, cameras);
  config.Validate();
  const std::size_t n = maps.size();

  FusedDepthSet out;
  out.alignment.assign(n, {});
  for (const DepthMap& m : maps) {
    out.input_valid.push_back(m.ValidCount());
    out.consistency.emplace_back(
        static_cast<std::size_t>(m.width()) * m.height(), 0);
  }
  if (config.min_consistent_views == 0) {
    out.maps.assign(maps.begin(), maps.end());
    out.dropped.assign(n, 0);
    return out;
  }

  std::vector<PointMap> points;
  points.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    points.push_back(BuildPointMap(maps[v], cameras[v], frame));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const DepthMap& map = maps[i];
    const ViewCamera& cam = cameras[i];
    DepthMap fused(map.width(), map.height(), map.view_id());
    std::vector<std::uint16_t>& counts = out.consistency[i];

    ParallelFor(0, static_cast<std::size_t>(map.height()), [&](std::size_t l) {
      const int line = static_cast<int>(l);
      std::vector<double> alts;
      for (int samp = 0; samp < map.width(); ++samp) {
        const std::size_t idx = l * map.width() + samp;
        const auto& x = points[i][idx];
        if (!x) continue;
        alts.assign(1, x->alt);
        int count = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const auto px = NearestPixel(cameras[j].model, maps[j], *x);
          if (!px) continue;
          const auto& xj =
              points[j][static_cast<std::size_t>(px->first) * maps[j].width() +
                        px->second];
          if (xj && std::abs(xj->alt - x->alt) < config.consistency_tol) {
            ++count;
            alts.push_back(xj->alt);
          }
        }
        counts[idx] = static_cast<std::uint16_t>(count);
        if (count < config.min_consistent_views) continue;

        const double own = x->alt;
        std::sort(alts.begin(), alts.end());
        const double median = alts[(alts.size() - 1) / 2];
        if (median == own) {
          fused.Set(line, samp, map.at(line, samp));
          continue;
        }
        try {
          fused.Set(line, samp,
                    SlantRangeAt(cam, frame,
                                 {static_cast<double>(line),
                                  static_cast<double>(samp)},
                                 median));
        } catch (const Error&) {
        }
      }
    });

    out.dropped.push_back(out.input_valid[i] - fused.ValidCount());
    out.maps.push_back(std::move(fused));
  }
  return out;
}

FusedDepthSet FuseDepths(std::span<const DepthMap> maps,
                         std::span<const ViewCamera> cameras,
                         const LocalFrame& frame, const FusionConfig& config) {
  CheckInputs(maps, cameras);
  config.Validate();
  std::vector<DepthMap> prepared;
  prepared.reserve(maps.size());
  for (const DepthMap& m : maps) {
    prepared.push_back(ClampDepths(m, config.max_depth));
  }
  std::vector<ViewAlignment> alignment(maps.size());
  if (config.alignment != AlignmentMode::kNone) {
    alignment = AlignViews(prepared, cameras, frame, config);
    for (std::size_t v = 0; v < prepared.size(); ++v) {
      prepared[v] = ApplyAlignment(prepared[v], alignment[v]);
    }
  }
  FusedDepthSet out = Fuse(prepared, cameras, frame, config);
  for (std::size_t v = 0; v < maps.size(); ++v) {
    out.input_valid[v] = maps[v].ValidCount();
    out.dropped[v] = out.input_valid[v] - out.maps[v].ValidCount();
  }
  out.alignment = std::move(alignment);
  return out;
}

}  // namespace satdsm
