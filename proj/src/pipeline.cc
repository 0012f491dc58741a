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

#include "satdsm/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

#include "satdsm/dsm_reconstruction.h"
#include "satdsm/errors.h"
#include "satdsm/text_util.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace satdsm {

namespace {

std::string NowUtc(const RunContext& ctx) {
  if (ctx.deterministic) return "1970-01-01T00:00:00Z";
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json Provenance(const RunContext& ctx, const std::string& stage) {
  ordered_json j;
  j["tool"] = "satdsm";
  j["version"] = kToolVersion;
  j["stage"] = stage;
  j["command"] = ctx.deterministic ? std::string() : ctx.command;
  j["created_utc"] = NowUtc(ctx);
  return j;
}

ordered_json GridJson(const GridSpec& g) {
  return {{"cols", g.cols},
          {"rows", g.rows},
          {"origin_lon", g.origin_lon},
          {"origin_lat", g.origin_lat},
          {"cell_size", g.cell_size}};
}

ordered_json FusionJson(const FusionConfig& f) {
  return {{"max_depth", f.max_depth},
          {"consistency_tol", f.consistency_tol},
          {"min_consistent_views", f.min_consistent_views},
          {"alignment", std::string(AlignmentModeName(f.alignment))},
          {"alignment_iterations", f.alignment_iterations},
          {"alignment_stride", f.alignment_stride},
          {"huber_width", f.huber_width}};
}

ordered_json PipelineJson(const PipelineConfig& c) {
  ordered_json j;
  j["fusion"] = FusionJson(c.fusion);
  j["near_delta"] = c.near_delta;
  j["bracket_below"] = c.bracket_below;
  j["stride"] = c.stride;
  j["fill_holes"] = c.fill_holes;
  j["fill_radius"] = c.fill_radius;
  j["align_median"] = c.align_median;
  j["cell_size"] = c.cell_size ? ordered_json(*c.cell_size)
                               : ordered_json(nullptr);
  j["intersect"] = {{"tolerance", c.intersect.tolerance},
                    {"max_iterations", c.intersect.max_iterations},
                    {"damping", c.intersect.damping}};
  j["curation"] = {{"min_views", c.curation.min_views},
                   {"timestamp_keys", c.curation.timestamp_keys},
                   {"winter_rule", kWinterRule}};
  return j;
}

void WriteJson(const fs::path& path, const ordered_json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

// Binary PPM/PGM with a deterministic pattern; curation only reads the size.
void WritePlaceholderImage(const fs::path& path, int width, int height,
                           int channels) {
  std::string data = (channels == 3 ? "P6\n" : "P5\n") +
                     std::to_string(width) + " " + std::to_string(height) +
                     "\n255\n";
  data.reserve(data.size() + static_cast<std::size_t>(width) * height * channels);
  for (int line = 0; line < height; ++line) {
    for (int samp = 0; samp < width; ++samp) {
      for (int c = 0; c < channels; ++c) {
        data.push_back(static_cast<char>(
            channels == 3 ? (line + samp + 85 * c) & 0xff : 2));
      }
    }
  }
  WriteTextFile(path, data);
}

[[noreturn]] void RethrowForView(const Error& e, const std::string& view) {
  Throw(e.code(), "view " + view + ": " + e.what());
}

std::vector<double> DoubleList(const Config& cfg, const std::string& key,
                               const std::vector<double>& fallback) {
  if (!cfg.Has(key)) return fallback;
  std::vector<double> out;
  for (const std::string& item : cfg.GetList(key, {})) {
    const auto v = ParseDouble(item);
    if (!v) Throw(ErrorCode::ConfigError, "bad number '" + item + "' in " + key);
    out.push_back(*v);
  }
  return out;
}

}  // namespace

SynthOptions SynthOptionsFromConfig(const Config& cfg) {
  SynthOptions o;
  SyntheticSceneSpec& s = o.scene;
  o.scene_id = cfg.GetString("scene.id", o.scene_id);
  s.cols = cfg.GetInt("scene.cols", s.cols);
  s.rows = cfg.GetInt("scene.rows", s.rows);
  s.cell_size = cfg.GetDouble("scene.cell_size", s.cell_size);
  s.ground_alt = cfg.GetDouble("scene.ground_alt", s.ground_alt);
  s.building_count = cfg.GetInt("scene.buildings", s.building_count);
  s.building_height_min = cfg.GetDouble("scene.height_min", s.building_height_min);
  s.building_height_max = cfg.GetDouble("scene.height_max", s.building_height_max);
  s.building_size_min = cfg.GetDouble("scene.size_min", s.building_size_min);
  s.building_size_max = cfg.GetDouble("scene.size_max", s.building_size_max);
  const std::string terrain = cfg.GetString("scene.terrain", "flat");
  if (terrain == "flat") {
    s.terrain = TerrainMode::kFlat;
  } else if (terrain == "sinusoidal") {
    s.terrain = TerrainMode::kSinusoidal;
  } else {
    Throw(ErrorCode::ConfigError, "unknown terrain '" + terrain + "'");
  }
  s.amplitude = cfg.GetDouble("scene.amplitude", s.amplitude);
  s.period = cfg.GetDouble("scene.period", s.period);
  s.seed = static_cast<std::uint64_t>(cfg.GetInt("scene.seed", 0));
  s.origin_lon = cfg.GetDouble("scene.origin_lon", s.origin_lon);
  s.origin_lat = cfg.GetDouble("scene.origin_lat", s.origin_lat);
  s.Validate();

  const std::vector<double> off_nadir =
      DoubleList(cfg, "views.off_nadir", {0.0, 10.0, 10.0});
  const std::vector<double> azimuth =
      DoubleList(cfg, "views.azimuth", {0.0, 0.0, 180.0});
  if (off_nadir.size() != azimuth.size() || off_nadir.empty()) {
    Throw(ErrorCode::ConfigError,
          "views.off_nadir and views.azimuth need the same non-zero length");
  }
  const double gsd = cfg.GetDouble("views.gsd", s.cell_size);
  const int width = cfg.GetInt("views.width", s.cols);
  const int height = cfg.GetInt("views.height", s.rows);
  for (std::size_t i = 0; i < off_nadir.size(); ++i) {
    SyntheticView v;
    v.off_nadir_deg = off_nadir[i];
    v.azimuth_deg = azimuth[i];
    v.gsd = gsd;
    v.width = width;
    v.height = height;
    v.center = s.Center();
    v.Validate();
    o.views.push_back(v);
  }
  o.acquisitions =
      cfg.GetList("views.acquisition", {"2019-06-15T16:00:00.000000Z"});
  if (o.acquisitions.size() != 1 && o.acquisitions.size() != o.views.size()) {
    Throw(ErrorCode::ConfigError,
          "views.acquisition needs one entry or one per view");
  }
  for (const auto& a : o.acquisitions) (void)ParseIsoTimestamp(a);
  o.render_depth = cfg.GetBool("synth.render_depth", o.render_depth);
  o.near_delta = cfg.GetDouble("synth.near_delta", o.near_delta);
  if (!(o.near_delta > 0.0)) {
    Throw(ErrorCode::ConfigError, "synth.near_delta must be positive");
  }
  return o;
}

void PipelineConfig::Validate() const {
  fusion.Validate();
  if (!(near_delta > 0.0)) {
    Throw(ErrorCode::ConfigError, "near_delta must be positive");
  }
  if (!(bracket_below >= 0.0)) {
    Throw(ErrorCode::ConfigError, "bracket_below must be >= 0");
  }
  if (stride < 1) Throw(ErrorCode::ConfigError, "stride must be >= 1");
  if (fill_radius < 1) Throw(ErrorCode::ConfigError, "fill_radius must be >= 1");
  if (cell_size && !(*cell_size > 0.0)) {
    Throw(ErrorCode::ConfigError, "cell_size must be positive");
  }
  if (!(intersect.damping >= 0.0 && intersect.damping < 1.0)) {
    Throw(ErrorCode::ConfigError, "damping must be in [0, 1)");
  }
  if (!(intersect.tolerance > 0.0) || intersect.max_iterations < 1) {
    Throw(ErrorCode::ConfigError, "bad fixed-point tolerance or iteration cap");
  }
  if (curation.min_views < 0) {
    Throw(ErrorCode::ConfigError, "min_views must be >= 0");
  }
}

PipelineConfig PipelineConfigFromConfig(const Config& cfg) {
  PipelineConfig c;
  FusionConfig& f = c.fusion;
  f.max_depth = cfg.GetDouble("fusion.max_depth", f.max_depth);
  f.consistency_tol = cfg.GetDouble("fusion.consistency_tol", f.consistency_tol);
  f.min_consistent_views =
      cfg.GetInt("fusion.min_consistent_views", f.min_consistent_views);
  f.alignment = ParseAlignmentMode(
      cfg.GetString("fusion.alignment", std::string(AlignmentModeName(f.alignment))));
  f.alignment_iterations =
      cfg.GetInt("fusion.alignment_iterations", f.alignment_iterations);
  f.alignment_stride = cfg.GetInt("fusion.alignment_stride", f.alignment_stride);
  f.huber_width = cfg.GetDouble("fusion.huber_width", f.huber_width);

  c.curation.min_views = cfg.GetInt("curation.min_views", c.curation.min_views);
  c.curation.timestamp_keys =
      cfg.GetList("curation.timestamp_keys", c.curation.timestamp_keys);
  const std::string hemi = cfg.GetString("curation.hemisphere", "auto");
  if (hemi == "north") {
    c.curation.hemisphere = Hemisphere::kNorth;
  } else if (hemi == "south") {
    c.curation.hemisphere = Hemisphere::kSouth;
  } else if (hemi != "auto") {
    Throw(ErrorCode::ConfigError, "curation.hemisphere must be north, south or auto");
  }

  c.near_delta = cfg.GetDouble("pseudo_depth.near_delta", c.near_delta);
  c.intersect.damping = cfg.GetDouble("pseudo_depth.damping", c.intersect.damping);
  c.intersect.tolerance =
      cfg.GetDouble("pseudo_depth.tolerance", c.intersect.tolerance);
  c.intersect.max_iterations =
      cfg.GetInt("pseudo_depth.max_iterations", c.intersect.max_iterations);

  c.stride = cfg.GetInt("reconstruct.stride", c.stride);
  c.fill_holes = cfg.GetBool("reconstruct.fill_holes", c.fill_holes);
  c.fill_radius = cfg.GetInt("reconstruct.fill_radius", c.fill_radius);
  c.bracket_below = cfg.GetDouble("reconstruct.bracket_below", c.bracket_below);
  if (cfg.Has("reconstruct.cell_size")) {
    c.cell_size = cfg.GetDouble("reconstruct.cell_size", 0.0);
  }
  c.align_median = cfg.GetBool("evaluate.align_median", c.align_median);
  c.Validate();
  return c;
}

std::vector<RpcModel> SynthCameras(const SynthOptions& options,
                                   const DsmGrid& dsm) {
  const auto range = dsm.ValidRange();
  if (!range) Throw(ErrorCode::InvalidArgument, "synthetic DSM is empty");
  const std::pair<double, double> alt_bounds{
      range->first - 100.0, range->second + options.near_delta + 50.0};
  std::vector<RpcModel> out;
  for (const SyntheticView& v : options.views) {
    out.push_back(MakeAffineRpc(v, dsm.frame(), alt_bounds));
  }
  return out;
}

SynthSummary RunSynth(const SynthOptions& options, const fs::path& out_dir,
                      const RunContext& ctx) {
  const DsmGrid dsm = MakeDsm(options.scene);
  const auto range = dsm.ValidRange();
  const std::vector<RpcModel> cameras = SynthCameras(options, dsm);
  const NearPlane plane = MakeNearPlane(range->second, options.near_delta);
  const std::string& id = options.scene_id;

  fs::create_directories(out_dir);
  SaveDsm(dsm, out_dir / (id + "_DSM.txt"));
  ordered_json meta;
  meta["z_min"] = range->first;
  meta["z_max"] = range->second;
  WriteJson(out_dir / (id + "_META.json"), meta);

  ordered_json views = ordered_json::array();
  for (std::size_t i = 0; i < options.views.size(); ++i) {
    const SyntheticView& v = options.views[i];
    char index[16];
    std::snprintf(index, sizeof(index), "%03zu", i);
    const std::string stem = id + "_" + index;
    SaveRpc(cameras[i], out_dir / (stem + "_RPC.txt"));
    WritePlaceholderImage(out_dir / (stem + "_RGB.ppm"), v.width, v.height, 3);
    WritePlaceholderImage(out_dir / (stem + "_CLS.pgm"), v.width, v.height, 1);
    const std::string& when = options.acquisitions.size() == 1
                                  ? options.acquisitions[0]
                                  : options.acquisitions[i];
    WriteTextFile(out_dir / (stem + "_IMD.txt"),
                  "imageId = \"" + stem + "\";\nfirstLineTime = " + when +
                      ";\n");
    if (options.render_depth) {
      DepthMap depth = RenderDepth(cameras[i], dsm, dsm.frame(), plane.z_ref,
                                   v.width, v.height);
      depth.set_view_id(stem);
      SavePfm(depth, out_dir / (stem + "_DEPTH.pfm"));
    }
    views.push_back({{"view_id", stem},
                     {"off_nadir_deg", v.off_nadir_deg},
                     {"azimuth_deg", v.azimuth_deg},
                     {"gsd", v.gsd},
                     {"width", v.width},
                     {"height", v.height},
                     {"acquisition", when}});
  }

  ordered_json prov = Provenance(ctx, "synth");
  const SyntheticSceneSpec& s = options.scene;
  prov["scene"] = {{"id", id},
                   {"grid", GridJson(s.grid())},
                   {"ground_alt", s.ground_alt},
                   {"buildings", s.building_count},
                   {"height_range", {s.building_height_min, s.building_height_max}},
                   {"size_range", {s.building_size_min, s.building_size_max}},
                   {"terrain", s.terrain == TerrainMode::kFlat ? "flat" : "sinusoidal"},
                   {"amplitude", s.amplitude},
                   {"period", s.period},
                   {"seed", s.seed}};
  prov["z_min"] = range->first;
  prov["z_max"] = range->second;
  prov["z_ref"] = plane.z_ref;
  prov["render_depth"] = options.render_depth;
  prov["views"] = std::move(views);
  WriteJson(out_dir / "synth_provenance.json", prov);
  return {out_dir, options.views.size(), range->first, range->second};
}

CurationResult RunCurate(const fs::path& root, const fs::path& out_dir,
                         const PipelineConfig& config, const RunContext& ctx) {
  CurationResult result = BuildManifest(root, config.curation);
  fs::create_directories(out_dir);
  ordered_json scenes = ordered_json::array();
  for (const SceneManifest& m : result.scenes) {
    WriteTextFile(out_dir / (m.scene_id + ".manifest.json"), ManifestToJson(m));
    scenes.push_back({{"scene_id", m.scene_id},
                      {"accepted", m.accepted()},
                      {"reasons", m.reasons}});
  }
  WriteTextFile(out_dir / "rejections.csv", RejectionReportCsv(result));
  ordered_json prov = Provenance(ctx, "curate");
  prov["config"] = PipelineJson(config)["curation"];
  prov["scenes"] = std::move(scenes);
  WriteJson(out_dir / "curation_provenance.json", prov);
  return result;
}

SceneManifest AcceptedScene(const fs::path& root, const std::string& scene_id,
                            const PipelineConfig& config) {
  const CurationResult result = BuildManifest(root, config.curation);
  for (const SceneManifest& m : result.scenes) {
    if (m.scene_id != scene_id) continue;
    if (!m.accepted()) {
      std::string reasons;
      for (const auto& r : m.reasons) reasons += (reasons.empty() ? "" : ", ") + r;
      std::string details;
      for (const auto& d : m.details) details += "; " + d;
      Throw(ErrorCode::SceneRejected, "scene " + scene_id +
                                          " was rejected by curation: " +
                                          reasons + details);
    }
    return m;
  }
  Throw(ErrorCode::SceneRejected,
        "scene " + scene_id + " not found under " + root.string());
}

PseudoDepthSummary RunPseudoDepth(const fs::path& root,
                                  const std::string& scene_id,
                                  const fs::path& out_dir,
                                  const PipelineConfig& config,
                                  const RunContext& ctx) {
  config.Validate();
  const SceneManifest m = AcceptedScene(root, scene_id, config);
  if (m.gt_dsm.empty()) {
    Throw(ErrorCode::IoError, "scene " + scene_id + " has no GT DSM");
  }
  const DsmGrid dsm = LoadDsm(root / m.gt_dsm);
  PseudoDepthSummary summary;
  summary.plane = MakeNearPlane(m.z_max, config.near_delta);
  fs::create_directories(out_dir);

  for (const ManifestView& v : m.views) {
    if (!v.used) continue;
    try {
      if (v.rpc.empty()) Throw(ErrorCode::IoError, "missing RPC file");
      const RpcModel model = LoadRpc(root / v.rpc);
      const auto size = ProbeImageSize(root / v.image);
      if (!size) Throw(ErrorCode::IoError, "cannot read image size of " + v.image);
      PseudoDepthMap result =
          BuildPseudoDepthMap(model, dsm, summary.plane, dsm.frame(),
                              size->width, size->height, config.intersect);
      result.depth.set_view_id(v.view_id);
      SavePfm(result.depth, out_dir / (v.view_id + "_DEPTH.pfm"));

      const PseudoDepthStats& s = result.stats;
      ordered_json side = Provenance(ctx, "pseudo-depth");
      side["view_id"] = v.view_id;
      side["z_ref"] = summary.plane.z_ref;
      side["z_max"] = summary.plane.z_max;
      side["delta"] = summary.plane.delta;
      side["width"] = size->width;
      side["height"] = size->height;
      side["valid_fraction"] = s.valid_fraction;
      side["valid_pixels"] = s.valid;
      side["not_converged"] = s.not_converged;
      side["exited_footprint"] = s.exited_footprint;
      side["localize_failures"] = s.localize_failures;
      side["mean_iterations"] = s.mean_iterations;
      side["max_iterations"] = s.max_iterations;
      side["intersect"] = PipelineJson(config)["intersect"];
      WriteJson(out_dir / (v.view_id + "_DEPTH.json"), side);
      summary.views.push_back(v.view_id);
      summary.stats.push_back(s);
    } catch (const Error& e) {
      RethrowForView(e, v.view_id);
    }
  }
  return summary;
}

ReconstructSummary RunReconstruct(const fs::path& root,
                                  const std::string& scene_id,
                                  const fs::path& depth_dir,
                                  const fs::path& out_path,
                                  const PipelineConfig& config,
                                  const RunContext& ctx) {
  config.Validate();
  const SceneManifest m = AcceptedScene(root, scene_id, config);
  if (!config.cell_size && !m.grid) {
    Throw(ErrorCode::ConfigError,
          "reconstruction needs a cell size when the scene has no GT DSM");
  }
  const double cs = config.cell_size ? *config.cell_size : m.grid->cell_size;
  const NearPlane plane = MakeNearPlane(m.z_max, config.near_delta);

  std::vector<DepthMap> maps;
  std::vector<ViewCamera> cameras;
  std::vector<std::string> missing;
  for (const ManifestView& v : m.views) {
    if (!v.used) continue;
    const fs::path depth_path = depth_dir / (v.view_id + "_DEPTH.pfm");
    if (!fs::exists(depth_path)) {
      missing.push_back(v.view_id);
      continue;
    }
    try {
      cameras.push_back(
          {v.view_id, LoadRpc(root / v.rpc), plane, m.z_min - config.bracket_below});
      maps.push_back(LoadPfm(depth_path, v.view_id));
    } catch (const Error& e) {
      RethrowForView(e, v.view_id);
    }
  }
  if (maps.empty()) {
    Throw(ErrorCode::IoError, "no depth maps for scene " + scene_id + " in " +
                                  depth_dir.string());
  }

  GridSpec grid;
  if (m.grid) {
    grid = *m.grid;
    if (std::abs(grid.cell_size - cs) > 1e-9) {
      const double extent_e = grid.cols * grid.cell_size;
      const double extent_n = grid.rows * grid.cell_size;
      grid.cols = std::max(1, static_cast<int>(std::lround(extent_e / cs)));
      grid.rows = std::max(1, static_cast<int>(std::lround(extent_n / cs)));
      grid.cell_size = cs;
    }
  }
  const LocalFrame frame =
      m.grid ? m.grid->frame()
             : LocalFrame(cameras[0].model.lon_off, cameras[0].model.lat_off);

  ReconstructSummary out;
  out.fused = FuseDepths(maps, cameras, frame, config.fusion);
  const GeoPointCloud cloud =
      Aggregate(out.fused.maps, cameras, frame, config.stride);
  out.points = cloud.size();
  out.skipped = cloud.skipped;
  if (!m.grid) {
    if (cloud.points.empty()) {
      Throw(ErrorCode::EmptyOutput, "no points to rasterize");
    }
    double e0 = 1e300, e1 = -1e300, n0 = 1e300, n1 = -1e300;
    for (const GeodeticPoint& p : cloud.points) {
      const LocalPoint q = frame.ToLocal(p);
      e0 = std::min(e0, q.east);
      e1 = std::max(e1, q.east);
      n0 = std::min(n0, q.north);
      n1 = std::max(n1, q.north);
    }
    const GeodeticPoint origin = frame.FromLocal({e0, n0, 0.0});
    grid = {static_cast<int>(std::floor((e1 - e0) / cs)) + 1,
            static_cast<int>(std::floor((n1 - n0) / cs)) + 1, origin.lon,
            origin.lat, cs};
  }
  grid.Validate();
  out.dsm = RasterizeP90(cloud, grid);
  if (config.fill_holes) out.dsm = FillHoles(out.dsm, config.fill_radius);
  SaveDsm(out.dsm, out_path);

  ordered_json prov = Provenance(ctx, "reconstruct");
  prov["scene_id"] = scene_id;
  prov["config"] = PipelineJson(config);
  prov["near_plane"] = {{"z_ref", plane.z_ref},
                        {"z_max", plane.z_max},
                        {"delta", plane.delta}};
  prov["grid"] = GridJson(grid);
  ordered_json views = ordered_json::array();
  for (std::size_t v = 0; v < maps.size(); ++v) {
    const double in = static_cast<double>(out.fused.input_valid[v]);
    views.push_back({{"view_id", cameras[v].view_id},
                     {"scale", out.fused.alignment[v].scale},
                     {"shift", out.fused.alignment[v].shift},
                     {"input_valid", out.fused.input_valid[v]},
                     {"dropped", out.fused.dropped[v]},
                     {"drop_rate", in > 0 ? out.fused.dropped[v] / in : 0.0}});
    out.views.push_back(cameras[v].view_id);
  }
  prov["views"] = std::move(views);
  prov["missing_depth"] = missing;
  prov["points"] = out.points;
  prov["skipped_out_of_bracket"] = out.skipped;
  prov["valid_cells"] = out.dsm.ValidCount();
  fs::path prov_path = out_path;
  prov_path.replace_extension(".json");
  WriteJson(prov_path, prov);
  return out;
}

DsmEvalReport RunEvaluate(const fs::path& pred, const fs::path& gt,
                          bool align_median,
                          const std::optional<fs::path>& json_out,
                          const std::string& scene_name) {
  const DsmEvalReport report =
      EvaluateDsm(LoadDsm(pred), LoadDsm(gt), align_median);
  if (json_out) WriteTextFile(*json_out, ReportToJson(report, scene_name));
  return report;
}

std::string RpcInfo(const fs::path& rpc_path) {
  const RpcModel m = LoadRpc(rpc_path);
  std::ostringstream out;
  out.precision(10);
  out << "file: " << rpc_path.string() << "\n"
      << "line:   off " << m.line_off << "  scale " << m.line_scale << "\n"
      << "samp:   off " << m.samp_off << "  scale " << m.samp_scale << "\n"
      << "lat:    off " << m.lat_off << "  scale " << m.lat_scale << "\n"
      << "lon:    off " << m.lon_off << "  scale " << m.lon_scale << "\n"
      << "height: off " << m.height_off << "  scale " << m.height_scale << "\n";
  auto nonzero = [](const RpcCoefficients& c) {
    return std::count_if(c.begin(), c.end(), [](double v) { return v != 0.0; });
  };
  out << "nonzero coefficients: line_num " << nonzero(m.line_num)
      << ", line_den " << nonzero(m.line_den) << ", samp_num "
      << nonzero(m.samp_num) << ", samp_den " << nonzero(m.samp_den) << "\n";
  out << "footprint at height " << m.height_off << " m:\n";
  const double l0 = m.line_off - m.line_scale, l1 = m.line_off + m.line_scale;
  const double s0 = m.samp_off - m.samp_scale, s1 = m.samp_off + m.samp_scale;
  const std::pair<const char*, ImageCoord> corners[] = {
      {"upper-left", {l0, s0}},
      {"upper-right", {l0, s1}},
      {"lower-right", {l1, s1}},
      {"lower-left", {l1, s0}}};
  for (const auto& [name, c] : corners) {
    out << "  " << name << " (line " << c.line << ", samp " << c.samp << "): ";
    try {
      const GeodeticPoint g = Localize(m, c, m.height_off);
      out << "lon " << g.lon << ", lat " << g.lat << "\n";
    } catch (const Error& e) {
      out << "n/a (" << e.what() << ")\n";
    }
  }
  return out.str();
}

}  // namespace satdsm
