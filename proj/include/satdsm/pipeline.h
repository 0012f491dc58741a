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

// Stage orchestration behind the command-line tool. Each Run* function
// reads its inputs from disk, writes its outputs plus a provenance JSON,
// and returns a summary.

#ifndef SATDSM_PIPELINE_H
#define SATDSM_PIPELINE_H

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "satdsm/config.h"
#include "satdsm/dataset_curation.h"
#include "satdsm/depth_fusion.h"
#include "satdsm/metrics.h"
#include "satdsm/pseudo_depth.h"
#include "satdsm/synthetic_scene.h"

namespace satdsm {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunContext {
  bool deterministic = false;  // zero every timestamp in sidecars
  std::string command;
};

struct SynthOptions {
  std::string scene_id = "SYN";
  SyntheticSceneSpec scene;
  std::vector<SyntheticView> views;      // centered on the scene
  std::vector<std::string> acquisitions;  // one per view, or a single one
  double near_delta = kDefaultNearPlaneMargin;
  bool render_depth = true;
};

// Keys: [scene] id, cols, rows, cell_size, ground_alt, buildings,
// height_min, height_max, size_min, size_max, terrain (flat|sinusoidal),
// amplitude, period, seed, origin_lon, origin_lat; [views] off_nadir,
// azimuth (lists), gsd, width, height, acquisition (list);
// [synth] render_depth, near_delta.
SynthOptions SynthOptionsFromConfig(const Config& config);

struct PipelineConfig {
  FusionConfig fusion;
  CurationConfig curation;
  IntersectOptions intersect;
  double near_delta = kDefaultNearPlaneMargin;
  double bracket_below = 100.0;  // back-projection bracket below z_min, m
  int stride = 1;
  bool fill_holes = false;
  int fill_radius = 2;
  bool align_median = false;
  std::optional<double> cell_size;

  void Validate() const;
};

// Keys: [fusion] max_depth, consistency_tol, min_consistent_views,
// alignment, alignment_iterations, alignment_stride, huber_width;
// [curation] min_views, timestamp_keys, hemisphere; [pseudo_depth]
// near_delta, damping, tolerance, max_iterations; [reconstruct] stride,
// fill_holes, fill_radius, cell_size, bracket_below; [evaluate]
// align_median.
PipelineConfig PipelineConfigFromConfig(const Config& config);

// One affine RPC per configured view, in the DSM's local frame.
std::vector<RpcModel> SynthCameras(const SynthOptions& options,
                                   const DsmGrid& dsm);

struct SynthSummary {
  std::filesystem::path dir;
  std::size_t views = 0;
  double z_min = 0.0;
  double z_max = 0.0;
};

SynthSummary RunSynth(const SynthOptions& options,
                      const std::filesystem::path& out_dir,
                      const RunContext& ctx);

// Writes <scene>.manifest.json per scene, rejections.csv and
// curation_provenance.json into out_dir.
CurationResult RunCurate(const std::filesystem::path& root,
                         const std::filesystem::path& out_dir,
                         const PipelineConfig& config, const RunContext& ctx);

// Curates root and returns the named scene, throwing SceneRejected if it is
// not accepted.
SceneManifest AcceptedScene(const std::filesystem::path& root,
                            const std::string& scene_id,
                            const PipelineConfig& config);

struct PseudoDepthSummary {
  std::vector<std::string> views;
  std::vector<PseudoDepthStats> stats;
  NearPlane plane;
};

// One <view>_DEPTH.pfm and <view>_DEPTH.json per used view.
PseudoDepthSummary RunPseudoDepth(const std::filesystem::path& root,
                                  const std::string& scene_id,
                                  const std::filesystem::path& out_dir,
                                  const PipelineConfig& config,
                                  const RunContext& ctx);

struct ReconstructSummary {
  DsmGrid dsm;
  FusedDepthSet fused;
  std::size_t points = 0;
  std::size_t skipped = 0;
  std::vector<std::string> views;
};

// Reads <view>_DEPTH.pfm from depth_dir for each used view, then clamps,
// aligns, fuses, back-projects, rasterizes and optionally fills holes.
// Writes the DSM to out_path and the provenance next to it (.json).
ReconstructSummary RunReconstruct(const std::filesystem::path& root,
                                  const std::string& scene_id,
                                  const std::filesystem::path& depth_dir,
                                  const std::filesystem::path& out_path,
                                  const PipelineConfig& config,
                                  const RunContext& ctx);

DsmEvalReport RunEvaluate(const std::filesystem::path& pred,
                          const std::filesystem::path& gt, bool align_median,
                          const std::optional<std::filesystem::path>& json_out,
                          const std::string& scene_name);

// Human-readable dump of an RPC file and the ground footprint of its image
// corners at the offset height.
std::string RpcInfo(const std::filesystem::path& rpc_path);

}  // namespace satdsm

#endif  // SATDSM_PIPELINE_H
