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

// satdsm command-line tool.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
// 3 malformed input file, 4 numerical failure, 5 curation rejection,
// 6 evaluation error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "satdsm/config.h"
#include "satdsm/errors.h"
#include "satdsm/parallel.h"
#include "satdsm/pipeline.h"

namespace fs = std::filesystem;
using namespace satdsm;

namespace {

std::string JoinArgs(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satdsm: satellite DSM geometry toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 1;
  bool deterministic = false;
  app.add_option("--config", config_path, "TOML-style configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", deterministic,
               "Zero timestamps in sidecar files");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scene tree");
  std::string synth_out;
  std::optional<int> synth_seed;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Override scene.seed");

  // curate
  auto* curate = app.add_subcommand("curate", "Curate a scene tree");
  std::string curate_root, curate_out;
  curate->add_option("root", curate_root, "Scene root")->required()
      ->check(CLI::ExistingDirectory);
  curate->add_option("--out", curate_out, "Manifest directory")->required();

  // pseudo-depth
  auto* pseudo = app.add_subcommand("pseudo-depth",
                                    "Build pseudo-depth maps from the GT DSM");
  std::string pd_root, pd_scene, pd_out;
  std::optional<double> pd_delta, pd_damping;
  pseudo->add_option("root", pd_root, "Scene root")->required()
      ->check(CLI::ExistingDirectory);
  pseudo->add_option("--scene", pd_scene, "Scene id")->required();
  pseudo->add_option("--out", pd_out, "Output directory")->required();
  pseudo->add_option("--delta", pd_delta, "Near-plane margin in meters");
  pseudo->add_option("--damping", pd_damping, "Fixed-point damping in [0, 1)");

  // reconstruct
  auto* recon = app.add_subcommand("reconstruct",
                                   "Fuse depth maps and rasterize a DSM");
  std::string rc_root, rc_scene, rc_depth, rc_out;
  std::optional<double> rc_cell, rc_max_depth;
  std::optional<int> rc_stride;
  std::optional<std::string> rc_alignment;
  bool rc_fill = false;
  recon->add_option("root", rc_root, "Scene root")->required()
      ->check(CLI::ExistingDirectory);
  recon->add_option("--scene", rc_scene, "Scene id")->required();
  recon->add_option("--depth-dir", rc_depth, "Directory of <view>_DEPTH.pfm")
      ->required();
  recon->add_option("--out", rc_out, "Output DSM path")->required();
  recon->add_option("--cell-size", rc_cell, "DSM cell size in meters");
  recon->add_option("--stride", rc_stride, "Pixel stride for aggregation");
  recon->add_option("--max-depth", rc_max_depth, "Depth clamp in meters");
  recon->add_option("--alignment", rc_alignment,
                    "none, scale or scale+shift");
  recon->add_flag("--fill-holes", rc_fill, "Fill small nodata holes");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Compare a DSM against GT");
  std::string ev_pred, ev_gt, ev_scene = "scene";
  std::optional<std::string> ev_json;
  bool ev_align = false;
  eval->add_option("pred", ev_pred, "Predicted DSM")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("gt", ev_gt, "Ground-truth DSM")->required()
      ->check(CLI::ExistingFile);
  eval->add_flag("--align-median", ev_align,
                 "Subtract the median signed error first");
  eval->add_option("--json", ev_json, "Write the report as JSON");
  eval->add_option("--scene", ev_scene, "Row label");

  // rpc-info
  auto* info = app.add_subcommand("rpc-info", "Print an RPC model");
  std::string info_path;
  info->add_option("rpc", info_path, "RPC file")->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    SetNumThreads(threads);
    Config config = config_path.empty() ? Config() : Config::Load(config_path);
    const RunContext ctx{deterministic, JoinArgs(argc, argv)};

    if (synth->parsed()) {
      if (synth_seed) config.Set("scene.seed", std::to_string(*synth_seed));
      const SynthSummary s =
          RunSynth(SynthOptionsFromConfig(config), synth_out, ctx);
      std::cout << "wrote " << s.views << " views to " << s.dir.string()
                << " (z " << s.z_min << " .. " << s.z_max << ")\n";
      return 0;
    }

    PipelineConfig pc = PipelineConfigFromConfig(config);
    if (curate->parsed()) {
      const CurationResult r = RunCurate(curate_root, curate_out, pc, ctx);
      for (const SceneManifest& m : r.scenes) {
        std::cout << m.scene_id << ": "
                  << (m.accepted() ? "accepted" : "rejected");
        for (const auto& reason : m.reasons) std::cout << " " << reason;
        std::cout << "\n";
      }
      return 0;
    }
    if (pseudo->parsed()) {
      if (pd_delta) pc.near_delta = *pd_delta;
      if (pd_damping) pc.intersect.damping = *pd_damping;
      const PseudoDepthSummary s =
          RunPseudoDepth(pd_root, pd_scene, pd_out, pc, ctx);
      for (std::size_t i = 0; i < s.views.size(); ++i) {
        std::cout << s.views[i] << ": valid fraction "
                  << s.stats[i].valid_fraction << "\n";
      }
      return 0;
    }
    if (recon->parsed()) {
      if (rc_cell) pc.cell_size = *rc_cell;
      if (rc_stride) pc.stride = *rc_stride;
      if (rc_max_depth) pc.fusion.max_depth = *rc_max_depth;
      if (rc_alignment) pc.fusion.alignment = ParseAlignmentMode(*rc_alignment);
      if (rc_fill) pc.fill_holes = true;
      const ReconstructSummary s =
          RunReconstruct(rc_root, rc_scene, rc_depth, rc_out, pc, ctx);
      std::cout << "rasterized " << s.points << " points into "
                << s.dsm.ValidCount() << " cells\n";
      return 0;
    }
    if (eval->parsed()) {
      const bool align = ev_align || pc.align_median;
      std::optional<fs::path> json_out;
      if (ev_json) json_out = *ev_json;
      const DsmEvalReport r = RunEvaluate(ev_pred, ev_gt, align, json_out, ev_scene);
      std::cout << FormatReportTable({{ev_scene, r}});
      return 0;
    }
    if (info->parsed()) {
      std::cout << RpcInfo(info_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "satdsm: " << e.what() << "\n";
    return static_cast<int>(e.family());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "satdsm: " << e.what() << "\n";
    return static_cast<int>(ErrorFamily::Io);
  } catch (const std::exception& e) {
    std::cerr << "satdsm: " << e.what() << "\n";
    return static_cast<int>(ErrorFamily::Numerical);
  }
  return 1;
}
