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

// Scene curation for training pairs: RGB/CLS/RPC alignment, multi-view
// coverage and winter exclusion from IMD acquisition timestamps.
//
// Files follow <SCENE>_<NNN>_<TYPE>.<ext> with TYPE one of RGB, CLS, RPC,
// IMD and DEPTH. Per-scene files are <SCENE>_DSM.txt (ground truth in the
// ASCII DSM format) and <SCENE>_META.json ({"z_min": .., "z_max": ..}).
// Scene ids may themselves contain underscores.

#ifndef SATDSM_DATASET_CURATION_H
#define SATDSM_DATASET_CURATION_H

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satdsm/dsm_grid.h"

namespace satdsm {

struct Timestamp {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  double second = 0.0;

  std::string ToIso() const;  // YYYY-MM-DDTHH:MM:SS.ffffffZ
  bool operator==(const Timestamp& other) const = default;
};

// ISO-8601 date-time, optional fractional seconds, optional trailing Z.
// Throws MalformedTimestamp, including for years outside [1990, 2100).
Timestamp ParseIsoTimestamp(std::string_view text);

struct ImdRecord {
  Timestamp acquired;
  std::string timestamp_key;  // which key supplied the timestamp
  std::string image_id;
  std::optional<double> sun_elevation_deg;
};

std::vector<std::string> DefaultTimestampKeys();

// Reads "key = value;" lines. The first key of `keys` present in the text
// wins. Throws NoTimestampKey or MalformedTimestamp.
ImdRecord ParseImd(std::string_view text,
                   const std::vector<std::string>& keys = DefaultTimestampKeys());

enum class Hemisphere { kNorth, kSouth };

std::string_view HemisphereName(Hemisphere h);
Hemisphere HemisphereOf(double latitude);

// December to February in the north, June to August in the south.
bool IsWinter(const ImdRecord& record, Hemisphere hemisphere);

inline constexpr const char* kWinterRule =
    "calendar months: DJF north, JJA south; hemisphere from scene latitude";

struct CurationFileName {
  std::string scene;
  std::string index;  // the NNN part, kept as text
  std::string type;
  std::string extension;

  std::string stem() const { return scene + "_" + index; }
};

std::optional<CurationFileName> ParseCurationFileName(std::string_view name);

struct ImageSize {
  int width = 0;
  int height = 0;
  bool operator==(const ImageSize& other) const = default;
};

// Reads just enough of a PNG, PNM (P1-P6), PFM or baseline TIFF header to
// report the raster size. Returns nullopt for unreadable or unknown files.
std::optional<ImageSize> ProbeImageSize(const std::filesystem::path& path);

struct ViewFiles {
  std::string view_id;  // <SCENE>_<NNN>
  std::optional<std::filesystem::path> rgb, cls, rpc, imd, depth;
};

struct SceneListing {
  std::string scene_id;
  std::map<std::string, ViewFiles> views;  // keyed by view id
  std::optional<std::filesystem::path> dsm;
  std::optional<std::filesystem::path> meta;
};

// Groups naming-convention files found in root and its immediate
// subdirectories by scene. Paths are returned relative to root.
std::vector<SceneListing> ScanSceneTree(const std::filesystem::path& root);

struct Verdict {
  bool ok = true;
  std::vector<std::string> details;
};

// Every RGB image needs a CLS and an RPC file with the same stem, and the
// RGB and CLS rasters must have the same size.
Verdict CheckAlignment(const SceneListing& listing,
                       const std::filesystem::path& root);

struct ManifestView {
  std::string view_id;
  std::string image, cls, rpc, imd, depth;  // root-relative, empty if absent
  std::optional<Timestamp> acquired;
  bool winter = false;
  bool used = true;  // false for views excluded as winter acquisitions
};

struct SceneManifest {
  std::string scene_id;
  std::vector<ManifestView> views;
  double z_min = 0.0;
  double z_max = 0.0;
  std::string altitude_source;  // "meta" or "gt_dsm"
  std::string gt_dsm;           // root-relative, empty if absent
  std::optional<GridSpec> grid;
  Hemisphere hemisphere = Hemisphere::kNorth;
  bool aligned = false;
  bool coverage_ok = false;
  bool winter = false;
  std::vector<std::string> reasons;  // "alignment", "coverage", "winter"
  std::vector<std::string> details;

  bool accepted() const { return aligned && coverage_ok && !winter; }
  std::size_t UsedViewCount() const;
};

struct CurationConfig {
  int min_views = 3;
  std::vector<std::string> timestamp_keys = DefaultTimestampKeys();
  std::optional<Hemisphere> hemisphere;  // overrides the latitude sign
};

// coverage_ok iff at least min_views views are used.
Verdict CheckCoverage(const SceneManifest& manifest, int min_views = 3);

struct CurationResult {
  std::vector<SceneManifest> scenes;

  std::vector<const SceneManifest*> Accepted() const;
};

// One manifest per scene, sorted by scene id. Views without an IMD file
// are kept. Views whose IMD falls in winter are marked unused. A scene is
// flagged winter when it has dated views and all of them are winter. The
// altitude range comes from the META file, else the GT DSM extrema; with
// neither the call throws NoAltitudeSource.
CurationResult BuildManifest(const std::filesystem::path& root,
                             const CurationConfig& config = {});

std::string ManifestToJson(const SceneManifest& manifest);
SceneManifest ManifestFromJson(std::string_view text);

// Header "scene,accepted,aligned,coverage_ok,winter,reasons" with reasons
// joined by ';'.
std::string RejectionReportCsv(const CurationResult& result);

struct SceneSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
};

// Deterministic scene-level split: ids are sorted, shuffled with the seed
// and the first round(val_fraction * n) go to val.
SceneSplit SplitScenes(std::vector<std::string> scene_ids, double val_fraction,
                       std::uint64_t seed);

}  // namespace satdsm

#endif  // SATDSM_DATASET_CURATION_H
