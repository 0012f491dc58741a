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

#include "satdsm/dataset_curation.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "satdsm/errors.h"
#include "satdsm/rpc_model.h"
#include "satdsm/text_util.h"

namespace fs = std::filesystem;

namespace satdsm {

namespace {

const std::set<std::string, std::less<>> kViewTypes = {"RGB", "CLS", "RPC",
                                                       "IMD", "DEPTH"};

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

std::optional<int> FixedInt(std::string_view s) {
  if (!AllDigits(s)) return std::nullopt;
  const auto v = ParseInt(s);
  if (!v) return std::nullopt;
  return static_cast<int>(*v);
}

int DaysInMonth(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return month == 2 && leap ? 29 : kDays[month - 1];
}

[[noreturn]] void BadTimestamp(std::string_view text) {
  Throw(ErrorCode::MalformedTimestamp,
        "cannot parse timestamp '" + std::string(text) + "'");
}

std::string StripValue(std::string_view value) {
  value = Trim(value);
  while (!value.empty() && value.back() == ';') value.remove_suffix(1);
  value = Trim(value);
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  return std::string(value);
}

std::map<std::string, std::string> ParseKeyValues(std::string_view text) {
  std::map<std::string, std::string> out;
  for (std::string_view line : SplitLines(text)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(Trim(line.substr(0, eq)));
    if (key.empty() || out.count(key)) continue;
    out.emplace(key, StripValue(line.substr(eq + 1)));
  }
  return out;
}

std::string RelativeString(const fs::path& p) { return p.generic_string(); }

std::uint32_t ReadBe32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

std::optional<ImageSize> ProbePng(const std::string& head) {
  if (head.size() < 24) return std::nullopt;
  if (head.compare(12, 4, "IHDR") != 0) return std::nullopt;
  const auto* u = reinterpret_cast<const unsigned char*>(head.data());
  return ImageSize{static_cast<int>(ReadBe32(u + 16)),
                   static_cast<int>(ReadBe32(u + 20))};
}

// Magic, width, height tokens of a PNM or PFM header; '#' comments are
// skipped in PNM.
std::optional<ImageSize> ProbeNetpbm(const std::string& head) {
  std::vector<std::string> tokens;
  std::string token;
  bool comment = false;
  for (char ch : head) {
    if (comment) {
      if (ch == '\n' || ch == '\r') comment = false;
      continue;
    }
    if (ch == '#') {
      comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) tokens.push_back(std::move(token));
      token.clear();
      if (tokens.size() == 3) break;
    } else {
      token += ch;
    }
  }
  if (tokens.size() < 3) return std::nullopt;
  const auto w = ParseInt(tokens[1]);
  const auto h = ParseInt(tokens[2]);
  if (!w || !h || *w <= 0 || *h <= 0) return std::nullopt;
  return ImageSize{static_cast<int>(*w), static_cast<int>(*h)};
}

std::optional<ImageSize> ProbeTiff(const std::string& data) {
  if (data.size() < 8) return std::nullopt;
  const bool little = data[0] == 'I';
  const auto* u = reinterpret_cast<const unsigned char*>(data.data());
  auto u16 = [&](std::size_t at) -> std::uint32_t {
    return little ? (u[at] | (u[at + 1] << 8)) : ((u[at] << 8) | u[at + 1]);
  };
  auto u32 = [&](std::size_t at) -> std::uint32_t {
    return little ? (std::uint32_t{u[at]} | (std::uint32_t{u[at + 1]} << 8) |
                     (std::uint32_t{u[at + 2]} << 16) |
                     (std::uint32_t{u[at + 3]} << 24))
                  : ReadBe32(u + at);
  };
  if (u16(2) != 42) return std::nullopt;
  const std::size_t ifd = u32(4);
  if (ifd + 2 > data.size()) return std::nullopt;
  const std::uint32_t entries = u16(ifd);
  std::optional<int> width, height;
  for (std::uint32_t e = 0; e < entries; ++e) {
    const std::size_t at = ifd + 2 + 12 * e;
    if (at + 12 > data.size()) return std::nullopt;
    const std::uint32_t tag = u16(at);
    const std::uint32_t type = u16(at + 2);
    const std::uint32_t value = type == 3 ? u16(at + 8) : u32(at + 8);
    if (tag == 256) width = static_cast<int>(value);
    if (tag == 257) height = static_cast<int>(value);
  }
  if (!width || !height) return std::nullopt;
  return ImageSize{*width, *height};
}

std::optional<double> JsonNumber(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

std::string Timestamp::ToIso() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%09.6fZ", year,
                month, day, hour, minute, second);
  return buf;
}

Timestamp ParseIsoTimestamp(std::string_view text) {
  std::string_view s = Trim(text);
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
  // YYYY-MM-DDTHH:MM:SS
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' ||
      (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':') {
    BadTimestamp(text);
  }
  Timestamp t;
  const auto year = FixedInt(s.substr(0, 4));
  const auto month = FixedInt(s.substr(5, 2));
  const auto day = FixedInt(s.substr(8, 2));
  const auto hour = FixedInt(s.substr(11, 2));
  const auto minute = FixedInt(s.substr(14, 2));
  const auto whole = FixedInt(s.substr(17, 2));
  if (!year || !month || !day || !hour || !minute || !whole) BadTimestamp(text);
  double fraction = 0.0;
  if (s.size() > 19) {
    const std::string_view frac = s.substr(19);
    if (frac[0] != '.' || !AllDigits(frac.substr(1))) BadTimestamp(text);
    fraction = *ParseDouble(std::string("0") + std::string(frac));
  }
  t.year = *year;
  t.month = *month;
  t.day = *day;
  t.hour = *hour;
  t.minute = *minute;
  t.second = *whole + fraction;
  if (t.year < 1990 || t.year >= 2100) BadTimestamp(text);
  if (t.month < 1 || t.month > 12) BadTimestamp(text);
  if (t.day < 1 || t.day > DaysInMonth(t.year, t.month)) BadTimestamp(text);
  if (t.hour > 23 || t.minute > 59 || *whole > 60) BadTimestamp(text);
  return t;
}

std::vector<std::string> DefaultTimestampKeys() {
  return {"firstLineTime", "earliestAcqTime", "generationTime"};
}

ImdRecord ParseImd(std::string_view text,
                   const std::vector<std::string>& keys) {
  const auto values = ParseKeyValues(text);
  ImdRecord rec;
  bool found = false;
  for (const std::string& key : keys) {
    const auto it = values.find(key);
    if (it == values.end()) continue;
    rec.acquired = ParseIsoTimestamp(it->second);
    rec.timestamp_key = key;
    found = true;
    break;
  }
  if (!found) {
    Throw(ErrorCode::NoTimestampKey, "IMD text has no acquisition timestamp");
  }
  for (const char* key : {"imageId", "productCatalogId", "catId"}) {
    const auto it = values.find(key);
    if (it != values.end()) {
      rec.image_id = it->second;
      break;
    }
  }
  for (const char* key : {"meanSunEl", "sunEl"}) {
    const auto it = values.find(key);
    if (it == values.end()) continue;
    if (const auto v = ParseDouble(it->second)) {
      rec.sun_elevation_deg = *v;
      break;
    }
  }
  return rec;
}

std::string_view HemisphereName(Hemisphere h) {
  return h == Hemisphere::kNorth ? "north" : "south";
}

Hemisphere HemisphereOf(double latitude) {
  return latitude < 0.0 ? Hemisphere::kSouth : Hemisphere::kNorth;
}

bool IsWinter(const ImdRecord& record, Hemisphere hemisphere) {
  const int m = record.acquired.month;
  if (hemisphere == Hemisphere::kNorth) return m == 12 || m == 1 || m == 2;
  return m == 6 || m == 7 || m == 8;
}

std::optional<CurationFileName> ParseCurationFileName(std::string_view name) {
  const auto dot = name.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  const std::string_view base = name.substr(0, dot);
  const auto u1 = base.rfind('_');
  if (u1 == std::string_view::npos) return std::nullopt;
  const auto u2 = base.rfind('_', u1 == 0 ? 0 : u1 - 1);
  if (u2 == std::string_view::npos || u2 == 0 || u2 >= u1) return std::nullopt;
  CurationFileName f;
  f.scene = std::string(base.substr(0, u2));
  f.index = std::string(base.substr(u2 + 1, u1 - u2 - 1));
  f.type = std::string(base.substr(u1 + 1));
  f.extension = std::string(name.substr(dot + 1));
  if (!AllDigits(f.index) || !kViewTypes.count(f.type)) return std::nullopt;
  return f;
}

std::optional<ImageSize> ProbeImageSize(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string head(4096, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  if (head.size() >= 8 && head.compare(0, 8, "\x89PNG\r\n\x1a\n") == 0) {
    return ProbePng(head);
  }
  if (head.size() >= 2 && head[0] == 'P' &&
      std::string_view("123456fF").find(head[1]) != std::string_view::npos) {
    return ProbeNetpbm(head);
  }
  if (head.size() >= 4 && (head.compare(0, 4, "II*\0", 4) == 0 ||
                           head.compare(0, 4, "MM\0*", 4) == 0)) {
    // The first IFD may sit anywhere in the file.
    std::ifstream full(path, std::ios::binary);
    std::ostringstream all;
    all << full.rdbuf();
    return ProbeTiff(all.str());
  }
  return std::nullopt;
}

std::vector<SceneListing> ScanSceneTree(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    Throw(ErrorCode::IoError, "not a directory: " + root.string());
  }
  std::vector<fs::path> files;
  auto collect = [&](const fs::path& dir) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) {
        files.push_back(fs::relative(entry.path(), root));
      }
    }
  };
  collect(root);
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) collect(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, SceneListing> scenes;
  for (const fs::path& rel : files) {
    const std::string name = rel.filename().string();
    if (const auto f = ParseCurationFileName(name)) {
      SceneListing& scene = scenes[f->scene];
      scene.scene_id = f->scene;
      ViewFiles& view = scene.views[f->stem()];
      view.view_id = f->stem();
      std::optional<fs::path>* slot =
          f->type == "RGB"   ? &view.rgb
          : f->type == "CLS" ? &view.cls
          : f->type == "RPC" ? &view.rpc
          : f->type == "IMD" ? &view.imd
                             : &view.depth;
      if (!*slot) *slot = rel;
      continue;
    }
    for (const char* suffix : {"_DSM.txt", "_META.json"}) {
      const std::string_view sv(suffix);
      if (name.size() > sv.size() &&
          name.compare(name.size() - sv.size(), sv.size(), sv) == 0) {
        const std::string id = name.substr(0, name.size() - sv.size());
        SceneListing& scene = scenes[id];
        scene.scene_id = id;
        auto& slot = sv == "_DSM.txt" ? scene.dsm : scene.meta;
        if (!slot) slot = rel;
      }
    }
  }
  std::vector<SceneListing> out;
  for (auto& [id, scene] : scenes) out.push_back(std::move(scene));
  return out;
}

Verdict CheckAlignment(const SceneListing& listing, const fs::path& root) {
  Verdict v;
  std::size_t rgb_count = 0;
  for (const auto& [id, view] : listing.views) {
    if (!view.rgb) continue;
    ++rgb_count;
    if (!view.cls) v.details.push_back("missing CLS for " + id);
    if (!view.rpc) v.details.push_back("missing RPC for " + id);
    if (!view.cls) continue;
    const auto rgb_size = ProbeImageSize(root / *view.rgb);
    const auto cls_size = ProbeImageSize(root / *view.cls);
    if (!rgb_size || !cls_size) {
      v.details.push_back("unreadable raster for " + id);
    } else if (!(*rgb_size == *cls_size)) {
      std::ostringstream msg;
      msg << "dimension mismatch for " << id << ": RGB " << rgb_size->width
          << "x" << rgb_size->height << " vs CLS " << cls_size->width << "x"
          << cls_size->height;
      v.details.push_back(msg.str());
    }
  }
  if (rgb_count == 0) v.details.push_back("no RGB images");
  v.ok = v.details.empty();
  return v;
}

std::size_t SceneManifest::UsedViewCount() const {
  return static_cast<std::size_t>(std::count_if(
      views.begin(), views.end(), [](const ManifestView& v) { return v.used; }));
}

Verdict CheckCoverage(const SceneManifest& manifest, int min_views) {
  Verdict v;
  const std::size_t used = manifest.UsedViewCount();
  v.ok = used >= static_cast<std::size_t>(std::max(min_views, 0));
  if (!v.ok) {
    v.details.push_back(std::to_string(used) + " usable views, " +
                        std::to_string(min_views) + " required");
  }
  return v;
}

std::vector<const SceneManifest*> CurationResult::Accepted() const {
  std::vector<const SceneManifest*> out;
  for (const auto& s : scenes) {
    if (s.accepted()) out.push_back(&s);
  }
  return out;
}

CurationResult BuildManifest(const fs::path& root,
                             const CurationConfig& config) {
  CurationResult result;
  for (const SceneListing& listing : ScanSceneTree(root)) {
    SceneManifest m;
    m.scene_id = listing.scene_id;

    // Altitude range and grid.
    std::optional<DsmGrid> gt;
    if (listing.dsm) {
      m.gt_dsm = RelativeString(*listing.dsm);
      gt = LoadDsm(root / *listing.dsm);
      m.grid = gt->spec();
    }
    std::optional<std::string> meta_hemisphere;
    bool have_range = false;
    if (listing.meta) {
      const auto j = nlohmann::json::parse(ReadTextFile(root / *listing.meta),
                                           nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        Throw(ErrorCode::MalformedFile,
              "scene metadata is not a JSON object: " + listing.meta->string());
      }
      const auto lo = JsonNumber(j, "z_min");
      const auto hi = JsonNumber(j, "z_max");
      if (lo && hi) {
        m.z_min = *lo;
        m.z_max = *hi;
        m.altitude_source = "meta";
        have_range = true;
      }
      if (j.contains("hemisphere") && j["hemisphere"].is_string()) {
        meta_hemisphere = j["hemisphere"].get<std::string>();
      }
    }
    if (!have_range && gt) {
      if (const auto range = gt->ValidRange()) {
        m.z_min = range->first;
        m.z_max = range->second;
        m.altitude_source = "gt_dsm";
        have_range = true;
      }
    }
    if (!have_range) {
      Throw(ErrorCode::NoAltitudeSource,
            "scene " + m.scene_id + " has neither metadata nor a GT DSM");
    }
    if (m.z_max < m.z_min) {
      Throw(ErrorCode::MalformedFile,
            "scene " + m.scene_id + " has z_max below z_min");
    }

    // Hemisphere: explicit override, metadata, RPC latitude, DSM latitude.
    double lat_sum = 0.0;
    int lat_count = 0;
    for (const auto& [id, view] : listing.views) {
      if (!view.rpc) continue;
      try {
        lat_sum += LoadRpc(root / *view.rpc).lat_off;
        ++lat_count;
      } catch (const Error&) {
      }
    }
    if (config.hemisphere) {
      m.hemisphere = *config.hemisphere;
    } else if (meta_hemisphere == "south" || meta_hemisphere == "north") {
      m.hemisphere =
          *meta_hemisphere == "south" ? Hemisphere::kSouth : Hemisphere::kNorth;
    } else if (lat_count > 0) {
      m.hemisphere = HemisphereOf(lat_sum / lat_count);
    } else if (m.grid) {
      m.hemisphere = HemisphereOf(m.grid->origin_lat);
    }

    const Verdict alignment = CheckAlignment(listing, root);
    m.aligned = alignment.ok;
    m.details = alignment.details;

    std::size_t dated = 0;
    std::size_t winter_views = 0;
    for (const auto& [id, files] : listing.views) {
      if (!files.rgb) continue;
      ManifestView v;
      v.view_id = id;
      v.image = RelativeString(*files.rgb);
      if (files.cls) v.cls = RelativeString(*files.cls);
      if (files.rpc) v.rpc = RelativeString(*files.rpc);
      if (files.depth) v.depth = RelativeString(*files.depth);
      v.used = files.cls.has_value() && files.rpc.has_value();
      if (files.imd) {
        v.imd = RelativeString(*files.imd);
        try {
          const ImdRecord rec = ParseImd(ReadTextFile(root / *files.imd),
                                         config.timestamp_keys);
          v.acquired = rec.acquired;
          v.winter = IsWinter(rec, m.hemisphere);
          ++dated;
          if (v.winter) {
            ++winter_views;
            v.used = false;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoTimestampKey &&
              e.code() != ErrorCode::MalformedTimestamp) {
            throw;
          }
          m.details.push_back(id + ": " + e.what());
        }
      }
      m.views.push_back(std::move(v));
    }
    m.winter = dated > 0 && winter_views == dated;
    if (winter_views > 0 && !m.winter) {
      m.details.push_back(std::to_string(winter_views) +
                          " winter views excluded");
    }

    const Verdict coverage = CheckCoverage(m, config.min_views);
    m.coverage_ok = coverage.ok;
    m.details.insert(m.details.end(), coverage.details.begin(),
                     coverage.details.end());

    if (!m.aligned) m.reasons.push_back("alignment");
    if (!m.coverage_ok) m.reasons.push_back("coverage");
    if (m.winter) m.reasons.push_back("winter");
    result.scenes.push_back(std::move(m));
  }
  return result;
}

std::string ManifestToJson(const SceneManifest& m) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scene_id"] = m.scene_id;
  j["accepted"] = m.accepted();
  j["verdicts"] = {{"aligned", m.aligned},
                   {"coverage_ok", m.coverage_ok},
                   {"winter", m.winter}};
  j["reasons"] = m.reasons;
  j["details"] = m.details;
  j["winter_rule"] = kWinterRule;
  j["hemisphere"] = std::string(HemisphereName(m.hemisphere));
  j["z_min"] = m.z_min;
  j["z_max"] = m.z_max;
  j["altitude_source"] = m.altitude_source;
  j["gt_dsm"] = m.gt_dsm;
  if (m.grid) {
    j["grid"] = {{"cols", m.grid->cols},
                 {"rows", m.grid->rows},
                 {"origin_lon", m.grid->origin_lon},
                 {"origin_lat", m.grid->origin_lat},
                 {"cell_size", m.grid->cell_size}};
  } else {
    j["grid"] = nullptr;
  }
  ordered_json views = ordered_json::array();
  for (const ManifestView& v : m.views) {
    ordered_json jv;
    jv["view_id"] = v.view_id;
    jv["image"] = v.image;
    jv["cls"] = v.cls;
    jv["rpc"] = v.rpc;
    jv["imd"] = v.imd;
    jv["depth"] = v.depth;
    jv["timestamp"] = v.acquired ? ordered_json(v.acquired->ToIso())
                                 : ordered_json(nullptr);
    jv["winter"] = v.winter;
    jv["used"] = v.used;
    views.push_back(std::move(jv));
  }
  j["views"] = std::move(views);
  return j.dump(2) + "\n";
}

SceneManifest ManifestFromJson(std::string_view text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    Throw(ErrorCode::MalformedFile, "manifest is not a JSON object");
  }
  try {
    SceneManifest m;
    m.scene_id = j.at("scene_id").get<std::string>();
    const auto& verdicts = j.at("verdicts");
    m.aligned = verdicts.at("aligned").get<bool>();
    m.coverage_ok = verdicts.at("coverage_ok").get<bool>();
    m.winter = verdicts.at("winter").get<bool>();
    m.reasons = j.at("reasons").get<std::vector<std::string>>();
    m.details = j.value("details", std::vector<std::string>{});
    m.hemisphere = j.value("hemisphere", "north") == "south"
                       ? Hemisphere::kSouth
                       : Hemisphere::kNorth;
    m.z_min = j.at("z_min").get<double>();
    m.z_max = j.at("z_max").get<double>();
    m.altitude_source = j.value("altitude_source", "");
    m.gt_dsm = j.value("gt_dsm", "");
    if (j.contains("grid") && j["grid"].is_object()) {
      const auto& g = j["grid"];
      GridSpec spec;
      spec.cols = g.at("cols").get<int>();
      spec.rows = g.at("rows").get<int>();
      spec.origin_lon = g.at("origin_lon").get<double>();
      spec.origin_lat = g.at("origin_lat").get<double>();
      spec.cell_size = g.at("cell_size").get<double>();
      m.grid = spec;
    }
    for (const auto& jv : j.at("views")) {
      ManifestView v;
      v.view_id = jv.at("view_id").get<std::string>();
      v.image = jv.value("image", "");
      v.cls = jv.value("cls", "");
      v.rpc = jv.value("rpc", "");
      v.imd = jv.value("imd", "");
      v.depth = jv.value("depth", "");
      if (jv.contains("timestamp") && jv["timestamp"].is_string()) {
        v.acquired = ParseIsoTimestamp(jv["timestamp"].get<std::string>());
      }
      v.winter = jv.value("winter", false);
      v.used = jv.value("used", true);
      m.views.push_back(std::move(v));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::MalformedFile, std::string("manifest: ") + e.what());
  }
}

std::string RejectionReportCsv(const CurationResult& result) {
  std::ostringstream out;
  out << "scene,accepted,aligned,coverage_ok,winter,reasons\n";
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const SceneManifest& m : result.scenes) {
    std::string reasons;
    for (std::size_t i = 0; i < m.reasons.size(); ++i) {
      if (i) reasons += ';';
      reasons += m.reasons[i];
    }
    out << m.scene_id << ',' << flag(m.accepted()) << ',' << flag(m.aligned)
        << ',' << flag(m.coverage_ok) << ',' << flag(m.winter) << ','
        << reasons << '\n';
  }
  return out.str();
}

SceneSplit SplitScenes(std::vector<std::string> scene_ids, double val_fraction,
                       std::uint64_t seed) {
  if (!(val_fraction >= 0.0 && val_fraction <= 1.0)) {
    Throw(ErrorCode::InvalidArgument, "val_fraction must be in [0, 1]");
  }
  std::sort(scene_ids.begin(), scene_ids.end());
  scene_ids.erase(std::unique(scene_ids.begin(), scene_ids.end()),
                  scene_ids.end());
  // Fisher-Yates with an explicit index draw so the order does not depend
  // on the standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = scene_ids.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(scene_ids[i - 1], scene_ids[j]);
  }
  const auto n_val = static_cast<std::size_t>(
      std::llround(val_fraction * static_cast<double>(scene_ids.size())));
  SceneSplit split;
  split.val.assign(scene_ids.begin(), scene_ids.begin() + n_val);
  split.train.assign(scene_ids.begin() + n_val, scene_ids.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

}  // namespace satdsm
