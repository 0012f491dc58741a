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

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "curation_fixture.h"
#include "satdsm/dataset_curation.h"
#include "satdsm/dsm_grid.h"
#include "satdsm/text_util.h"
#include "test_support.h"

namespace fs = std::filesystem;

namespace satdsm {
namespace {

using testing::FixtureView;
using testing::SceneTree;
using testing::TempDir;
using testing::WritePnm;

bool HasDetail(const std::vector<std::string>& details, const std::string& s) {
  return std::any_of(details.begin(), details.end(), [&](const std::string& d) {
    return d.find(s) != std::string::npos;
  });
}

const SceneManifest& Scene(const CurationResult& r, const std::string& id) {
  for (const auto& s : r.scenes) {
    if (s.scene_id == id) return s;
  }
  throw std::runtime_error("no scene " + id);
}

TEST(ParseIsoTimestamp, Forms) {
  const Timestamp t = ParseIsoTimestamp("2014-02-11T15:20:31.000000Z");
  EXPECT_EQ(t, (Timestamp{2014, 2, 11, 15, 20, 31.0}));
  EXPECT_EQ(ParseIsoTimestamp("2014-02-11T15:20:31"), t);
  EXPECT_DOUBLE_EQ(ParseIsoTimestamp("2016-10-01 03:04:05.25Z").second, 5.25);
  EXPECT_EQ(ParseIsoTimestamp("2016-02-29T00:00:00Z").day, 29);
  EXPECT_EQ(t.ToIso(), "2014-02-11T15:20:31.000000Z");
}

TEST(ParseIsoTimestamp, Rejections) {
  for (const char* bad :
       {"", "2014-02-11", "2014/02/11T15:20:31", "2014-13-01T00:00:00",
        "2015-02-29T00:00:00", "2014-02-11T24:00:00", "2014-02-11T15:20:31.x",
        "1989-12-31T23:59:59Z", "2100-01-01T00:00:00Z", "20a4-02-11T15:20:31"}) {
    SCOPED_TRACE(bad);
    EXPECT_SATDSM_ERROR(ParseIsoTimestamp(bad), MalformedTimestamp);
  }
  EXPECT_EQ(ParseIsoTimestamp("1990-01-01T00:00:00Z").year, 1990);
  EXPECT_EQ(ParseIsoTimestamp("2099-12-31T23:59:59Z").year, 2099);
}

TEST(ParseImd, FirstLineTime) {
  const ImdRecord r = ParseImd(testing::ImdText("2014-02-11T15:20:31.000000Z"));
  EXPECT_EQ(r.acquired, (Timestamp{2014, 2, 11, 15, 20, 31.0}));
  EXPECT_EQ(r.timestamp_key, "firstLineTime");
  EXPECT_EQ(r.image_id, "1030010003D22F00");
  ASSERT_TRUE(r.sun_elevation_deg.has_value());
  EXPECT_DOUBLE_EQ(*r.sun_elevation_deg, 41.7);
}

TEST(ParseImd, KeyPriority) {
  const std::string text =
      "generationTime = 2016-01-05T00:00:00Z;\n"
      "earliestAcqTime = 2015-08-01T10:00:00Z;\n";
  EXPECT_EQ(ParseImd(text).timestamp_key, "earliestAcqTime");
  EXPECT_EQ(ParseImd(text).acquired.month, 8);
  const std::string with_first = text + "firstLineTime = 2014-03-03T03:03:03Z;\n";
  EXPECT_EQ(ParseImd(with_first).acquired.year, 2014);
  EXPECT_EQ(ParseImd(with_first, {"generationTime"}).acquired.year, 2016);
}

TEST(ParseImd, Errors) {
  EXPECT_SATDSM_ERROR(ParseImd("satId = \"WV03\";\n"), NoTimestampKey);
  EXPECT_SATDSM_ERROR(ParseImd("firstLineTime = yesterday;\n"), MalformedTimestamp);
}

TEST(IsWinter, CalendarRule) {
  ImdRecord feb;
  feb.acquired = ParseIsoTimestamp("2014-02-11T15:20:31Z");
  EXPECT_TRUE(IsWinter(feb, Hemisphere::kNorth));
  EXPECT_FALSE(IsWinter(feb, Hemisphere::kSouth));
  ImdRecord jul;
  jul.acquired = ParseIsoTimestamp("2015-07-04T12:00:00Z");
  EXPECT_FALSE(IsWinter(jul, Hemisphere::kNorth));
  EXPECT_TRUE(IsWinter(jul, Hemisphere::kSouth));

  const std::vector<int> north = {12, 1, 2}, south = {6, 7, 8};
  for (int m = 1; m <= 12; ++m) {
    ImdRecord r;
    r.acquired.month = m;
    EXPECT_EQ(IsWinter(r, Hemisphere::kNorth),
              std::count(north.begin(), north.end(), m) == 1);
    EXPECT_EQ(IsWinter(r, Hemisphere::kSouth),
              std::count(south.begin(), south.end(), m) == 1);
  }
  EXPECT_EQ(HemisphereOf(-33.9), Hemisphere::kSouth);
  EXPECT_EQ(HemisphereOf(0.0), Hemisphere::kNorth);
}

TEST(ParseCurationFileName, Convention) {
  const auto f = ParseCurationFileName("JAX_004_007_RGB.tif");
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->scene, "JAX_004");
  EXPECT_EQ(f->index, "007");
  EXPECT_EQ(f->type, "RGB");
  EXPECT_EQ(f->extension, "tif");
  EXPECT_EQ(f->stem(), "JAX_004_007");
  EXPECT_FALSE(ParseCurationFileName("JAX_004_007_XYZ.tif"));
  EXPECT_FALSE(ParseCurationFileName("JAX_004_A7_RGB.tif"));
  EXPECT_FALSE(ParseCurationFileName("JAX_004_DSM.txt"));
  EXPECT_FALSE(ParseCurationFileName("_007_RGB.tif"));
  EXPECT_FALSE(ParseCurationFileName("noext"));
}

TEST(ProbeImageSize, Formats) {
  const fs::path dir = TempDir("probe");
  WritePnm(dir / "a.ppm", 7, 5, true);
  WritePnm(dir / "b.pgm", 3, 9, false);
  EXPECT_EQ(ProbeImageSize(dir / "a.ppm"), (ImageSize{7, 5}));
  EXPECT_EQ(ProbeImageSize(dir / "b.pgm"), (ImageSize{3, 9}));
  WriteTextFile(dir / "c.pgm", "P2\n# comment 99 99\n4 6\n255\n");
  EXPECT_EQ(ProbeImageSize(dir / "c.pgm"), (ImageSize{4, 6}));

  // PNG signature + IHDR chunk.
  std::string png = "\x89PNG\r\n\x1a\n";
  png += std::string("\0\0\0\x0dIHDR", 8);
  png += std::string("\0\0\x08\0", 4);  // 2048
  png += std::string("\0\0\x04\0", 4);  // 1024
  png += std::string(5, '\0');
  WriteTextFile(dir / "d.png", png);
  EXPECT_EQ(ProbeImageSize(dir / "d.png"), (ImageSize{2048, 1024}));

  // Little-endian TIFF with ImageWidth (SHORT) and ImageLength (LONG).
  std::string tif("II*\0\x08\0\0\0", 8);
  tif += std::string("\x02\0", 2);
  tif += std::string("\x00\x01\x03\0\x01\0\0\0\x00\x02\0\0", 12);  // 512
  tif += std::string("\x01\x01\x04\0\x01\0\0\0\x00\x01\0\0", 12);  // 256
  tif += std::string(4, '\0');
  WriteTextFile(dir / "e.tif", tif);
  EXPECT_EQ(ProbeImageSize(dir / "e.tif"), (ImageSize{512, 256}));

  WriteTextFile(dir / "f.bin", "garbage");
  EXPECT_FALSE(ProbeImageSize(dir / "f.bin"));
  EXPECT_FALSE(ProbeImageSize(dir / "missing.ppm"));
  fs::remove_all(dir);
}

TEST(CheckAlignment, Examples) {
  SceneTree tree(TempDir("align"));
  tree.AddCompleteScene("S", 10);
  FixtureView no_cls;
  no_cls.cls = false;
  tree.AddView("M", 1, {});
  tree.AddView("M", 2, no_cls);
  FixtureView big;
  big.rgb_size = 32;
  big.cls_size = 16;
  tree.AddView("D", 1, big);

  const auto listings = ScanSceneTree(tree.root());
  ASSERT_EQ(listings.size(), 3u);
  for (const SceneListing& l : listings) {
    const Verdict v = CheckAlignment(l, tree.root());
    if (l.scene_id == "S") {
      EXPECT_EQ(l.views.size(), 10u);
      EXPECT_TRUE(v.ok);
      EXPECT_TRUE(v.details.empty());
    } else if (l.scene_id == "M") {
      EXPECT_FALSE(v.ok);
      EXPECT_TRUE(HasDetail(v.details, "missing CLS for M_002"));
    } else {
      EXPECT_FALSE(v.ok);
      EXPECT_TRUE(HasDetail(v.details, "dimension mismatch"));
      EXPECT_TRUE(HasDetail(v.details, "32x32 vs CLS 16x16"));
    }
  }
  fs::remove_all(tree.root());
}

TEST(CheckCoverage, Boundaries) {
  SceneManifest m;
  m.views.resize(2);
  EXPECT_FALSE(CheckCoverage(m, 3).ok);
  m.views.resize(3);
  EXPECT_TRUE(CheckCoverage(m, 3).ok);
  m.views[0].used = false;
  EXPECT_FALSE(CheckCoverage(m, 3).ok);
  m.views.resize(1);
  m.views[0].used = true;
  EXPECT_TRUE(CheckCoverage(m, 1).ok);
}

TEST(BuildManifest, SummerWinterAndMissingRpc) {
  SceneTree tree(TempDir("manifest"));
  tree.AddCompleteScene("SUMMER", 3);
  tree.AddCompleteScene("WINTER", 3, "2015-12-10T16:00:00.000000Z");
  FixtureView no_rpc;
  no_rpc.rpc = false;
  for (int i = 1; i <= 3; ++i) tree.AddView("NORPC", i, no_rpc);
  tree.AddMeta("NORPC", 0.0, 30.0);

  const CurationResult r = BuildManifest(tree.root());
  ASSERT_EQ(r.scenes.size(), 3u);
  EXPECT_EQ(r.scenes[0].scene_id, "NORPC");
  EXPECT_EQ(r.scenes[2].scene_id, "WINTER");
  const auto accepted = r.Accepted();
  ASSERT_EQ(accepted.size(), 1u);
  EXPECT_EQ(accepted[0]->scene_id, "SUMMER");

  const SceneManifest& summer = Scene(r, "SUMMER");
  EXPECT_TRUE(summer.reasons.empty());
  EXPECT_EQ(summer.altitude_source, "meta");
  EXPECT_EQ(summer.z_min, 10.0);
  EXPECT_EQ(summer.z_max, 54.0);
  EXPECT_EQ(summer.hemisphere, Hemisphere::kNorth);
  ASSERT_EQ(summer.views.size(), 3u);
  EXPECT_EQ(summer.views[0].image, "SUMMER/SUMMER_001_RGB.ppm");
  EXPECT_EQ(summer.views[0].rpc, "SUMMER/SUMMER_001_RPC.txt");
  EXPECT_EQ(summer.views[0].acquired->month, 7);

  const SceneManifest& winter = Scene(r, "WINTER");
  EXPECT_TRUE(winter.winter);
  EXPECT_TRUE(winter.aligned);
  EXPECT_EQ(winter.reasons, (std::vector<std::string>{"coverage", "winter"}));

  const SceneManifest& norpc = Scene(r, "NORPC");
  EXPECT_FALSE(norpc.aligned);
  ASSERT_FALSE(norpc.reasons.empty());
  EXPECT_EQ(norpc.reasons[0], "alignment");
  fs::remove_all(tree.root());
}

TEST(BuildManifest, WinterFollowsHemisphere) {
  SceneTree tree(TempDir("south"), -33.9);
  tree.AddCompleteScene("CPT", 3, "2016-01-15T09:00:00Z");
  tree.AddCompleteScene("CPT_JUL", 3, "2016-07-15T09:00:00Z");
  const CurationResult r = BuildManifest(tree.root());
  EXPECT_EQ(Scene(r, "CPT").hemisphere, Hemisphere::kSouth);
  EXPECT_TRUE(Scene(r, "CPT").accepted());
  EXPECT_TRUE(Scene(r, "CPT_JUL").winter);

  CurationConfig north;
  north.hemisphere = Hemisphere::kNorth;
  const CurationResult flipped = BuildManifest(tree.root(), north);
  EXPECT_TRUE(Scene(flipped, "CPT").winter);
  EXPECT_TRUE(Scene(flipped, "CPT_JUL").accepted());
  fs::remove_all(tree.root());
}

TEST(BuildManifest, MixedSeasonsDropWinterViews) {
  SceneTree tree(TempDir("mixed"));
  tree.AddCompleteScene("MIX", 4);
  FixtureView dec;
  dec.timestamp = "2015-12-01T10:00:00Z";
  tree.AddView("MIX", 5, dec);
  FixtureView undated;
  undated.timestamp.clear();
  tree.AddView("MIX", 6, undated);

  const SceneManifest& m = BuildManifest(tree.root()).scenes.at(0);
  EXPECT_FALSE(m.winter);
  EXPECT_TRUE(m.accepted());
  ASSERT_EQ(m.views.size(), 6u);
  EXPECT_TRUE(m.views[4].winter);
  EXPECT_FALSE(m.views[4].used);
  EXPECT_TRUE(m.views[5].used);
  EXPECT_FALSE(m.views[5].acquired.has_value());
  EXPECT_EQ(m.UsedViewCount(), 5u);
  fs::remove_all(tree.root());
}

TEST(BuildManifest, AltitudeSources) {
  SceneTree tree(TempDir("alt"));
  FixtureView v;
  for (int i = 1; i <= 3; ++i) tree.AddView("GT", i, v);
  DsmGrid gt({4, 3, -81.7, 30.3, 0.5}, 12.0);
  gt.set(1, 1, 47.5);
  gt.set(2, 2, DsmGrid::kNoData);
  SaveDsm(gt, tree.root() / "GT" / "GT_DSM.txt");

  const SceneManifest& m = BuildManifest(tree.root()).scenes.at(0);
  EXPECT_EQ(m.altitude_source, "gt_dsm");
  EXPECT_EQ(m.z_min, 12.0);
  EXPECT_EQ(m.z_max, 47.5);
  EXPECT_EQ(m.gt_dsm, "GT/GT_DSM.txt");
  ASSERT_TRUE(m.grid.has_value());
  EXPECT_EQ(m.grid->cols, 4);
  EXPECT_LE(m.z_min, m.z_max);

  tree.AddMeta("GT", 0.0, 99.0);
  EXPECT_EQ(BuildManifest(tree.root()).scenes.at(0).altitude_source, "meta");

  for (int i = 1; i <= 3; ++i) tree.AddView("BARE", i, v);
  EXPECT_SATDSM_ERROR(BuildManifest(tree.root()), NoAltitudeSource);
  fs::remove_all(tree.root());
}

TEST(BuildManifest, DeterministicAndReasonsPresent) {
  SceneTree tree(TempDir("det"));
  tree.AddCompleteScene("A", 3);
  tree.AddCompleteScene("B", 2);
  tree.AddCompleteScene("C", 3, "2015-01-20T10:00:00Z");
  const CurationResult a = BuildManifest(tree.root());
  const CurationResult b = BuildManifest(tree.root());
  ASSERT_EQ(a.scenes.size(), b.scenes.size());
  for (std::size_t i = 0; i < a.scenes.size(); ++i) {
    EXPECT_EQ(ManifestToJson(a.scenes[i]), ManifestToJson(b.scenes[i]));
    const SceneManifest& s = a.scenes[i];
    if (s.accepted()) {
      EXPECT_TRUE(s.aligned && s.coverage_ok && !s.winter);
    } else {
      EXPECT_FALSE(s.reasons.empty()) << s.scene_id;
    }
  }
  EXPECT_EQ(RejectionReportCsv(a), RejectionReportCsv(b));
  fs::remove_all(tree.root());
}

TEST(BuildManifest, AddingViewsNeverLosesCoverage) {
  SceneTree tree(TempDir("mono"));
  tree.AddMeta("G", 0.0, 40.0);
  const std::vector<std::string> stamps = {
      "2015-07-01T00:00:00Z", "2015-12-01T00:00:00Z", "",
      "2015-05-01T00:00:00Z", "2016-01-09T00:00:00Z", "2015-09-01T00:00:00Z"};
  bool was_ok = false;
  for (int i = 0; i < static_cast<int>(stamps.size()); ++i) {
    FixtureView v;
    v.timestamp = stamps[i];
    tree.AddView("G", i + 1, v);
    CurationConfig config;
    config.min_views = 2;
    const bool ok = BuildManifest(tree.root(), config).scenes.at(0).coverage_ok;
    if (was_ok) EXPECT_TRUE(ok) << "after view " << i + 1;
    was_ok = ok;
  }
  EXPECT_TRUE(was_ok);
  fs::remove_all(tree.root());
}

TEST(ManifestJson, RoundTrip) {
  SceneTree tree(TempDir("json"));
  tree.AddCompleteScene("RT", 3);
  FixtureView dec;
  dec.timestamp = "2015-12-01T10:00:00.5Z";
  tree.AddView("RT", 4, dec);
  const SceneManifest m = BuildManifest(tree.root()).scenes.at(0);
  const std::string text = ManifestToJson(m);
  EXPECT_NE(text.find(kWinterRule), std::string::npos);
  const SceneManifest back = ManifestFromJson(text);
  EXPECT_EQ(ManifestToJson(back), text);
  EXPECT_EQ(back.views.size(), 4u);
  EXPECT_EQ(back.views[3].acquired->second, 0.5);
  EXPECT_FALSE(back.views[3].used);
  EXPECT_EQ(back.accepted(), m.accepted());
  EXPECT_SATDSM_ERROR(ManifestFromJson("[1, 2]"), MalformedFile);
  EXPECT_SATDSM_ERROR(ManifestFromJson("{\"scene_id\": \"x\"}"), MalformedFile);
  fs::remove_all(tree.root());
}

TEST(RejectionReportCsv, Layout) {
  CurationResult r;
  SceneManifest ok;
  ok.scene_id = "A";
  ok.aligned = ok.coverage_ok = true;
  SceneManifest bad;
  bad.scene_id = "B";
  bad.winter = true;
  bad.reasons = {"alignment", "coverage", "winter"};
  r.scenes = {ok, bad};
  EXPECT_EQ(RejectionReportCsv(r),
            "scene,accepted,aligned,coverage_ok,winter,reasons\n"
            "A,true,true,true,false,\n"
            "B,false,false,false,true,alignment;coverage;winter\n");
}

TEST(SplitScenes, SeededAndComplete) {
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) ids.push_back("S" + std::to_string(i));
  const SceneSplit a = SplitScenes(ids, 0.25, 3);
  EXPECT_EQ(a.val.size(), 5u);
  EXPECT_EQ(a.train.size(), 15u);
  std::vector<std::string> shuffled = ids;
  std::reverse(shuffled.begin(), shuffled.end());
  const SceneSplit b = SplitScenes(shuffled, 0.25, 3);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.train, b.train);
  std::vector<std::string> all = a.val;
  all.insert(all.end(), a.train.begin(), a.train.end());
  std::sort(all.begin(), all.end());
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(all, sorted);
  EXPECT_NE(SplitScenes(ids, 0.25, 4).val, a.val);
  EXPECT_TRUE(SplitScenes(ids, 0.0, 3).val.empty());
  EXPECT_SATDSM_ERROR(SplitScenes(ids, 1.5, 3), InvalidArgument);
}

}  // namespace
}  // namespace satdsm
