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
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "satdsm/dsm_reconstruction.h"
#include "satdsm/pseudo_depth.h"
#include "satdsm/synthetic_scene.h"
#include "test_support.h"

namespace satdsm {
namespace {

using testing::AltBounds;
using testing::FlatSpec;
using testing::MakeView;
using testing::Uniform;

ViewCamera MakeCamera(const SyntheticSceneSpec& spec, const DsmGrid& dsm,
                      double off_nadir, double azimuth, int size = -1) {
  ViewCamera cam;
  cam.view_id = "V";
  cam.model = MakeAffineRpc(MakeView(spec, off_nadir, azimuth, size),
                            dsm.frame(), AltBounds(dsm));
  cam.plane = MakeNearPlane(dsm.ValidRange()->second);
  cam.alt_min = dsm.ValidRange()->first - 100.0;
  return cam;
}

TEST(BackProject, InvertsPseudoDepth) {
  SyntheticSceneSpec spec = FlatSpec(96);
  spec.building_count = 15;
  spec.terrain = TerrainMode::kSinusoidal;
  spec.amplitude = 3.0;
  spec.seed = 21;
  const DsmGrid dsm = MakeDsm(spec);
  const LocalFrame& frame = dsm.frame();
  std::mt19937_64 rng(9);
  for (double off_nadir : {0.0, 10.0, 25.0}) {
    const ViewCamera cam = MakeCamera(spec, dsm, off_nadir, 75.0, 64);
    for (int i = 0; i < 200; ++i) {
      const ImageCoord c{Uniform(rng, 8, 56), Uniform(rng, 8, 56)};
      const PseudoDepthResult r =
          PseudoDepthAt(cam.model, c, dsm, cam.plane, frame);
      const GeodeticPoint g =
          BackProject(cam.model, c, r.depth, cam.plane, frame, cam.bracket());
      const double err = Distance(frame.ToLocal(g), frame.ToLocal(r.hit.point));
      ASSERT_LT(err, 1e-3) << off_nadir << " " << c.line << "," << c.samp;
    }
  }
}

TEST(BackProject, NadirExample) {
  const SyntheticSceneSpec spec = FlatSpec(64, 20.0);
  const DsmGrid dsm = MakeDsm(spec);
  ViewCamera cam = MakeCamera(spec, dsm, 0.0, 0.0);
  cam.plane = MakeNearPlane(94.0);
  const GeodeticPoint g = BackProject(cam.model, {32.0, 32.0}, 124.0, cam.plane,
                                      dsm.frame(), cam.bracket());
  EXPECT_NEAR(g.alt, 20.0, 1e-3);
}

TEST(BackProject, UnreachableDepthRaises) {
  const SyntheticSceneSpec spec = FlatSpec(64, 20.0);
  const DsmGrid dsm = MakeDsm(spec);
  const ViewCamera cam = MakeCamera(spec, dsm, 0.0, 0.0);
  // Bracket spans [-80, 70]; depth 500 would need altitude -430.
  EXPECT_SATDSM_ERROR(BackProject(cam.model, {32.0, 32.0}, 500.0, cam.plane,
                                  dsm.frame(), cam.bracket()),
                      DepthOutOfBracket);
  EXPECT_SATDSM_ERROR(BackProject(cam.model, {32.0, 32.0}, 0.0, cam.plane,
                                  dsm.frame(), cam.bracket()),
                      DepthOutOfBracket);
  EXPECT_SATDSM_ERROR(BackProject(cam.model, {32.0, 32.0}, -4.0, cam.plane,
                                  dsm.frame(), cam.bracket()),
                      DepthOutOfBracket);
}

class AggregateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    spec_ = FlatSpec(64, 20.0);
    dsm_ = MakeDsm(spec_);
    for (double az : {0.0, 120.0, 240.0}) {
      cameras_.push_back(MakeCamera(spec_, dsm_, 0.0, az));
      maps_.push_back(BuildPseudoDepthMap(cameras_.back().model, dsm_,
                                          cameras_.back().plane, dsm_.frame(),
                                          64, 64)
                          .depth);
    }
  }

  SyntheticSceneSpec spec_;
  DsmGrid dsm_;
  std::vector<ViewCamera> cameras_;
  std::vector<DepthMap> maps_;
};

TEST_F(AggregateTest, CountsOnePointPerValidPixel) {
  const GeoPointCloud cloud = Aggregate(maps_, cameras_, dsm_.frame());
  EXPECT_EQ(cloud.size(), 3u * 64u * 64u);
  EXPECT_EQ(cloud.skipped, 0u);
  EXPECT_TRUE(std::is_sorted(cloud.view_index.begin(), cloud.view_index.end()));
  for (const GeodeticPoint& g : cloud.points) ASSERT_NEAR(g.alt, 20.0, 1e-3);
}

TEST_F(AggregateTest, StrideSubsamplesLattice) {
  EXPECT_EQ(Aggregate(maps_, cameras_, dsm_.frame(), 4).size(), 3u * 16u * 16u);
  EXPECT_EQ(Aggregate(maps_, cameras_, dsm_.frame(), 3).size(), 3u * 22u * 22u);
  EXPECT_SATDSM_ERROR(Aggregate(maps_, cameras_, dsm_.frame(), 0),
                      InvalidArgument);
}

TEST_F(AggregateTest, SkipsPixelsOutsideBracket) {
  maps_[1].Set(3, 3, 1000.0);
  maps_[2].Invalidate(5, 5);
  const GeoPointCloud cloud = Aggregate(maps_, cameras_, dsm_.frame());
  EXPECT_EQ(cloud.skipped, 1u);
  EXPECT_EQ(cloud.size(), 3u * 64u * 64u - 2u);
}

TEST(NearestRankPercentile, Examples) {
  std::vector<double> v{10, 1, 9, 2, 8, 3, 7, 4, 6, 5};
  EXPECT_EQ(NearestRankPercentile(v, 90), 9.0);
  EXPECT_EQ(NearestRankPercentile(v, 100), 10.0);
  EXPECT_EQ(NearestRankPercentile(v, 1), 1.0);
  EXPECT_EQ(NearestRankPercentile(v, 50), 5.0);
  std::vector<double> one{4.5};
  EXPECT_EQ(NearestRankPercentile(one, 90), 4.5);
  std::vector<double> two{3.0, 1.0};
  EXPECT_EQ(NearestRankPercentile(two, 90), 3.0);
  std::vector<double> empty;
  EXPECT_SATDSM_ERROR(NearestRankPercentile(empty, 90), EmptyInput);
}

TEST(NearestRankPercentile, MatchesSortedOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 37;
    std::vector<double> v(n);
    for (double& x : v) x = Uniform(rng, -10, 10);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const int p = 1 + trial % 100;
    const std::size_t rank = static_cast<std::size_t>(std::ceil(p * n / 100.0));
    ASSERT_EQ(NearestRankPercentile(v, p), sorted[std::max<std::size_t>(rank, 1) - 1]);
  }
}

GeoPointCloud CloudAt(const LocalFrame& frame,
                      const std::vector<LocalPoint>& points) {
  GeoPointCloud cloud;
  for (const LocalPoint& p : points) {
    cloud.points.push_back(frame.FromLocal(p));
    cloud.view_index.push_back(0);
  }
  return cloud;
}

TEST(RasterizeP90, PerCellPercentile) {
  const GridSpec grid{4, 3, 10.0, 40.0, 1.0};
  std::vector<LocalPoint> pts;
  for (int k = 1; k <= 10; ++k) pts.push_back({1.0 + 0.01 * k, 2.0, double(k)});
  pts.push_back({3.2, 0.1, 7.5});
  const DsmGrid dsm = RasterizeP90(CloudAt(grid.frame(), pts), grid);
  EXPECT_NEAR(dsm.at(1, 2), 9.0, 1e-9);
  EXPECT_NEAR(dsm.at(3, 0), 7.5, 1e-9);
  EXPECT_EQ(dsm.ValidCount(), 2u);
  EXPECT_EQ(dsm.at(0, 0), DsmGrid::kNoData);
}

TEST(RasterizeP90, IgnoresPointsOutsideGrid) {
  const GridSpec grid{4, 3, 10.0, 40.0, 1.0};
  const DsmGrid dsm = RasterizeP90(
      CloudAt(grid.frame(), {{-3.0, 1.0, 5.0}, {1.0, 9.0, 5.0}}), grid);
  EXPECT_EQ(dsm.ValidCount(), 0u);
}

TEST(RasterizeP90, IndependentOfPointOrder) {
  const GridSpec grid{20, 20, 10.0, 40.0, 0.5};
  std::mt19937_64 rng(12);
  std::vector<LocalPoint> pts;
  for (int i = 0; i < 4000; ++i) {
    pts.push_back({Uniform(rng, -0.2, 10), Uniform(rng, -0.2, 10), Uniform(rng, 0, 50)});
  }
  const DsmGrid a = RasterizeP90(CloudAt(grid.frame(), pts), grid);
  std::shuffle(pts.begin(), pts.end(), rng);
  const DsmGrid b = RasterizeP90(CloudAt(grid.frame(), pts), grid);
  EXPECT_TRUE(a == b);
  EXPECT_GT(a.ValidCount(), 390u);
}

TEST(FillHoles, FillsEnclosedHoleWithMedian) {
  DsmGrid g({5, 5, 0.0, 0.0, 1.0});
  const double ring[] = {1, 2, 3, 4, 5, 6, 7, 8};
  int k = 0;
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      if (r == 2 && c == 2) continue;
      g.set(c, r, ring[k++]);
    }
  }
  const DsmGrid f = FillHoles(g, 1);
  EXPECT_EQ(f.at(2, 2), 4.0);  // lower middle of 1..8
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      if (r != 2 || c != 2) EXPECT_EQ(f.at(c, r), g.at(c, r));
    }
  }
}

TEST(FillHoles, NeedsThreeNeighborsAndReadsInputOnly) {
  DsmGrid g({7, 1, 0.0, 0.0, 1.0});
  g.set(0, 0, 10.0);
  g.set(1, 0, 11.0);
  g.set(2, 0, 12.0);
  g.set(5, 0, 15.0);
  const DsmGrid f = FillHoles(g, 2);
  EXPECT_EQ(f.at(3, 0), 12.0);  // sees 11, 12, 15
  // Sees 12 and 15 in the input; the freshly filled cell 3 does not count.
  EXPECT_EQ(f.at(4, 0), DsmGrid::kNoData);
  EXPECT_EQ(f.at(6, 0), DsmGrid::kNoData);
}

TEST(FillHoles, NeverInvalidatesCells) {
  std::mt19937_64 rng(6);
  DsmGrid g({30, 30, 0.0, 0.0, 1.0});
  for (int r = 0; r < 30; ++r) {
    for (int c = 0; c < 30; ++c) {
      if (Uniform(rng, 0, 1) < 0.6) g.set(c, r, Uniform(rng, 0, 40));
    }
  }
  const DsmGrid f = FillHoles(g, 2);
  EXPECT_GE(f.ValidCount(), g.ValidCount());
  for (int r = 0; r < 30; ++r) {
    for (int c = 0; c < 30; ++c) {
      if (g.valid(c, r)) ASSERT_EQ(f.at(c, r), g.at(c, r));
    }
  }
}

}  // namespace
}  // namespace satdsm
