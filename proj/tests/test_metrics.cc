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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "satdsm/metrics.h"
#include "test_support.h"

namespace satdsm {
namespace {

using testing::Uniform;

DsmGrid Grid(int cols, int rows, double fill) {
  return DsmGrid({cols, rows, 5.0, 50.0, 0.5}, fill);
}

// Two-pass variance form in extended precision.
double SiLogVarianceForm(const std::vector<double>& pred,
                         const std::vector<double>& gt, double lambda) {
  const std::size_t n = pred.size();
  long double mean = 0.0L;
  std::vector<long double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = std::log(static_cast<long double>(pred[i])) -
           std::log(static_cast<long double>(gt[i]));
    mean += r[i];
  }
  mean /= n;
  long double var = 0.0L;
  for (long double x : r) var += (x - mean) * (x - mean);
  var /= n;
  return static_cast<double>(var + (1.0L - lambda) * mean * mean);
}

bool RelativelyClose(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

TEST(EvaluateDsm, IdentityIsZero) {
  DsmGrid gt = Grid(10, 8, 12.0);
  gt.set(3, 3, DsmGrid::kNoData);
  gt.set(4, 3, DsmGrid::kNoData);
  const DsmEvalReport r = EvaluateDsm(gt, gt);
  EXPECT_EQ(r.mae, 0.0);
  EXPECT_EQ(r.med, 0.0);
  EXPECT_EQ(r.valid_count, 78u);
  EXPECT_DOUBLE_EQ(r.coverage, 78.0 / 80.0);
}

TEST(EvaluateDsm, HandComputedOrderStatistics) {
  DsmGrid gt = Grid(3, 1, 10.0);
  DsmGrid pred = gt;
  pred.set(0, 0, 11.0);
  pred.set(1, 0, 9.0);
  pred.set(2, 0, 12.0);
  const DsmEvalReport r = EvaluateDsm(pred, gt);
  EXPECT_DOUBLE_EQ(r.mae, 4.0 / 3.0);
  EXPECT_EQ(r.med, 1.0);
  EXPECT_EQ(r.min_abs_error, 1.0);
  EXPECT_EQ(r.max_abs_error, 2.0);
}

TEST(EvaluateDsm, EvenCountTakesLowerMiddle) {
  DsmGrid gt = Grid(4, 1, 0.0);
  DsmGrid pred = gt;
  const double e[] = {4.0, -1.0, 2.0, 3.0};
  for (int c = 0; c < 4; ++c) pred.set(c, 0, e[c]);
  EXPECT_EQ(EvaluateDsm(pred, gt).med, 2.0);
}

TEST(EvaluateDsm, ConstantBiasAndMedianAlignment) {
  DsmGrid gt = Grid(16, 9, 0.0);
  std::mt19937_64 rng(4);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 16; ++c) gt.set(c, r, Uniform(rng, 0, 40));
  }
  for (double bias : {3.0, -3.0}) {
    DsmGrid pred = gt;
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 16; ++c) pred.set(c, r, gt.at(c, r) + bias);
    }
    const DsmEvalReport off = EvaluateDsm(pred, gt, false);
    EXPECT_NEAR(off.mae, 3.0, 1e-12);
    EXPECT_NEAR(off.med, 3.0, 1e-12);
    const DsmEvalReport on = EvaluateDsm(pred, gt, true);
    EXPECT_NEAR(on.mae, 0.0, 1e-12);
    EXPECT_NEAR(on.med, 0.0, 1e-12);
    EXPECT_NEAR(on.bias_applied, bias, 1e-12);
    EXPECT_TRUE(on.align_median);
  }
}

TEST(EvaluateDsm, BoundsAndTranslationInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    DsmGrid gt = Grid(12, 7, 0.0);
    DsmGrid pred = gt;
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 12; ++c) {
        gt.set(c, r, Uniform(rng, 0, 30));
        pred.set(c, r, Uniform(rng, 0, 1) < 0.2 ? DsmGrid::kNoData
                                                : gt.at(c, r) + Uniform(rng, -4, 4));
      }
    }
    const DsmEvalReport a = EvaluateDsm(pred, gt);
    EXPECT_GE(a.mae, a.min_abs_error);
    EXPECT_LE(a.mae, a.max_abs_error);
    EXPECT_LE(a.med, a.max_abs_error);
    EXPECT_GE(a.med, 0.0);

    const double shift = Uniform(rng, -100, 100);
    DsmGrid pred2 = pred, gt2 = gt;
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 12; ++c) {
        gt2.set(c, r, gt.at(c, r) + shift);
        if (pred.valid(c, r)) pred2.set(c, r, pred.at(c, r) + shift);
      }
    }
    const DsmEvalReport b = EvaluateDsm(pred2, gt2);
    EXPECT_NEAR(a.mae, b.mae, 1e-9);
    EXPECT_NEAR(a.med, b.med, 1e-9);
    EXPECT_EQ(a.valid_count, b.valid_count);
  }
}

TEST(EvaluateDsm, Errors) {
  EXPECT_SATDSM_ERROR(EvaluateDsm(Grid(3, 3, 1.0), Grid(3, 4, 1.0)), GridMismatch);
  EXPECT_SATDSM_ERROR(EvaluateDsm(Grid(3, 3, DsmGrid::kNoData), Grid(3, 3, 1.0)),
                      NoOverlap);
}

TEST(CompensatedSum, BeatsNaiveSummation) {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(CompensatedSum(v), 2.0);
  std::vector<double> tenth(10, 0.1);
  EXPECT_EQ(CompensatedSum(tenth), 1.0);
}

TEST(SiLogLoss, HandComputedExample) {
  const std::vector<double> pred{2.0, 1.0}, gt{1.0, 1.0};
  const double ln2sq = std::log(2.0) * std::log(2.0);
  EXPECT_NEAR(SiLogLoss(pred, gt), 0.138130, 1e-6);
  EXPECT_NEAR(SiLogLoss(pred, gt), ln2sq / 2 - 0.85 * ln2sq / 4, 1e-15);
}

TEST(SiLogLoss, MatchesVarianceForm) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 4096);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = size(rng);
    std::vector<double> pred(n), gt(n);
    for (int i = 0; i < n; ++i) {
      gt[i] = Uniform(rng, 1, 150);
      pred[i] = gt[i] * std::exp(Uniform(rng, -1, 1));
    }
    for (double lambda : {0.0, 0.5, 0.85, 1.0}) {
      const double l = SiLogLoss(pred, gt, {lambda, 1e-6});
      EXPECT_GE(l, -1e-15);
      ASSERT_TRUE(RelativelyClose(l, SiLogVarianceForm(pred, gt, lambda), 1e-12))
          << n << " " << lambda << " " << l;
    }
  }
}

TEST(SiLogLoss, ScaleBehavior) {
  std::mt19937_64 rng(8);
  std::vector<double> pred(500), gt(500);
  double mean_r = 0.0;
  for (int i = 0; i < 500; ++i) {
    gt[i] = Uniform(rng, 5, 100);
    pred[i] = Uniform(rng, 5, 100);
    mean_r += std::log(pred[i]) - std::log(gt[i]);
  }
  mean_r /= 500;
  auto scaled = [&](double k) {
    std::vector<double> out = pred;
    for (double& x : out) x *= k;
    return out;
  };
  const double base = SiLogLoss(pred, gt, {1.0, 1e-6});
  for (double k : {0.1, 10.0}) {
    EXPECT_TRUE(RelativelyClose(SiLogLoss(scaled(k), gt, {1.0, 1e-6}), base, 1e-12));
  }

  const SiLogParams p{0.5, 1e-6};
  const double t_star = -mean_r;
  const double at_min = SiLogLoss(scaled(std::exp(t_star)), gt, p);
  for (double h : {-0.2, -0.01, 0.01, 0.2}) {
    const double l = SiLogLoss(scaled(std::exp(t_star + h)), gt, p);
    EXPECT_GT(l, at_min);
    // Parabola in log k with curvature (1 - lambda).
    EXPECT_NEAR(l - at_min, (1.0 - p.lambda) * h * h, 1e-10);
  }
}

TEST(SiLogLoss, Errors) {
  const std::vector<double> empty, one{1.0}, two{1.0, 2.0}, zero{0.0};
  EXPECT_SATDSM_ERROR(SiLogLoss(empty, empty), EmptyInput);
  EXPECT_SATDSM_ERROR(SiLogLoss(one, two), EmptyInput);
  EXPECT_SATDSM_ERROR(SiLogLoss(zero, one), NonPositiveDepth);
  EXPECT_SATDSM_ERROR(SiLogLoss(one, one, {1.5, 1e-6}), InvalidArgument);
}

TEST(SiLogLoss, TinyValuesRaisedToEpsilon) {
  const std::vector<double> pred{1e-9}, gt{1e-6};
  EXPECT_EQ(SiLogLoss(pred, gt, {0.0, 1e-6}), 0.0);
}

TEST(Reports, JsonCarriesConvention) {
  DsmEvalReport r;
  r.mae = 1.5;
  r.med = 0.5;
  r.valid_count = 10;
  r.total_cells = 20;
  r.coverage = 0.5;
  const auto j = nlohmann::json::parse(ReportToJson(r, "JAX_004"));
  EXPECT_EQ(j["scene"], "JAX_004");
  EXPECT_EQ(j["mae_m"], 1.5);
  EXPECT_EQ(j["med_m"], 0.5);
  EXPECT_EQ(j["med_convention"], kMedianConvention);
}

TEST(Reports, TableHasRowsAndMean) {
  DsmEvalReport a, b;
  a.mae = 1.0;
  a.med = 0.5;
  b.mae = 3.0;
  b.med = 1.5;
  const std::string t = FormatReportTable({{"A", a}, {"B", b}});
  EXPECT_NE(t.find("MAE↓/MED↓"), std::string::npos) << t;
  EXPECT_NE(t.find("1.000/0.500"), std::string::npos) << t;
  EXPECT_NE(t.find("3.000/1.500"), std::string::npos) << t;
  EXPECT_NE(t.find("2.000/1.000"), std::string::npos) << t;
}

}  // namespace
}  // namespace satdsm
