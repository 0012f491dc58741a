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

// DSM accuracy metrics and the scale-invariant log loss.

#ifndef SATDSM_METRICS_H
#define SATDSM_METRICS_H

#include <span>
#include <string>
#include <vector>

#include "satdsm/dsm_grid.h"

namespace satdsm {

// Median of |e| is reported; this string is echoed in every report.
inline constexpr const char* kMedianConvention = "median_of_absolute_error";

struct DsmEvalReport {
  double mae = 0.0;
  double med = 0.0;
  std::size_t valid_count = 0;
  std::size_t total_cells = 0;
  double coverage = 0.0;  // valid_count / total_cells
  bool align_median = false;
  double bias_applied = 0.0;  // subtracted from every error when aligned
  double min_abs_error = 0.0;
  double max_abs_error = 0.0;
};

// Compares cells valid in both grids. Errors are pred - gt, optionally
// minus their median; MED is the lower-middle order statistic of |e|.
// Throws GridMismatch for different grid specs and NoOverlap when no cell is
// valid in both.
DsmEvalReport EvaluateDsm(const DsmGrid& pred, const DsmGrid& gt,
                          bool align_median = false);

// Lower-middle element of the ascending order. Reorders values.
double LowerMedian(std::vector<double>& values);

// Neumaier compensated sum.
double CompensatedSum(std::span<const double> values);

struct SiLogParams {
  double lambda = 0.85;
  double epsilon = 1e-6;

  void Validate() const;
};

// L = (1/N) sum r^2 - (lambda/N^2) (sum r)^2 with r = log(pred) - log(gt).
// Values in (0, epsilon) are raised to epsilon before the log. Throws
// EmptyInput for empty or unequal-length inputs and NonPositiveDepth for any
// value <= 0.
double SiLogLoss(std::span<const double> pred, std::span<const double> gt,
                 const SiLogParams& params = {});

std::string ReportToJson(const DsmEvalReport& report, const std::string& scene);

struct NamedReport {
  std::string scene;
  DsmEvalReport report;
};

// Fixed-width table with one "MAE/MED" row per scene and a mean row.
std::string FormatReportTable(const std::vector<NamedReport>& rows);

}  // namespace satdsm

#endif  // SATDSM_METRICS_H
