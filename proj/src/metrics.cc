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

#include "satdsm/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "satdsm/errors.h"

namespace satdsm {

double LowerMedian(std::vector<double>& values) {
  if (values.empty()) Throw(ErrorCode::EmptyInput, "median of an empty set");
  auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

double CompensatedSum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

DsmEvalReport EvaluateDsm(const DsmGrid& pred, const DsmGrid& gt,
                          bool align_median) {
  if (!pred.spec().Matches(gt.spec())) {
    Throw(ErrorCode::GridMismatch,
          "predicted and reference DSMs use different grids");
  }
  std::vector<double> errors;
  for (int row = 0; row < gt.rows(); ++row) {
    for (int col = 0; col < gt.cols(); ++col) {
      if (pred.valid(col, row) && gt.valid(col, row)) {
        errors.push_back(pred.at(col, row) - gt.at(col, row));
      }
    }
  }
  if (errors.empty()) {
    Throw(ErrorCode::NoOverlap, "no cell is valid in both DSMs");
  }

  DsmEvalReport report;
  report.align_median = align_median;
  report.valid_count = errors.size();
  report.total_cells = static_cast<std::size_t>(gt.cols()) * gt.rows();
  report.coverage =
      static_cast<double>(report.valid_count) / report.total_cells;
  if (align_median) {
    std::vector<double> signed_errors = errors;
    report.bias_applied = LowerMedian(signed_errors);
    for (double& e : errors) e -= report.bias_applied;
  }
  for (double& e : errors) e = std::abs(e);
  report.mae = CompensatedSum(errors) / errors.size();
  const auto [lo, hi] = std::minmax_element(errors.begin(), errors.end());
  report.min_abs_error = *lo;
  report.max_abs_error = *hi;
  report.med = LowerMedian(errors);
  return report;
}

void SiLogParams::Validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    Throw(ErrorCode::InvalidArgument, "lambda must be in [0, 1]");
  }
  if (!(epsilon > 0.0)) {
    Throw(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
}

double SiLogLoss(std::span<const double> pred, std::span<const double> gt,
                 const SiLogParams& params) {
  params.Validate();
  if (pred.empty() || pred.size() != gt.size()) {
    Throw(ErrorCode::EmptyInput,
          "SiLog needs two non-empty inputs of equal length");
  }
  const std::size_t n = pred.size();
  std::vector<double> r(n);
  std::vector<double> r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pred[i] > 0.0) || !(gt[i] > 0.0)) {
      Throw(ErrorCode::NonPositiveDepth,
            "SiLog input " + std::to_string(i) + " is not positive");
    }
    r[i] = std::log(std::max(pred[i], params.epsilon)) -
           std::log(std::max(gt[i], params.epsilon));
    r2[i] = r[i] * r[i];
  }
  const double dn = static_cast<double>(n);
  const double sum = CompensatedSum(r);
  return CompensatedSum(r2) / dn - params.lambda * sum * sum / (dn * dn);
}

std::string ReportToJson(const DsmEvalReport& report,
                         const std::string& scene) {
  nlohmann::ordered_json j;
  j["scene"] = scene;
  j["mae_m"] = report.mae;
  j["med_m"] = report.med;
  j["valid_cells"] = report.valid_count;
  j["total_cells"] = report.total_cells;
  j["coverage"] = report.coverage;
  j["align_median"] = report.align_median;
  j["bias_applied_m"] = report.bias_applied;
  j["min_abs_error_m"] = report.min_abs_error;
  j["max_abs_error_m"] = report.max_abs_error;
  j["med_convention"] = kMedianConvention;
  return j.dump(2) + "\n";
}

std::string FormatReportTable(const std::vector<NamedReport>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.scene.size());
  auto pad = [&](const std::string& s) {
    return s + std::string(width - s.size() + 2, ' ');
  };
  auto cell = [](double mae, double med) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f/%.3f", mae, med);
    return std::string(buf);
  };
  std::ostringstream out;
  out << pad("scene") << "MAE\xE2\x86\x93/MED\xE2\x86\x93\n";
  double mae_sum = 0.0;
  double med_sum = 0.0;
  for (const auto& r : rows) {
    out << pad(r.scene) << cell(r.report.mae, r.report.med) << "\n";
    mae_sum += r.report.mae;
    med_sum += r.report.med;
  }
  if (!rows.empty()) {
    out << pad("mean")
        << cell(mae_sum / rows.size(), med_sum / rows.size()) << "\n";
  }
  return out.str();
}

}  // namespace satdsm
