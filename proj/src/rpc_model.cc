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

#include "satdsm/rpc_model.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "satdsm/errors.h"
#include "satdsm/text_util.h"

namespace satdsm {
namespace {

constexpr double kMinDenominator = 1e-10;

struct ScalarField {
  const char* key;
  double RpcModel::*member;
};

constexpr ScalarField kScalarFields[] = {
    {"LINE_OFF", &RpcModel::line_off},
    {"SAMP_OFF", &RpcModel::samp_off},
    {"LAT_OFF", &RpcModel::lat_off},
    {"LONG_OFF", &RpcModel::lon_off},
    {"HEIGHT_OFF", &RpcModel::height_off},
    {"LINE_SCALE", &RpcModel::line_scale},
    {"SAMP_SCALE", &RpcModel::samp_scale},
    {"LAT_SCALE", &RpcModel::lat_scale},
    {"LONG_SCALE", &RpcModel::lon_scale},
    {"HEIGHT_SCALE", &RpcModel::height_scale},
};

struct CoeffField {
  const char* prefix;
  RpcCoefficients RpcModel::*member;
};

constexpr CoeffField kCoeffFields[] = {
    {"LINE_NUM_COEFF_", &RpcModel::line_num},
    {"LINE_DEN_COEFF_", &RpcModel::line_den},
    {"SAMP_NUM_COEFF_", &RpcModel::samp_num},
    {"SAMP_DEN_COEFF_", &RpcModel::samp_den},
};

struct Ratio {
  double value;
  double denominator;
};

Ratio EvaluateRatio(const RpcCoefficients& num, const RpcCoefficients& den,
                    const RpcCoefficients& terms) {
  return {EvaluatePolynomial(num, terms), EvaluatePolynomial(den, terms)};
}

// Pixel residual of the forward model at normalized (P, L) and fixed H.
struct Residual {
  double dline;
  double dsamp;
  double norm() const { return std::hypot(dline, dsamp); }
};

Residual ResidualAt(const RpcModel& m, const ImageCoord& target, double P,
                    double L, double H) {
  const ImageCoord c = Project(m, Denormalize(m, {P, L, H}));
  return {c.line - target.line, c.samp - target.samp};
}

}  // namespace

RpcCoefficients CubicTerms(const NormalizedGround& g) {
  const double P = g.P, L = g.L, H = g.H;
  return {1.0,       L,         P,         H,         L * P,
          L * H,     P * H,     L * L,     P * P,     H * H,
          P * L * H, L * L * L, L * P * P, L * H * H, L * L * P,
          P * P * P, P * H * H, L * L * H, P * P * H, H * H * H};
}

double EvaluatePolynomial(const RpcCoefficients& coeffs,
                          const RpcCoefficients& terms) {
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) sum += coeffs[i] * terms[i];
  return sum;
}

NormalizedGround Normalize(const RpcModel& m, const GeodeticPoint& p) {
  return {(p.lat - m.lat_off) / m.lat_scale, (p.lon - m.lon_off) / m.lon_scale,
          (p.alt - m.height_off) / m.height_scale};
}

GeodeticPoint Denormalize(const RpcModel& m, const NormalizedGround& g) {
  return {g.L * m.lon_scale + m.lon_off, g.P * m.lat_scale + m.lat_off,
          g.H * m.height_scale + m.height_off};
}

void ValidateRpc(const RpcModel& m) {
  for (const auto& f : kScalarFields) {
    const double v = m.*(f.member);
    if (!std::isfinite(v)) {
      Throw(ErrorCode::MalformedFile, std::string(f.key) + " is not finite");
    }
  }
  const std::pair<const char*, double> scales[] = {
      {"LINE_SCALE", m.line_scale},     {"SAMP_SCALE", m.samp_scale},
      {"LAT_SCALE", m.lat_scale},       {"LONG_SCALE", m.lon_scale},
      {"HEIGHT_SCALE", m.height_scale},
  };
  for (const auto& [name, value] : scales) {
    if (!(value > 0.0)) Throw(ErrorCode::NonPositiveScale, name);
  }
  if (m.line_den[0] != 1.0 || m.samp_den[0] != 1.0) {
    Throw(ErrorCode::MalformedFile,
          "leading denominator coefficient must equal 1");
  }
}

RpcModel ParseRpc(std::string_view text) {
  std::map<std::string, double, std::less<>> values;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string_view key = Trim(line.substr(0, colon));
    const std::string_view rest = Trim(line.substr(colon + 1));
    if (key.empty()) continue;
    const std::string_view token = FirstToken(rest);
    const std::optional<double> number = ParseDouble(token);
    if (!number) {
      // Unknown keys may carry arbitrary payloads; only fail on known ones.
      const std::string k(key);
      bool known = false;
      for (const auto& f : kScalarFields) known |= (k == f.key);
      for (const auto& f : kCoeffFields) {
        known |= k.rfind(f.prefix, 0) == 0;
      }
      if (known) {
        Throw(ErrorCode::MalformedNumber,
              "line " + std::to_string(line_no) + ": '" + std::string(rest) +
                  "'");
      }
      continue;
    }
    values.insert_or_assign(std::string(key), *number);
  }

  auto require = [&](const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) Throw(ErrorCode::MissingKey, key);
    return it->second;
  };

  RpcModel m;
  for (const auto& f : kScalarFields) m.*(f.member) = require(f.key);
  for (const auto& f : kCoeffFields) {
    auto& coeffs = m.*(f.member);
    for (int i = 0; i < 20; ++i) {
      coeffs[i] = require(std::string(f.prefix) + std::to_string(i + 1));
    }
  }

  auto renormalize = [](RpcCoefficients& num, RpcCoefficients& den) {
    const double lead = den[0];
    if (lead == 1.0) return;
    if (lead == 0.0 || !std::isfinite(lead)) {
      Throw(ErrorCode::MalformedFile, "leading denominator coefficient is 0");
    }
    for (auto& c : num) c /= lead;
    for (auto& c : den) c /= lead;
    den[0] = 1.0;
  };
  renormalize(m.line_num, m.line_den);
  renormalize(m.samp_num, m.samp_den);

  ValidateRpc(m);
  return m;
}

std::string SerializeRpc(const RpcModel& m) {
  std::ostringstream out;
  const char* units[] = {"pixels",  "pixels",  "degrees", "degrees", "meters",
                         "pixels",  "pixels",  "degrees", "degrees", "meters"};
  int u = 0;
  for (const auto& f : kScalarFields) {
    out << f.key << ": " << FormatDouble17(m.*(f.member)) << ' ' << units[u++]
        << '\n';
  }
  for (const auto& f : kCoeffFields) {
    const auto& coeffs = m.*(f.member);
    for (int i = 0; i < 20; ++i) {
      out << f.prefix << (i + 1) << ": " << FormatDouble17(coeffs[i]) << '\n';
    }
  }
  return out.str();
}

RpcModel LoadRpc(const std::filesystem::path& path) {
  try {
    return ParseRpc(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void SaveRpc(const RpcModel& model, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeRpc(model));
}

ImageCoord Project(const RpcModel& m, const GeodeticPoint& p) {
  const RpcCoefficients terms = CubicTerms(Normalize(m, p));
  const Ratio line = EvaluateRatio(m.line_num, m.line_den, terms);
  const Ratio samp = EvaluateRatio(m.samp_num, m.samp_den, terms);
  if (!(std::abs(line.denominator) >= kMinDenominator) ||
      !(std::abs(samp.denominator) >= kMinDenominator)) {
    Throw(ErrorCode::DenominatorNearZero,
          "RPC denominator vanishes near lon " + std::to_string(p.lon) +
              " lat " + std::to_string(p.lat));
  }
  return {m.line_off + m.line_scale * line.value / line.denominator,
          m.samp_off + m.samp_scale * samp.value / samp.denominator};
}

GeodeticPoint Localize(const RpcModel& m, const ImageCoord& c, double alt,
                       const LocalizeOptions& options) {
  const double H = (alt - m.height_off) / m.height_scale;
  double P = 0.0;
  double L = 0.0;
  Residual r = ResidualAt(m, c, P, L, H);
  double residual = r.norm();
  int iterations = 0;

  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << why << " after " << iterations << " iterations, residual "
        << residual << " px (line " << c.line << ", samp " << c.samp
        << ", alt " << alt << ")";
    Throw(ErrorCode::NoConvergence, msg.str());
  };

  const double h = options.fd_step;
  while (residual >= options.tolerance_px) {
    if (iterations >= options.max_iterations) fail("localize did not converge");
    ++iterations;

    const Residual rp = ResidualAt(m, c, P + h, L, H);
    const Residual rm = ResidualAt(m, c, P - h, L, H);
    const Residual lp = ResidualAt(m, c, P, L + h, H);
    const Residual lm = ResidualAt(m, c, P, L - h, H);
    const double j00 = (rp.dline - rm.dline) / (2.0 * h);
    const double j10 = (rp.dsamp - rm.dsamp) / (2.0 * h);
    const double j01 = (lp.dline - lm.dline) / (2.0 * h);
    const double j11 = (lp.dsamp - lm.dsamp) / (2.0 * h);
    const double det = j00 * j11 - j01 * j10;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      fail("singular localization Jacobian");
    }
    const double dP = (j11 * r.dline - j01 * r.dsamp) / det;
    const double dL = (-j10 * r.dline + j00 * r.dsamp) / det;

    double step = 1.0;
    double next_P = P - dP;
    double next_L = L - dL;
    Residual next = ResidualAt(m, c, next_P, next_L, H);
    int halvings = 0;
    while (!(next.norm() < residual) && halvings < 30) {
      step *= 0.5;
      ++halvings;
      next_P = P - step * dP;
      next_L = L - step * dL;
      next = ResidualAt(m, c, next_P, next_L, H);
    }
    if (!(next.norm() <= residual)) fail("localize stalled");
    P = next_P;
    L = next_L;
    r = next;
    residual = r.norm();
    if (std::abs(P) > options.footprint_bound ||
        std::abs(L) > options.footprint_bound) {
      fail("localize left the normalized footprint");
    }
  }
  return Denormalize(m, {P, L, H});
}

std::pair<GeodeticPoint, GeodeticPoint> ImagingRay(const RpcModel& model,
                                                   const ImageCoord& c,
                                                   double alt_top,
                                                   double alt_bottom) {
  if (!(alt_top > alt_bottom)) {
    Throw(ErrorCode::InvalidArgument,
          "imaging ray requires alt_top > alt_bottom");
  }
  return {Localize(model, c, alt_top), Localize(model, c, alt_bottom)};
}

}  // namespace satdsm
