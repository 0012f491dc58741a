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

#include "satdsm/geodesy.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "satdsm/errors.h"

namespace satdsm {

double Distance(const LocalPoint& a, const LocalPoint& b) {
  const double de = a.east - b.east;
  const double dn = a.north - b.north;
  const double du = a.up - b.up;
  return std::sqrt(de * de + dn * dn + du * du);
}

LocalFrame::LocalFrame(double origin_lon, double origin_lat)
    : origin_lon_(origin_lon), origin_lat_(origin_lat) {
  if (!std::isfinite(origin_lon) || !std::isfinite(origin_lat) ||
      std::abs(origin_lat) > 90.0 || std::abs(origin_lon) > 180.0) {
    Throw(ErrorCode::InvalidArgument, "local frame origin out of range");
  }
  const double e2 = kWgs84F * (2.0 - kWgs84F);
  const double phi = origin_lat * std::numbers::pi / 180.0;
  const double s = std::sin(phi);
  const double w2 = 1.0 - e2 * s * s;
  const double prime_vertical = kWgs84A / std::sqrt(w2);
  const double meridian = kWgs84A * (1.0 - e2) / (w2 * std::sqrt(w2));
  const double deg = std::numbers::pi / 180.0;
  meters_per_deg_lat_ = meridian * deg;
  meters_per_deg_lon_ = prime_vertical * std::cos(phi) * deg;
}

LocalPoint LocalFrame::ToLocal(const GeodeticPoint& p) const {
  const double dlon = p.lon - origin_lon_;
  const double dlat = p.lat - origin_lat_;
  if (!(std::abs(dlon) < 1.0) || !(std::abs(dlat) < 1.0)) {
    std::ostringstream msg;
    msg << "point (" << p.lon << ", " << p.lat << ") is not within 1 deg of "
        << "frame origin (" << origin_lon_ << ", " << origin_lat_ << ")";
    Throw(ErrorCode::OutOfFrame, msg.str());
  }
  return {dlon * meters_per_deg_lon_, dlat * meters_per_deg_lat_, p.alt};
}

GeodeticPoint LocalFrame::FromLocal(const LocalPoint& p) const {
  const double dlon = p.east / meters_per_deg_lon_;
  const double dlat = p.north / meters_per_deg_lat_;
  if (!(std::abs(dlon) < 1.0) || !(std::abs(dlat) < 1.0)) {
    Throw(ErrorCode::OutOfFrame, "local point is more than 1 deg from origin");
  }
  return {origin_lon_ + dlon, origin_lat_ + dlat, p.up};
}

}  // namespace satdsm
