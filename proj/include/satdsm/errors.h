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

#ifndef SATDSM_ERRORS_H
#define SATDSM_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace satdsm {

/// Every failure raised by the library carries one of these codes. The CLI
/// maps codes onto process exit statuses through ErrorFamily.
enum class ErrorCode {
  // Usage / configuration
  InvalidArgument,
  ConfigError,
  // I/O
  IoError,
  // Parsing and file formats
  MissingKey,
  MalformedNumber,
  MalformedFile,
  NoTimestampKey,
  MalformedTimestamp,
  // Geometry and numerics
  NonPositiveScale,
  DenominatorNearZero,
  NoConvergence,
  OutOfFrame,
  NonPositiveMargin,
  RayExitsFootprint,
  EmptyOutput,
  DepthOutOfBracket,
  InsufficientOverlap,
  EmptyInput,
  NonPositiveDepth,
  // Curation
  NoAltitudeSource,
  SceneRejected,
  // Evaluation
  GridMismatch,
  NoOverlap,
};

enum class ErrorFamily {
  Usage = 1,
  Io = 2,
  Format = 3,
  Numerical = 4,
  Curation = 5,
  Evaluation = 6,
};

ErrorFamily FamilyOf(ErrorCode code);
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  ErrorFamily family() const { return FamilyOf(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace satdsm

#endif  // SATDSM_ERRORS_H
