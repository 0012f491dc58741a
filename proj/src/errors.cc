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

#include "satdsm/errors.h"

namespace satdsm {

ErrorFamily FamilyOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConfigError:
      return ErrorFamily::Usage;
    case ErrorCode::IoError:
      return ErrorFamily::Io;
    case ErrorCode::MissingKey:
    case ErrorCode::MalformedNumber:
    case ErrorCode::MalformedFile:
    case ErrorCode::NoTimestampKey:
    case ErrorCode::MalformedTimestamp:
      return ErrorFamily::Format;
    case ErrorCode::NonPositiveScale:
    case ErrorCode::DenominatorNearZero:
    case ErrorCode::NoConvergence:
    case ErrorCode::OutOfFrame:
    case ErrorCode::NonPositiveMargin:
    case ErrorCode::RayExitsFootprint:
    case ErrorCode::EmptyOutput:
    case ErrorCode::DepthOutOfBracket:
    case ErrorCode::InsufficientOverlap:
    case ErrorCode::EmptyInput:
    case ErrorCode::NonPositiveDepth:
      return ErrorFamily::Numerical;
    case ErrorCode::NoAltitudeSource:
    case ErrorCode::SceneRejected:
      return ErrorFamily::Curation;
    case ErrorCode::GridMismatch:
    case ErrorCode::NoOverlap:
      return ErrorFamily::Evaluation;
  }
  return ErrorFamily::Usage;
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::NoTimestampKey: return "NoTimestampKey";
    case ErrorCode::MalformedTimestamp: return "MalformedTimestamp";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::DenominatorNearZero: return "DenominatorNearZero";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfFrame: return "OutOfFrame";
    case ErrorCode::NonPositiveMargin: return "NonPositiveMargin";
    case ErrorCode::RayExitsFootprint: return "RayExitsFootprint";
    case ErrorCode::EmptyOutput: return "EmptyOutput";
    case ErrorCode::DepthOutOfBracket: return "DepthOutOfBracket";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::NoAltitudeSource: return "NoAltitudeSource";
    case ErrorCode::SceneRejected: return "SceneRejected";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoOverlap: return "NoOverlap";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace satdsm
