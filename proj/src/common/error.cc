// Copyright 2026 The einu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "einu/common/error.h"

namespace einu {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kPoseUnderTerrain: return "PoseUnderTerrain";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kBadFrameLength: return "BadFrameLength";
    case ErrorCode::kTooFewFilters: return "TooFewFilters";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kNoSignal: return "NoSignal";
    case ErrorCode::kBadFrameDim: return "BadFrameDim";
    case ErrorCode::kBadFeatureDim: return "BadFeatureDim";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kNoInput: return "NoInput";
    case ErrorCode::kUnknownEmotion: return "UnknownEmotion";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kBadMessage: return "BadMessage";
    case ErrorCode::kNotPermitted: return "NotPermitted";
  }
  return "Unknown";
}

}  // namespace einu
