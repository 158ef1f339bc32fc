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

#ifndef EINU_COMMON_ERROR_H_
#define EINU_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace einu {

enum class ErrorCode {
  kInvalidParams,
  kNonFiniteState,
  kPoseUnderTerrain,
  kDimensionMismatch,
  kNonFiniteGradient,
  kMalformedFile,
  kUnsupportedEncoding,
  kBadFrameLength,
  kTooFewFilters,
  kTooShort,
  kNoConvergence,
  kDegenerate,
  kNoSignal,
  kBadFrameDim,
  kBadFeatureDim,
  kNonFiniteLoss,
  kNoInput,
  kUnknownEmotion,
  kBadMagic,
  kVersionMismatch,
  kLengthMismatch,
  kIoError,
  kBadMessage,
  kNotPermitted,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every error raised by the library carries a machine-readable code so the
// orchestrator can forward it to clients without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace einu

#endif  // EINU_COMMON_ERROR_H_
