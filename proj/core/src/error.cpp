// Copyright 2026 The Refinery Authors. All Rights Reserved.
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

#include "refinery/error.hpp"

namespace refinery {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kChainBroken: return "ChainBroken";
    case ErrorCode::kSinkError: return "SinkError";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedRecord: return "TruncatedRecord";
    case ErrorCode::kGzipError: return "GzipError";
    case ErrorCode::kUnparsableUrl: return "UnparsableUrl";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kEmptyShingleSet: return "EmptyShingleSet";
    case ErrorCode::kParamMismatch: return "ParamMismatch";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kInvalidSpans: return "InvalidSpans";
    case ErrorCode::kRegistryUnavailable: return "RegistryUnavailable";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message), code_(code) {}

PositionedError::PositionedError(ErrorCode code, std::uint64_t position,
                                 const std::string& message)
    : Error(code, message + " (at " + std::to_string(position) + ")"), position_(position) {}

}  // namespace refinery
