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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace refinery {

enum class ErrorCode {
  kChainBroken,
  kSinkError,
  kMalformedRecord,
  kTruncated,
  kBadMagic,
  kTruncatedRecord,
  kGzipError,
  kUnparsableUrl,
  kEmptyText,
  kEmptyShingleSet,
  kParamMismatch,
  kDomainError,
  kInvalidSpans,
  kRegistryUnavailable,
  kConfigError,
  kIoError,
};

const char* ErrorCodeName(ErrorCode code);

// Base for every error raised by the library. Carries a stable code so
// callers (the CLI in particular) can map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors tied to a position in an input stream (byte offset or line number).
class PositionedError : public Error {
 public:
  PositionedError(ErrorCode code, std::uint64_t position, const std::string& message);

  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t position_;
};

}  // namespace refinery
