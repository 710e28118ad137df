// Copyright 2026 The BPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bpsc/status.h"

namespace bpsc {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kCapacityExceeded: return "capacity exceeded";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kBadVersion: return "bad version";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kChecksumMismatch: return "checksum mismatch";
    case ErrorCode::kUnknownModel: return "unknown model";
    case ErrorCode::kCorruptStream: return "corrupt stream";
    case ErrorCode::kExhausted: return "stream exhausted";
  }
  return "unknown error";
}

namespace {

std::string Decorate(ErrorCode code, const std::string& what, size_t offset) {
  std::string out = ErrorCodeName(code);
  out += ": ";
  out += what;
  if (offset != Error::kNoOffset) {
    out += " (at byte " + std::to_string(offset) + ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what, size_t offset)
    : std::runtime_error(Decorate(code, what, offset)),
      code_(code),
      offset_(offset) {}

}  // namespace bpsc
