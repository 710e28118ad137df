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

#ifndef BPSC_STATUS_H_
#define BPSC_STATUS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpsc {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kCapacityExceeded,
  kIo,
  kFormat,            // malformed PGM input
  kBadMagic,
  kBadVersion,
  kTruncated,
  kLengthMismatch,
  kChecksumMismatch,
  kUnknownModel,
  kCorruptStream,     // entropy-coded payload does not decode
  kExhausted,         // stack coder popped past its bottom
};

const char* ErrorCodeName(ErrorCode code);

// All failures in the library are reported by throwing Error. `offset` is
// the byte offset into the parsed buffer for container/PGM errors and
// kNoOffset otherwise.
class Error : public std::runtime_error {
 public:
  static constexpr size_t kNoOffset = static_cast<size_t>(-1);

  Error(ErrorCode code, const std::string& what, size_t offset = kNoOffset);

  ErrorCode code() const { return code_; }
  size_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  size_t offset_;
};

}  // namespace bpsc

#endif  // BPSC_STATUS_H_
