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

// 32-bit renormalizing range coder with carry propagation.
//
// The coder keeps a 32-bit range that is renormalized a byte at a time once
// it falls below 2^24, and a 33-bit low register whose overflow is carried
// into bytes that were held back (the "cache" and any run of 0xFF bytes
// behind it). Bytes are emitted most significant first.
//
// The leading byte of the code value is always zero and is not written. On
// flush the encoder picks the value in the final interval with the most
// trailing zero bits and drops the zero bytes that result; the decoder reads
// zeros past the end of its buffer. Stream length is therefore recorded by
// the container, not by the stream.

#ifndef BPSC_RANGE_CODER_H_
#define BPSC_RANGE_CODER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bpsc/frequency_table.h"

namespace bpsc {

class RangeEncoder {
 public:
  // Codes the interval [start, start + freq) out of 2^precision_bits.
  void Encode(uint32_t start, uint32_t freq, int precision_bits);
  // Throws kInvalidArgument for a symbol outside the table.
  void Encode(const FrequencyTable& table, uint32_t symbol);

  // Flushes and returns the stream. The encoder must not be reused.
  std::vector<uint8_t> Finish();

 private:
  void ShiftLow();

  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
  bool skip_leading_ = true;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // Throws kCorruptStream if the code value lies outside the table, and
  // kTruncated if decoding runs more than 4 bytes past the buffer.
  uint32_t Decode(const FrequencyTable& table);

  // True once every byte in the buffer has been consumed. A stream decoded
  // with the tables it was encoded with always ends in this state.
  bool ConsumedAll() const { return pos_ >= bytes_.size(); }

 private:
  uint8_t NextByte();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint32_t code_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
};

// Supplies the table for step `step`; `history` holds the symbols coded so
// far (history.size() == step).
using TableCallback = std::function<FrequencyTable(
    size_t step, std::span<const uint32_t> history)>;

std::vector<uint8_t> ArithEncode(std::span<const uint32_t> symbols,
                                 const TableCallback& tables);

std::vector<uint32_t> ArithDecode(std::span<const uint8_t> bytes,
                                  const TableCallback& tables, size_t count);

}  // namespace bpsc

#endif  // BPSC_RANGE_CODER_H_
