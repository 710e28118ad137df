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

#include "bpsc/range_coder.h"

#include <cassert>
#include <string>

#include "bpsc/status.h"

namespace bpsc {

namespace {

constexpr uint32_t kTop = 1u << 24;
// Bytes the decoder may read past the buffer: the four bytes of the final
// code value, some of which the encoder drops when they are zero.
constexpr size_t kMaxOverrun = 4;

}  // namespace

void RangeEncoder::ShiftLow() {
  if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    uint8_t pending = cache_;
    do {
      const uint8_t byte = static_cast<uint8_t>(pending + carry);
      if (skip_leading_) {
        assert(byte == 0);
        skip_leading_ = false;
      } else {
        out_.push_back(byte);
      }
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<uint8_t>(static_cast<uint32_t>(low_) >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::Encode(uint32_t start, uint32_t freq, int precision_bits) {
  const uint32_t r = range_ >> precision_bits;
  low_ += static_cast<uint64_t>(r) * start;
  range_ = r * freq;
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void RangeEncoder::Encode(const FrequencyTable& table, uint32_t symbol) {
  if (symbol >= table.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol " + std::to_string(symbol) + " outside alphabet of " +
                    std::to_string(table.size()));
  }
  Encode(table.start(symbol), table.freq(symbol), table.precision_bits());
}

std::vector<uint8_t> RangeEncoder::Finish() {
  // Any value in [low, low + range) identifies the stream; take the one
  // with the most trailing zero bits.
  const uint64_t limit = low_ + range_;
  for (int bits = 32; bits >= 0; --bits) {
    const uint64_t mask = (uint64_t{1} << bits) - 1;
    const uint64_t v = (low_ + mask) & ~mask;
    if (v < limit) {
      low_ = v;
      break;
    }
  }
  for (int i = 0; i < 5; ++i) ShiftLow();
  // The last four bytes written are the code value; its zero tail is
  // implied by the decoder's zero padding.
  int droppable = 4;
  while (droppable > 0 && !out_.empty() && out_.back() == 0) {
    out_.pop_back();
    --droppable;
  }
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

uint8_t RangeDecoder::NextByte() {
  if (pos_ < bytes_.size()) return bytes_[pos_++];
  if (++pos_ > bytes_.size() + kMaxOverrun) {
    throw Error(ErrorCode::kTruncated, "range-coded stream ended early",
                bytes_.size());
  }
  return 0;
}

uint32_t RangeDecoder::Decode(const FrequencyTable& table) {
  const uint32_t r = range_ >> table.precision_bits();
  const uint32_t slot = code_ / r;
  if (slot >= table.total()) {
    throw Error(ErrorCode::kCorruptStream,
                "code value outside the coding interval");
  }
  const uint32_t symbol = table.SymbolForSlot(slot);
  code_ -= r * table.start(symbol);
  range_ = r * table.freq(symbol);
  while (range_ < kTop) {
    code_ = (code_ << 8) | NextByte();
    range_ <<= 8;
  }
  return symbol;
}

std::vector<uint8_t> ArithEncode(std::span<const uint32_t> symbols,
                                 const TableCallback& tables) {
  RangeEncoder enc;
  for (size_t i = 0; i < symbols.size(); ++i) {
    enc.Encode(tables(i, symbols.first(i)), symbols[i]);
  }
  return enc.Finish();
}

std::vector<uint32_t> ArithDecode(std::span<const uint8_t> bytes,
                                  const TableCallback& tables, size_t count) {
  RangeDecoder dec(bytes);
  std::vector<uint32_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    out.push_back(dec.Decode(tables(i, out)));
  }
  if (!dec.ConsumedAll()) {
    throw Error(ErrorCode::kCorruptStream,
                "trailing bytes after the last symbol");
  }
  return out;
}

}  // namespace bpsc
