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

#include "bpsc/stack_coder.h"

#include <bit>
#include <cmath>
#include <string>

#include "bpsc/status.h"

namespace bpsc {

StackCoder::StackCoder(InitialBitsSource* source) : source_(source) {
  head_ = kLower | source_->NextWord();
  consumed_words_ = 1;
}

void StackCoder::Push(uint32_t start, uint32_t freq, int precision_bits) {
  const uint32_t total = 1u << precision_bits;
  if (freq == total) return;  // certain symbol, carries no information
  // Spill so that the encoded head stays below 2^64.
  const uint64_t limit = static_cast<uint64_t>(freq) << (64 - precision_bits);
  if (head_ >= limit) {
    words_.push_back(static_cast<uint32_t>(head_));
    head_ >>= 32;
  }
  head_ = ((head_ / freq) << precision_bits) + (head_ % freq) + start;
}

void StackCoder::Push(const FrequencyTable& table, uint32_t symbol) {
  if (symbol >= table.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol " + std::to_string(symbol) + " outside alphabet of " +
                    std::to_string(table.size()));
  }
  Push(table.start(symbol), table.freq(symbol), table.precision_bits());
}

void StackCoder::CheckPoppable() const {
  if (words_.empty() && source_ == nullptr && head_ <= kStandaloneBottom) {
    throw Error(ErrorCode::kExhausted,
                "pop on an empty stack coder without initial bits");
  }
}

uint32_t StackCoder::FinishPop(uint32_t slot, uint32_t start, uint32_t freq,
                               int precision_bits) {
  head_ = freq * (head_ >> precision_bits) + slot - start;
  if (head_ < kLower) {
    if (!words_.empty()) {
      head_ = (head_ << 32) | words_.back();
      words_.pop_back();
    } else if (source_ != nullptr) {
      head_ = (head_ << 32) | source_->NextWord();
      ++consumed_words_;
    } else if (head_ < kStandaloneBottom) {
      throw Error(ErrorCode::kCorruptStream,
                  "stack coder state fell below its bottom");
    }
  }
  return slot;
}

uint32_t StackCoder::Pop(const FrequencyTable& table) {
  const int k = table.precision_bits();
  const uint32_t slot = static_cast<uint32_t>(head_ & (table.total() - 1));
  const uint32_t symbol = table.SymbolForSlot(slot);
  // A certain symbol was pushed as a no-op, so popping it is one too.
  if (table.freq(symbol) == table.total()) return symbol;
  CheckPoppable();
  FinishPop(slot, table.start(symbol), table.freq(symbol), k);
  return symbol;
}

uint32_t StackCoder::PopUniform(int bits) {
  CheckPoppable();
  const uint32_t slot = static_cast<uint32_t>(head_ & ((1u << bits) - 1));
  FinishPop(slot, slot, 1, bits);
  return slot;
}

double StackCoder::BitLength() const {
  return 32.0 * static_cast<double>(words_.size()) +
         std::log2(static_cast<double>(head_));
}

std::vector<uint8_t> StackCoder::Serialize() const {
  std::vector<uint8_t> out;
  out.reserve(words_.size() * 4 + 8);
  for (uint32_t w : words_) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(w >> (8 * i)));
  }
  const int head_bytes = (std::bit_width(head_) + 7) / 8;
  for (int i = 0; i < head_bytes; ++i) {
    out.push_back(static_cast<uint8_t>(head_ >> (8 * i)));
  }
  return out;
}

StackCoder StackCoder::Deserialize(std::span<const uint8_t> bytes) {
  if (bytes.empty()) {
    throw Error(ErrorCode::kTruncated, "empty stack-coder stream", 0);
  }
  const size_t n = bytes.size();
  const size_t head_bytes = n <= 4 ? n : 5 + (n - 5) % 4;
  const size_t num_words = (n - head_bytes) / 4;
  StackCoder c;
  c.words_.resize(num_words);
  for (size_t j = 0; j < num_words; ++j) {
    uint32_t w = 0;
    for (int i = 0; i < 4; ++i) w |= uint32_t{bytes[4 * j + i]} << (8 * i);
    c.words_[j] = w;
  }
  uint64_t head = 0;
  for (size_t i = 0; i < head_bytes; ++i) {
    head |= uint64_t{bytes[4 * num_words + i]} << (8 * i);
  }
  if (bytes.back() == 0 || head < kStandaloneBottom ||
      (num_words > 0 && head < kLower)) {
    throw Error(ErrorCode::kCorruptStream, "non-canonical stack-coder head",
                4 * num_words);
  }
  c.head_ = head;
  return c;
}

}  // namespace bpsc
