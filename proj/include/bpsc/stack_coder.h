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

// Last-in-first-out entropy coder (range ANS) for bits-back coding.
//
// State is a 64-bit head plus a stack of 32-bit words. Push encodes a
// symbol into the head, spilling the low word onto the stack first when the
// head would overflow; Pop is its exact inverse and refills the head from
// the stack once it drops below 2^32. Pop on a coder that holds nothing
// draws words from an InitialBitsSource, which is how bits-back coding
// obtains its latent samples.
//
// A standalone coder starts with head = 2^16 and grows lazily up to 2^32
// before any word is spilled, so an empty coder costs three bytes rather
// than a full state. A bits-back coder starts with head = 2^32 + w, w being
// the first word of initial bits.

#ifndef BPSC_STACK_CODER_H_
#define BPSC_STACK_CODER_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bpsc/frequency_table.h"

namespace bpsc {

class InitialBitsSource {
 public:
  virtual ~InitialBitsSource() = default;
  virtual uint32_t NextWord() = 0;
};

// Pseudo-random words from mt19937_64 seeded with `seed`; the upper 32 bits
// of each draw are used.
class SeededBits : public InitialBitsSource {
 public:
  explicit SeededBits(uint64_t seed) : rng_(seed) {}
  uint32_t NextWord() override { return static_cast<uint32_t>(rng_() >> 32); }

 private:
  std::mt19937_64 rng_;
};

class StackCoder {
 public:
  static constexpr uint64_t kLower = uint64_t{1} << 32;
  static constexpr uint64_t kStandaloneBottom = uint64_t{1} << 16;

  // Standalone coder: pops past the bottom throw kExhausted.
  StackCoder() = default;

  // Bits-back coder: the head is seeded from `source`, and pops that find
  // the stack empty draw further words from it. `source` must outlive the
  // coder.
  explicit StackCoder(InitialBitsSource* source);

  void Push(uint32_t start, uint32_t freq, int precision_bits);
  void Push(const FrequencyTable& table, uint32_t symbol);

  uint32_t Pop(const FrequencyTable& table);
  // Pops a value coded with Push(value, 1, bits).
  uint32_t PopUniform(int bits);

  // Words taken from the initial-bits source, including the head seed.
  uint64_t consumed_words() const { return consumed_words_; }

  uint64_t head() const { return head_; }
  std::span<const uint32_t> words() const { return words_; }

  // Information held by the coder: 32 bits per stacked word plus log2(head).
  double BitLength() const;

  // Stacked words little-endian bottom first, then the head in its minimal
  // little-endian byte count. A head below 2^32 is only possible with an
  // empty stack, so the split is recoverable from the total length.
  std::vector<uint8_t> Serialize() const;
  // Throws kTruncated for an empty buffer and kCorruptStream for a
  // non-canonical head.
  static StackCoder Deserialize(std::span<const uint8_t> bytes);

  // Detaches the initial-bits source; later pops past the bottom throw.
  void DetachSource() { source_ = nullptr; }

 private:
  uint32_t FinishPop(uint32_t slot, uint32_t start, uint32_t freq,
                     int precision_bits);
  void CheckPoppable() const;

  uint64_t head_ = kStandaloneBottom;
  std::vector<uint32_t> words_;
  InitialBitsSource* source_ = nullptr;
  uint64_t consumed_words_ = 0;
};

}  // namespace bpsc

#endif  // BPSC_STACK_CODER_H_
