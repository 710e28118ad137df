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

// Segmented message embedding into the local bit planes.
//
// The message is split into one segment per local plane. Segment i replaces
// the first L_i bits of plane i in raster order (top to bottom, left to right
// within a row). The XOR of original and replaced bits over those positions
// is kept as a bitmap so the original planes can be restored exactly.

#ifndef BPSC_STEGO_H_
#define BPSC_STEGO_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bpsc/bitplane.h"

namespace bpsc {

struct Message {
  std::vector<uint8_t> bits;  // one 0/1 value per element

  uint64_t length() const { return bits.size(); }
  bool operator==(const Message&) const = default;
};

// Reads the first `bit_length` bits of `bytes`, most significant bit of each
// byte first. Throws kInvalidArgument if bytes holds fewer bits.
Message MessageFromBytes(std::span<const uint8_t> bytes, uint64_t bit_length);

// Packs message bits MSB-first; the final byte is zero-padded.
std::vector<uint8_t> MessageToBytes(const Message& message);

struct SegmentPlan {
  std::vector<uint64_t> lengths;  // L_1..L_s
  uint64_t plane_capacity = 0;    // width * height

  uint64_t total() const;
  int num_segments() const { return static_cast<int>(lengths.size()); }
  bool operator==(const SegmentPlan&) const = default;
};

// Near-equal split: the first (L mod s) segments carry one extra bit.
// Throws kCapacityExceeded if L > s * capacity.
SegmentPlan PlanSegments(uint64_t message_bits, int num_planes,
                         uint64_t plane_capacity);

struct BitmapSidecar {
  std::vector<std::vector<uint8_t>> bitmaps;  // B^i, exactly L_i bits each

  bool operator==(const BitmapSidecar&) const = default;
};

struct StegoResult {
  std::vector<BitPlane> planes;  // Y^1..Y^s
  BitmapSidecar sidecar;
};

// Throws kInvalidArgument if the plan does not match the planes or message.
StegoResult Embed(std::span<const BitPlane> local_planes,
                  const Message& message, const SegmentPlan& plan);

Message ExtractMessage(std::span<const BitPlane> stego_planes,
                       const SegmentPlan& plan);

// x^i = Y^i xor B^i, with B^i zero past its stored length. Throws
// kLengthMismatch if the sidecar does not fit the planes.
std::vector<BitPlane> RecoverPlanes(std::span<const BitPlane> stego_planes,
                                    const BitmapSidecar& sidecar);

// Sidecar wire form: all bitmaps concatenated in plane order, packed MSB
// first, ceil(L / 8) bytes, zero padding.
std::vector<uint8_t> SerializeSidecar(const BitmapSidecar& sidecar);

// Throws kLengthMismatch if the byte count is not ceil(sum(lengths) / 8) and
// kCorruptStream if padding bits are set.
BitmapSidecar ParseSidecar(std::span<const uint8_t> bytes,
                           std::span<const uint64_t> lengths);

}  // namespace bpsc

#endif  // BPSC_STEGO_H_
