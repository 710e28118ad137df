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

#include "bpsc/stego.h"

#include <numeric>
#include <string>

#include "bpsc/status.h"

namespace bpsc {

Message MessageFromBytes(std::span<const uint8_t> bytes, uint64_t bit_length) {
  if (bit_length > static_cast<uint64_t>(bytes.size()) * 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "message holds " + std::to_string(bytes.size() * 8) +
                    " bits, " + std::to_string(bit_length) + " requested");
  }
  Message m;
  m.bits.resize(bit_length);
  for (uint64_t i = 0; i < bit_length; ++i) {
    m.bits[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1;
  }
  return m;
}

std::vector<uint8_t> MessageToBytes(const Message& message) {
  std::vector<uint8_t> bytes((message.length() + 7) / 8, 0);
  for (uint64_t i = 0; i < message.length(); ++i) {
    bytes[i >> 3] |= static_cast<uint8_t>((message.bits[i] & 1)
                                          << (7 - (i & 7)));
  }
  return bytes;
}

uint64_t SegmentPlan::total() const {
  return std::accumulate(lengths.begin(), lengths.end(), uint64_t{0});
}

SegmentPlan PlanSegments(uint64_t message_bits, int num_planes,
                         uint64_t plane_capacity) {
  if (num_planes < 1 || num_planes > kNumPlanes) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment count must be in [1, 8]");
  }
  const uint64_t capacity = plane_capacity * static_cast<uint64_t>(num_planes);
  if (message_bits > capacity) {
    throw Error(ErrorCode::kCapacityExceeded,
                "message of " + std::to_string(message_bits) +
                    " bits exceeds capacity of " + std::to_string(capacity) +
                    " bits");
  }
  SegmentPlan plan;
  plan.plane_capacity = plane_capacity;
  plan.lengths.resize(num_planes);
  const uint64_t base = message_bits / num_planes;
  const uint64_t extra = message_bits % num_planes;
  for (int i = 0; i < num_planes; ++i) {
    plan.lengths[i] = base + (static_cast<uint64_t>(i) < extra ? 1 : 0);
  }
  return plan;
}

namespace {

void CheckPlanAgainstPlanes(std::span<const BitPlane> planes,
                            const SegmentPlan& plan) {
  if (planes.size() != plan.lengths.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "plan has " + std::to_string(plan.lengths.size()) +
                    " segments for " + std::to_string(planes.size()) +
                    " planes");
  }
  for (size_t i = 0; i < planes.size(); ++i) {
    if (planes[i].bits.size() != plan.plane_capacity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "plane size differs from plan capacity");
    }
    if (plan.lengths[i] > plan.plane_capacity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segment longer than plane capacity");
    }
  }
}

}  // namespace

StegoResult Embed(std::span<const BitPlane> local_planes,
                  const Message& message, const SegmentPlan& plan) {
  CheckPlanAgainstPlanes(local_planes, plan);
  if (plan.total() != message.length()) {
    throw Error(ErrorCode::kInvalidArgument,
                "plan covers " + std::to_string(plan.total()) +
                    " bits, message has " + std::to_string(message.length()));
  }
  StegoResult out;
  out.planes.assign(local_planes.begin(), local_planes.end());
  out.sidecar.bitmaps.resize(local_planes.size());
  uint64_t offset = 0;
  for (size_t i = 0; i < local_planes.size(); ++i) {
    const uint64_t len = plan.lengths[i];
    std::vector<uint8_t>& bitmap = out.sidecar.bitmaps[i];
    bitmap.resize(len);
    std::vector<uint8_t>& y = out.planes[i].bits;
    const std::vector<uint8_t>& x = local_planes[i].bits;
    for (uint64_t j = 0; j < len; ++j) {
      y[j] = message.bits[offset + j] & 1;
      bitmap[j] = (x[j] ^ y[j]) & 1;
    }
    offset += len;
  }
  return out;
}

Message ExtractMessage(std::span<const BitPlane> stego_planes,
                       const SegmentPlan& plan) {
  CheckPlanAgainstPlanes(stego_planes, plan);
  Message m;
  m.bits.reserve(plan.total());
  for (size_t i = 0; i < stego_planes.size(); ++i) {
    const auto& y = stego_planes[i].bits;
    m.bits.insert(m.bits.end(), y.begin(), y.begin() + plan.lengths[i]);
  }
  return m;
}

std::vector<BitPlane> RecoverPlanes(std::span<const BitPlane> stego_planes,
                                    const BitmapSidecar& sidecar) {
  if (sidecar.bitmaps.size() != stego_planes.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "sidecar has " + std::to_string(sidecar.bitmaps.size()) +
                    " bitmaps for " + std::to_string(stego_planes.size()) +
                    " planes");
  }
  std::vector<BitPlane> out(stego_planes.begin(), stego_planes.end());
  for (size_t i = 0; i < out.size(); ++i) {
    const auto& bitmap = sidecar.bitmaps[i];
    if (bitmap.size() > out[i].bits.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "bitmap longer than its plane");
    }
    for (size_t j = 0; j < bitmap.size(); ++j) {
      out[i].bits[j] ^= bitmap[j] & 1;
    }
  }
  return out;
}

std::vector<uint8_t> SerializeSidecar(const BitmapSidecar& sidecar) {
  Message all;
  for (const auto& bitmap : sidecar.bitmaps) {
    all.bits.insert(all.bits.end(), bitmap.begin(), bitmap.end());
  }
  return MessageToBytes(all);
}

BitmapSidecar ParseSidecar(std::span<const uint8_t> bytes,
                           std::span<const uint64_t> lengths) {
  const uint64_t total =
      std::accumulate(lengths.begin(), lengths.end(), uint64_t{0});
  if (bytes.size() != (total + 7) / 8) {
    throw Error(ErrorCode::kLengthMismatch,
                "sidecar holds " + std::to_string(bytes.size()) +
                    " bytes, expected " + std::to_string((total + 7) / 8));
  }
  if (total % 8 != 0) {
    const uint8_t pad_mask = static_cast<uint8_t>(0xFF >> (total % 8));
    if (bytes.back() & pad_mask) {
      throw Error(ErrorCode::kCorruptStream, "sidecar padding bits are set");
    }
  }
  const Message all = MessageFromBytes(bytes, total);
  BitmapSidecar sidecar;
  sidecar.bitmaps.resize(lengths.size());
  uint64_t offset = 0;
  for (size_t i = 0; i < lengths.size(); ++i) {
    sidecar.bitmaps[i].assign(all.bits.begin() + offset,
                              all.bits.begin() + offset + lengths[i]);
    offset += lengths[i];
  }
  return sidecar;
}

}  // namespace bpsc
