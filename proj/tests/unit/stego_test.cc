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

#include <gtest/gtest.h>

#include "bpsc/status.h"
#include "synth.h"

namespace bpsc {
namespace {

using testing::Rng;

std::vector<BitPlane> RandomPlanes(int count, uint32_t w, uint32_t h,
                                   Rng& rng) {
  std::vector<BitPlane> planes(count);
  for (int i = 0; i < count; ++i) {
    planes[i].width = w;
    planes[i].height = h;
    planes[i].index = i + 1;
    planes[i].bits.resize(static_cast<size_t>(w) * h);
    for (auto& b : planes[i].bits) b = static_cast<uint8_t>(rng() >> 63);
  }
  return planes;
}

int Hamming(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

TEST(PlanSegments, SplitsRemainderOverLeadingPlanes) {
  EXPECT_EQ(PlanSegments(10, 3, 100).lengths,
            (std::vector<uint64_t>{4, 3, 3}));
  EXPECT_EQ(PlanSegments(0, 4, 100).lengths,
            (std::vector<uint64_t>{0, 0, 0, 0}));
  EXPECT_EQ(PlanSegments(2, 5, 100).lengths,
            (std::vector<uint64_t>{1, 1, 0, 0, 0}));
  EXPECT_EQ(PlanSegments(800, 8, 100).lengths,
            std::vector<uint64_t>(8, 100));
}

TEST(PlanSegments, LengthsSumAndDifferByAtMostOne) {
  for (uint64_t L = 0; L < 200; ++L) {
    for (int s = 1; s <= 8; ++s) {
      if (L > 25u * s) continue;
      const SegmentPlan p = PlanSegments(L, s, 25);
      EXPECT_EQ(p.total(), L);
      for (int i = 1; i < s; ++i) {
        EXPECT_LE(p.lengths[i], p.lengths[i - 1]);
        EXPECT_LE(p.lengths[0] - p.lengths[i], 1u);
      }
    }
  }
}

TEST(PlanSegments, CapacityErrors) {
  try {
    PlanSegments(301, 3, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityExceeded);
  }
  EXPECT_NO_THROW(PlanSegments(300, 3, 100));
  EXPECT_THROW(PlanSegments(1, 0, 100), Error);
  EXPECT_THROW(PlanSegments(1, 9, 100), Error);
}

TEST(Embed, MessageReplacesPlanePrefix) {
  Rng rng(1);
  auto planes = RandomPlanes(1, 4, 1, rng);
  planes[0].bits = {0, 1, 1, 0};
  Message m;
  m.bits = {1, 1, 0};
  const StegoResult r = Embed(planes, m, PlanSegments(3, 1, 4));
  EXPECT_EQ(r.planes[0].bits, (std::vector<uint8_t>{1, 1, 0, 0}));
  EXPECT_EQ(r.sidecar.bitmaps[0], (std::vector<uint8_t>{1, 0, 1}));
}

TEST(Embed, MessageEqualToPlaneLeavesItUnchanged) {
  Rng rng(2);
  const auto planes = RandomPlanes(3, 10, 10, rng);
  Message m;
  for (const auto& p : planes) {
    m.bits.insert(m.bits.end(), p.bits.begin(), p.bits.begin() + 20);
  }
  const StegoResult r = Embed(planes, m, PlanSegments(60, 3, 100));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.planes[i], planes[i]);
    EXPECT_EQ(r.sidecar.bitmaps[i], std::vector<uint8_t>(20, 0));
  }
}

TEST(Embed, ComplementFlipsEveryEmbeddedBit) {
  Rng rng(3);
  const auto planes = RandomPlanes(2, 8, 8, rng);
  Message m;
  for (const auto& p : planes) {
    for (int j = 0; j < 64; ++j) m.bits.push_back(p.bits[j] ^ 1);
  }
  const StegoResult r = Embed(planes, m, PlanSegments(128, 2, 64));
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(r.sidecar.bitmaps[i], std::vector<uint8_t>(64, 1));
    EXPECT_EQ(Hamming(r.planes[i].bits, planes[i].bits), 64);
  }
}

TEST(Embed, RandomRoundTripsAndBitmapWeightIsHammingDistance) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 8);
    const uint32_t w = 1 + rng() % 20, h = 1 + rng() % 20;
    const auto planes = RandomPlanes(s, w, h, rng);
    const uint64_t cap = static_cast<uint64_t>(w) * h;
    const uint64_t L = rng() % (cap * s + 1);
    const Message m = testing::RandomMessage(L, rng);
    const SegmentPlan plan = PlanSegments(L, s, cap);
    const StegoResult r = Embed(planes, m, plan);
    EXPECT_EQ(ExtractMessage(r.planes, plan), m);
    const auto recovered = RecoverPlanes(r.planes, r.sidecar);
    for (int i = 0; i < s; ++i) {
      EXPECT_EQ(recovered[i], planes[i]);
      int weight = 0;
      for (uint8_t b : r.sidecar.bitmaps[i]) weight += b;
      EXPECT_EQ(weight, Hamming(r.planes[i].bits, planes[i].bits));
      // Bits past the segment are untouched.
      for (size_t j = plan.lengths[i]; j < cap; ++j) {
        EXPECT_EQ(r.planes[i].bits[j], planes[i].bits[j]);
      }
    }
    // XOR with the sidecar is an involution.
    const auto twice = RecoverPlanes(recovered, r.sidecar);
    for (int i = 0; i < s; ++i) EXPECT_EQ(twice[i], r.planes[i]);
    const auto bytes = SerializeSidecar(r.sidecar);
    EXPECT_EQ(bytes.size(), (L + 7) / 8);
    EXPECT_EQ(ParseSidecar(bytes, plan.lengths), r.sidecar);
  }
}

TEST(Embed, RejectsMismatchedPlan) {
  Rng rng(5);
  const auto planes = RandomPlanes(2, 4, 4, rng);
  const Message m = testing::RandomMessage(5, rng);
  EXPECT_THROW(Embed(planes, m, PlanSegments(5, 3, 16)), Error);
  EXPECT_THROW(Embed(planes, m, PlanSegments(6, 2, 16)), Error);
  EXPECT_THROW(Embed(planes, m, PlanSegments(5, 2, 15)), Error);
}

TEST(RecoverPlanes, RejectsWrongBitmapCount) {
  Rng rng(6);
  const auto planes = RandomPlanes(2, 4, 4, rng);
  BitmapSidecar sc;
  sc.bitmaps.resize(3);
  try {
    RecoverPlanes(planes, sc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(Sidecar, PacksMostSignificantBitFirst) {
  BitmapSidecar sc;
  sc.bitmaps = {{1, 0, 1}, {1, 1}};
  EXPECT_EQ(SerializeSidecar(sc), (std::vector<uint8_t>{0b10111000}));
  sc.bitmaps = {{}, {}};
  EXPECT_TRUE(SerializeSidecar(sc).empty());
}

TEST(Sidecar, ParseErrors) {
  const std::vector<uint64_t> lengths = {3, 2};
  try {
    ParseSidecar(std::vector<uint8_t>{0, 0}, lengths);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  try {
    ParseSidecar(std::vector<uint8_t>{0b00000100}, lengths);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptStream);
  }
}

TEST(Message, BytesRoundTrip) {
  const std::vector<uint8_t> bytes = {0xA5, 0x3C};
  const Message m = MessageFromBytes(bytes, 12);
  EXPECT_EQ(m.bits, (std::vector<uint8_t>{1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1}));
  EXPECT_EQ(MessageToBytes(m), (std::vector<uint8_t>{0xA5, 0x30}));
  EXPECT_THROW(MessageFromBytes(bytes, 17), Error);
}

}  // namespace
}  // namespace bpsc
