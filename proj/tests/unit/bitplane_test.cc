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

#include "bpsc/bitplane.h"

#include <gtest/gtest.h>

#include "bpsc/serial.h"
#include "bpsc/status.h"
#include "synth.h"

namespace bpsc {
namespace {

using testing::Rng;

std::vector<int> PlaneBitsOfPixel(uint8_t v) {
  const PlaneStack s = SlicePlanes(Image::Filled(1, 1, v));
  std::vector<int> bits;
  for (int l = 1; l <= kNumPlanes; ++l) bits.push_back(s.plane(l).bits[0]);
  return bits;
}

TEST(SlicePlanes, ConstantWhiteGivesAllOnes) {
  const PlaneStack s = SlicePlanes(Image::Filled(5, 3, 255));
  for (int l = 1; l <= kNumPlanes; ++l) {
    EXPECT_EQ(s.plane(l).index, l);
    for (uint8_t b : s.plane(l).bits) EXPECT_EQ(b, 1);
  }
}

TEST(SlicePlanes, ConstantBlackGivesAllZeros) {
  const PlaneStack s = SlicePlanes(Image::Filled(4, 4, 0));
  for (const BitPlane& p : s.planes) {
    for (uint8_t b : p.bits) EXPECT_EQ(b, 0);
  }
}

TEST(SlicePlanes, LeastSignificantPlaneFirst) {
  EXPECT_EQ(PlaneBitsOfPixel(150), (std::vector<int>{0, 1, 1, 0, 1, 0, 0, 1}));
}

TEST(Recompose, InvertsSlicingForEveryPixelValue) {
  std::vector<uint8_t> all(256);
  for (int v = 0; v < 256; ++v) all[v] = static_cast<uint8_t>(v);
  const Image img = Image::Create(16, 16, all);
  EXPECT_EQ(Recompose(SlicePlanes(img)), img);
}

TEST(Recompose, PlanesOf150GiveConstant150) {
  PlaneStack s = SlicePlanes(Image::Filled(3, 2, 0));
  const int bits[] = {0, 1, 1, 0, 1, 0, 0, 1};
  for (int l = 1; l <= kNumPlanes; ++l) {
    std::fill(s.plane(l).bits.begin(), s.plane(l).bits.end(), bits[l - 1]);
  }
  EXPECT_EQ(Recompose(s), Image::Filled(3, 2, 150));
}

TEST(Recompose, RejectsMismatchedPlanes) {
  PlaneStack s = SlicePlanes(Image::Filled(4, 4, 7));
  s.plane(3).bits.pop_back();
  try {
    Recompose(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  PlaneStack t = SlicePlanes(Image::Filled(4, 4, 7));
  t.plane(2).index = 5;
  EXPECT_THROW(Recompose(t), Error);
}

TEST(Recompose, RandomImagesRoundTrip) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Image img = testing::RandomImage(rng, 90);
    EXPECT_EQ(Recompose(SlicePlanes(img)), img);
    EXPECT_EQ(serial::Recompose(SlicePlanes(img)), img);
  }
}

TEST(Image, CreateValidatesShape) {
  EXPECT_THROW(Image::Create(0, 3, {}), Error);
  EXPECT_THROW(Image::Create(2, 2, {1, 2, 3}), Error);
  EXPECT_NO_THROW(Image::Create(1, 1, {9}));
}

TEST(PackRange, ExamplesOnPixel150) {
  const PlaneStack s = SlicePlanes(Image::Filled(2, 2, 150));
  EXPECT_EQ(PackRange(s, 1, 3).symbols[0], 6);
  EXPECT_EQ(PackRange(s, 4, 8).symbols[0], 150 / 8);
  const SymbolGrid empty = PackRange(s, 9, 8);
  EXPECT_EQ(empty.bits_per_symbol, 0);
  EXPECT_TRUE(empty.empty_modality());
  for (uint8_t v : empty.symbols) EXPECT_EQ(v, 0);
}

TEST(PackRange, RejectsBadRanges) {
  const PlaneStack s = SlicePlanes(Image::Filled(2, 2, 1));
  EXPECT_THROW(PackRange(s, 0, 3), Error);
  EXPECT_THROW(PackRange(s, 2, 9), Error);
  EXPECT_THROW(PackRange(s, 5, 3), Error);
}

TEST(UnpackRange, Symbol6GivesBits011) {
  SymbolGrid g;
  g.width = 1;
  g.height = 1;
  g.bits_per_symbol = 3;
  g.symbols = {6};
  const auto planes = UnpackRange(g, 1, 3);
  ASSERT_EQ(planes.size(), 3u);
  EXPECT_EQ(planes[0].bits[0], 0);
  EXPECT_EQ(planes[1].bits[0], 1);
  EXPECT_EQ(planes[2].bits[0], 1);
}

TEST(UnpackRange, EmptyGridGivesNoPlanes) {
  const PlaneStack s = SlicePlanes(Image::Filled(3, 3, 200));
  EXPECT_TRUE(UnpackRange(PackRange(s, 9, 8), 9, 8).empty());
}

TEST(UnpackRange, RejectsWidthMismatch) {
  const PlaneStack s = SlicePlanes(Image::Filled(3, 3, 200));
  try {
    UnpackRange(PackRange(s, 1, 4), 1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(PackRange, RandomStacksRoundTripEveryRange) {
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const Image img = testing::NoiseImage(1 + rng() % 40, 1 + rng() % 40, rng);
    const PlaneStack s = SlicePlanes(img);
    for (int lo = 1; lo <= 9; ++lo) {
      for (int hi = lo - 1; hi <= 8; ++hi) {
        const SymbolGrid g = PackRange(s, lo, hi);
        EXPECT_EQ(g, PackImageRange(img, lo, hi));
        EXPECT_EQ(g, serial::PackImageRange(img, lo, hi));
        const auto planes = UnpackRange(g, lo, hi);
        for (int l = lo; l <= hi; ++l) EXPECT_EQ(planes[l - lo], s.plane(l));
        if (hi >= lo) EXPECT_EQ(PackPlanes(planes), g);
      }
    }
  }
}

TEST(PackRange, PartitionReassemblesPixels) {
  Rng rng(3);
  const Image img = testing::NoiseImage(33, 17, rng);
  for (int s = 0; s <= 8; ++s) {
    const SymbolGrid local = PackImageRange(img, 1, s);
    const SymbolGrid global = PackImageRange(img, s + 1, 8);
    for (size_t i = 0; i < img.size(); ++i) {
      EXPECT_EQ((global.symbols[i] << s) + local.symbols[i], img.samples[i]);
    }
  }
}

TEST(PackPlanes, RequiresConsecutivePlanes) {
  const PlaneStack s = SlicePlanes(Image::Filled(2, 2, 3));
  const std::vector<BitPlane> gap = {s.plane(1), s.plane(3)};
  EXPECT_THROW(PackPlanes(gap), Error);
  EXPECT_THROW(PackPlanes(std::vector<BitPlane>{}), Error);
}

TEST(SlicePlanes, MatchesSerialReferenceAboveParallelThreshold) {
  Rng rng(4);
  const Image img = testing::NoiseImage(300, 300, rng);
  const PlaneStack a = SlicePlanes(img);
  const PlaneStack b = serial::SlicePlanes(img);
  for (int l = 1; l <= kNumPlanes; ++l) EXPECT_EQ(a.plane(l), b.plane(l));
}

}  // namespace
}  // namespace bpsc
