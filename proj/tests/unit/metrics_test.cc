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

#include "bpsc/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bpsc/serial.h"
#include "bpsc/status.h"
#include "synth.h"

namespace bpsc {
namespace {

using testing::Rng;

TEST(Psnr, UnitErrorIs48Decibels) {
  const Image a = Image::Filled(10, 10, 100);
  const Image b = Image::Filled(10, 10, 101);
  EXPECT_NEAR(Psnr(a, b), 48.1308, 1e-4);
  EXPECT_EQ(Psnr(a, a), kInfinitePsnr);
}

TEST(Psnr, SparseUnitChanges) {
  // 292 of 82928 pixels off by one.
  EXPECT_NEAR(PsnrFromSquaredError(292, 82928), 72.66, 0.005);
  EXPECT_NEAR(PsnrFromSquaredError(292, 82928),
              10 * std::log10(255.0 * 255.0 * 82928 / 292), 1e-12);
}

TEST(Psnr, ChangeLedgerAgreesWithMse) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Image a = testing::NoiseImage(30, 20, rng);
    Image b = a;
    for (int k = 0; k < 50; ++k) b.samples[rng() % b.size()] = static_cast<uint8_t>(rng());
    const auto changes = ChangeLedger(a, b);
    for (const auto& c : changes) {
      EXPECT_EQ(c.delta, b.samples[c.index] - a.samples[c.index]);
    }
    EXPECT_DOUBLE_EQ(PsnrFromChanges(changes, a.size()), Psnr(a, b));
    EXPECT_EQ(SquaredError(a, b), serial::SquaredError(a, b));
  }
}

TEST(Psnr, DimensionMismatch) {
  EXPECT_THROW(Psnr(Image::Filled(2, 2, 0), Image::Filled(2, 3, 0)), Error);
}

TEST(Ssim, IdentityAndSymmetry) {
  Rng rng(2);
  const Image a = testing::SmoothImage(40, 33, 100, 50, 5, rng);
  const Image b = testing::SmoothImage(40, 33, 110, 40, 9, rng);
  EXPECT_DOUBLE_EQ(Ssim(a, a), 1.0);
  EXPECT_EQ(Ssim(a, b), Ssim(b, a));
  EXPECT_LT(Ssim(a, b), 1.0);
  EXPECT_NEAR(Ssim(a, b), serial::Ssim(a, b), 1e-9);
}

TEST(Ssim, SmallImagesAreRejected) {
  EXPECT_THROW(Ssim(Image::Filled(10, 20, 0), Image::Filled(10, 20, 0)),
               Error);
  const QualityReport r =
      Evaluate(Image::Filled(10, 20, 0), Image::Filled(10, 20, 0), 25);
  EXPECT_TRUE(std::isnan(r.ssim));
  EXPECT_DOUBLE_EQ(r.bpp, 1.0);
}

TEST(Ssim, KernelIsNormalized) {
  const auto k = SsimKernel();
  ASSERT_EQ(k.size(), 11u);
  EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(k[0], k[10]);
}

TEST(ChangeRatio, OneInTenThousand) {
  const Image a = Image::Filled(100, 100, 5);
  Image b = a;
  b.samples[4321] = 6;
  const ChangeCount c = ChangeRatio(a, b);
  EXPECT_EQ(c.changed_pixels, 1u);
  EXPECT_DOUBLE_EQ(c.ratio, 1e-4);
}

TEST(Bpp, Examples) {
  EXPECT_DOUBLE_EQ(Bpp(10, 10, 10), 0.8);
  EXPECT_DOUBLE_EQ(Bpp(0, 5, 5), 0.0);
  EXPECT_THROW(Bpp(1, 0, 5), Error);
}

TEST(SerialParity, KernelsAgreeOnLargeImages) {
  Rng rng(3);
  const Image a = testing::NoiseImage(257, 131, rng);
  const Image b = testing::SmoothImage(257, 131, 128, 100, 20, rng);
  EXPECT_EQ(SquaredError(a, b), serial::SquaredError(a, b));
  EXPECT_NEAR(Ssim(a, b), serial::Ssim(a, b), 1e-9);
  EXPECT_EQ(Ssim(a, b), Ssim(a, b));
}

}  // namespace
}  // namespace bpsc
