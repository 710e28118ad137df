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

// Rate and distortion measures for compressed and stego images.

#ifndef BPSC_METRICS_H_
#define BPSC_METRICS_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bpsc/bitplane.h"

namespace bpsc {

// PSNR of two identical images.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

// 8 * byte_count / (width * height). Throws kInvalidArgument on a zero
// dimension.
double Bpp(uint64_t byte_count, uint32_t width, uint32_t height);

// Sum of squared sample differences. Throws kDimensionMismatch.
uint64_t SquaredError(const Image& a, const Image& b);

// 10 log10(255^2 * pixels / sse), kInfinitePsnr when sse is 0.
double PsnrFromSquaredError(uint64_t sse, uint64_t pixels);

double Psnr(const Image& a, const Image& b);

struct PixelChange {
  uint64_t index = 0;
  int delta = 0;  // b - a
};

// Every pixel whose intensity differs, in raster order.
std::vector<PixelChange> ChangeLedger(const Image& a, const Image& b);

double PsnrFromChanges(std::span<const PixelChange> changes, uint64_t pixels);

// Mean SSIM over all valid 11x11 Gaussian windows (sigma 1.5, K1 0.01,
// K2 0.03, dynamic range 255). Throws kInvalidArgument if either side is
// below 11 and kDimensionMismatch if the images differ in size.
double Ssim(const Image& a, const Image& b);

struct ChangeCount {
  uint64_t changed_pixels = 0;
  double ratio = 0.0;
};

ChangeCount ChangeRatio(const Image& a, const Image& b);

struct QualityReport {
  double bpp = 0.0;
  double psnr = kInfinitePsnr;
  double ssim = 1.0;  // NaN when the image is smaller than the window
  uint64_t changed_pixels = 0;
  double change_ratio = 0.0;
};

QualityReport Evaluate(const Image& original, const Image& stego,
                       uint64_t container_bytes);

// Normalized 11-tap Gaussian used by Ssim.
std::vector<double> SsimKernel();

}  // namespace bpsc

#endif  // BPSC_METRICS_H_
