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

#include <cmath>
#include <string>

#include "bpsc/parallel.h"
#include "bpsc/status.h"

namespace bpsc {
namespace {

void CheckSameSize(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height ||
      a.samples.size() != b.samples.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "images differ in size: " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

constexpr double kPeak = 255.0;

}  // namespace

double Bpp(uint64_t byte_count, uint32_t width, uint32_t height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  return 8.0 * static_cast<double>(byte_count) /
         (static_cast<double>(width) * height);
}

uint64_t SquaredError(const Image& a, const Image& b) {
  CheckSameSize(a, b);
  const int64_t n = static_cast<int64_t>(a.size());
  uint64_t sse = 0;
#pragma omp parallel for reduction(+ : sse) if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    const int64_t d = int64_t{a.samples[i]} - b.samples[i];
    sse += static_cast<uint64_t>(d * d);
  }
  return sse;
}

double PsnrFromSquaredError(uint64_t sse, uint64_t pixels) {
  if (sse == 0) return kInfinitePsnr;
  const double mse = static_cast<double>(sse) / static_cast<double>(pixels);
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

double Psnr(const Image& a, const Image& b) {
  return PsnrFromSquaredError(SquaredError(a, b), a.size());
}

std::vector<PixelChange> ChangeLedger(const Image& a, const Image& b) {
  CheckSameSize(a, b);
  std::vector<PixelChange> changes;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.samples[i] != b.samples[i]) {
      changes.push_back({i, int{b.samples[i]} - int{a.samples[i]}});
    }
  }
  return changes;
}

double PsnrFromChanges(std::span<const PixelChange> changes, uint64_t pixels) {
  uint64_t sse = 0;
  for (const PixelChange& c : changes) {
    sse += static_cast<uint64_t>(c.delta * c.delta);
  }
  return PsnrFromSquaredError(sse, pixels);
}

std::vector<double> SsimKernel() {
  std::vector<double> k(kSsimWindow);
  const int r = kSsimWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - r;
    k[i] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

double Ssim(const Image& a, const Image& b) {
  CheckSameSize(a, b);
  if (a.width < kSsimWindow || a.height < kSsimWindow) {
    throw Error(ErrorCode::kInvalidArgument,
                "SSIM needs images of at least 11x11");
  }
  const std::vector<double> k = SsimKernel();
  const int64_t w = a.width, h = a.height;
  const int64_t ow = w - kSsimWindow + 1, oh = h - kSsimWindow + 1;

  // Horizontal pass: five filtered moments per row, valid columns only.
  std::vector<double> ha(h * ow), hb(h * ow), haa(h * ow), hbb(h * ow),
      hab(h * ow);
#pragma omp parallel for if (w * h >= kParallelThreshold)
  for (int64_t y = 0; y < h; ++y) {
    const uint8_t* ra = a.samples.data() + y * w;
    const uint8_t* rb = b.samples.data() + y * w;
    for (int64_t x = 0; x < ow; ++x) {
      double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
      for (int t = 0; t < kSsimWindow; ++t) {
        const double va = ra[x + t], vb = rb[x + t];
        sa += k[t] * va;
        sb += k[t] * vb;
        saa += k[t] * (va * va);
        sbb += k[t] * (vb * vb);
        sab += k[t] * (va * vb);
      }
      const int64_t o = y * ow + x;
      ha[o] = sa;
      hb[o] = sb;
      haa[o] = saa;
      hbb[o] = sbb;
      hab[o] = sab;
    }
  }

  const double c1 = (kSsimK1 * kPeak) * (kSsimK1 * kPeak);
  const double c2 = (kSsimK2 * kPeak) * (kSsimK2 * kPeak);
  // Row sums are reduced in a fixed order so the result does not depend on
  // the thread count.
  std::vector<double> row_sum(oh, 0.0);
#pragma omp parallel for if (w * h >= kParallelThreshold)
  for (int64_t y = 0; y < oh; ++y) {
    double acc = 0.0;
    for (int64_t x = 0; x < ow; ++x) {
      double ma = 0, mb = 0, maa = 0, mbb = 0, mab = 0;
      for (int t = 0; t < kSsimWindow; ++t) {
        const int64_t o = (y + t) * ow + x;
        ma += k[t] * ha[o];
        mb += k[t] * hb[o];
        maa += k[t] * haa[o];
        mbb += k[t] * hbb[o];
        mab += k[t] * hab[o];
      }
      const double va = maa - ma * ma;
      const double vb = mbb - mb * mb;
      const double cov = mab - ma * mb;
      acc += ((2 * ma * mb + c1) * (2 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    row_sum[y] = acc;
  }
  double total = 0.0;
  for (double s : row_sum) total += s;
  return total / static_cast<double>(ow * oh);
}

ChangeCount ChangeRatio(const Image& a, const Image& b) {
  CheckSameSize(a, b);
  const int64_t n = static_cast<int64_t>(a.size());
  uint64_t changed = 0;
#pragma omp parallel for reduction(+ : changed) if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    changed += a.samples[i] != b.samples[i];
  }
  return {changed, static_cast<double>(changed) / static_cast<double>(n)};
}

QualityReport Evaluate(const Image& original, const Image& stego,
                       uint64_t container_bytes) {
  QualityReport r;
  r.bpp = Bpp(container_bytes, original.width, original.height);
  r.psnr = Psnr(original, stego);
  r.ssim = original.width >= kSsimWindow && original.height >= kSsimWindow
               ? Ssim(original, stego)
               : std::nan("");
  const ChangeCount c = ChangeRatio(original, stego);
  r.changed_pixels = c.changed_pixels;
  r.change_ratio = c.ratio;
  return r;
}

}  // namespace bpsc
