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

#include "bpsc/serial.h"

#include <vector>

#include "bpsc/metrics.h"
#include "bpsc/status.h"

namespace bpsc::serial {

PlaneStack SlicePlanes(const Image& image) {
  PlaneStack stack;
  for (int l = 1; l <= kNumPlanes; ++l) {
    BitPlane& p = stack.plane(l);
    p.width = image.width;
    p.height = image.height;
    p.index = l;
    p.bits.reserve(image.size());
    for (uint8_t v : image.samples) p.bits.push_back((v >> (l - 1)) & 1);
  }
  return stack;
}

Image Recompose(const PlaneStack& stack) {
  std::vector<uint8_t> samples(stack.plane(1).bits.size(), 0);
  for (int l = 1; l <= kNumPlanes; ++l) {
    const BitPlane& p = stack.plane(l);
    if (p.bits.size() != samples.size() || p.index != l) {
      throw Error(ErrorCode::kDimensionMismatch, "inconsistent plane stack");
    }
    for (size_t i = 0; i < samples.size(); ++i) {
      samples[i] = static_cast<uint8_t>(samples[i] + (p.bits[i] << (l - 1)));
    }
  }
  return Image::Create(stack.width(), stack.height(), std::move(samples));
}

SymbolGrid PackImageRange(const Image& image, int lo, int hi) {
  if (lo < 1 || hi > kNumPlanes || lo > hi + 1) {
    throw Error(ErrorCode::kInvalidArgument, "plane range out of bounds");
  }
  SymbolGrid grid;
  grid.width = image.width;
  grid.height = image.height;
  grid.bits_per_symbol = hi - lo + 1;
  grid.symbols.reserve(image.size());
  for (uint8_t v : image.samples) {
    unsigned s = 0;
    for (int l = hi; l >= lo; --l) s = 2 * s + ((v >> (l - 1)) & 1);
    grid.symbols.push_back(static_cast<uint8_t>(s));
  }
  return grid;
}

Histogram256 PixelHistogram(const Image& image) {
  Histogram256 hist{};
  for (uint8_t v : image.samples) ++hist[v];
  return hist;
}

uint64_t SquaredError(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kDimensionMismatch, "images differ in size");
  }
  uint64_t sse = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const int d = int{a.samples[i]} - int{b.samples[i]};
    sse += static_cast<uint64_t>(d * d);
  }
  return sse;
}

double Ssim(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kDimensionMismatch, "images differ in size");
  }
  if (a.width < kSsimWindow || a.height < kSsimWindow) {
    throw Error(ErrorCode::kInvalidArgument, "image smaller than window");
  }
  const std::vector<double> k = SsimKernel();
  const double c1 = (kSsimK1 * 255) * (kSsimK1 * 255);
  const double c2 = (kSsimK2 * 255) * (kSsimK2 * 255);
  double total = 0.0;
  uint64_t windows = 0;
  for (uint32_t y = 0; y + kSsimWindow <= a.height; ++y) {
    for (uint32_t x = 0; x + kSsimWindow <= a.width; ++x) {
      double ma = 0, mb = 0;
      for (int j = 0; j < kSsimWindow; ++j) {
        for (int i = 0; i < kSsimWindow; ++i) {
          const double wt = k[i] * k[j];
          ma += wt * a.at(x + i, y + j);
          mb += wt * b.at(x + i, y + j);
        }
      }
      double va = 0, vb = 0, cov = 0;
      for (int j = 0; j < kSsimWindow; ++j) {
        for (int i = 0; i < kSsimWindow; ++i) {
          const double wt = k[i] * k[j];
          const double da = a.at(x + i, y + j) - ma;
          const double db = b.at(x + i, y + j) - mb;
          va += wt * da * da;
          vb += wt * db * db;
          cov += wt * da * db;
        }
      }
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

}  // namespace bpsc::serial
