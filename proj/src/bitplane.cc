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

#include <string>
#include <utility>

#include "bpsc/parallel.h"
#include "bpsc/status.h"

namespace bpsc {

namespace {

void CheckRange(int lo, int hi) {
  if (lo < 1 || hi > kNumPlanes || lo > hi + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "plane range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] out of bounds");
  }
}

}  // namespace

Image Image::Create(uint32_t width, uint32_t height,
                    std::vector<uint8_t> samples) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  if (samples.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample count does not match width x height");
  }
  Image image;
  image.width = width;
  image.height = height;
  image.samples = std::move(samples);
  return image;
}

Image Image::Filled(uint32_t width, uint32_t height, uint8_t value) {
  return Create(width, height,
                std::vector<uint8_t>(static_cast<size_t>(width) * height,
                                     value));
}

PlaneStack SlicePlanes(const Image& image) {
  PlaneStack stack;
  const int64_t n = static_cast<int64_t>(image.size());
  for (int l = 1; l <= kNumPlanes; ++l) {
    BitPlane& plane = stack.plane(l);
    plane.width = image.width;
    plane.height = image.height;
    plane.index = l;
    plane.bits.resize(n);
  }
  const uint8_t* src = image.samples.data();
#pragma omp parallel for if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    const uint8_t v = src[i];
    for (int l = 0; l < kNumPlanes; ++l) {
      stack.planes[l].bits[i] = (v >> l) & 1;
    }
  }
  return stack;
}

Image Recompose(const PlaneStack& stack) {
  const uint32_t w = stack.width();
  const uint32_t h = stack.height();
  const size_t n = static_cast<size_t>(w) * h;
  for (int l = 1; l <= kNumPlanes; ++l) {
    const BitPlane& p = stack.plane(l);
    if (p.width != w || p.height != h || p.bits.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "plane " + std::to_string(l) + " dimensions differ");
    }
    if (p.index != l) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "plane at position " + std::to_string(l) + " has index " +
                      std::to_string(p.index));
    }
  }
  std::vector<uint8_t> samples(n);
  const int64_t count = static_cast<int64_t>(n);
#pragma omp parallel for if (count >= kParallelThreshold)
  for (int64_t i = 0; i < count; ++i) {
    unsigned v = 0;
    for (int l = 0; l < kNumPlanes; ++l) {
      v |= static_cast<unsigned>(stack.planes[l].bits[i] & 1) << l;
    }
    samples[i] = static_cast<uint8_t>(v);
  }
  return Image::Create(w, h, std::move(samples));
}

SymbolGrid PackRange(const PlaneStack& stack, int lo, int hi) {
  CheckRange(lo, hi);
  SymbolGrid grid;
  grid.width = stack.width();
  grid.height = stack.height();
  grid.bits_per_symbol = hi - lo + 1;
  const int64_t n = static_cast<int64_t>(grid.width) * grid.height;
  grid.symbols.assign(n, 0);
  if (grid.bits_per_symbol == 0) return grid;
#pragma omp parallel for if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    unsigned v = 0;
    for (int l = lo; l <= hi; ++l) {
      v |= static_cast<unsigned>(stack.plane(l).bits[i] & 1) << (l - lo);
    }
    grid.symbols[i] = static_cast<uint8_t>(v);
  }
  return grid;
}

std::vector<BitPlane> UnpackRange(const SymbolGrid& grid, int lo, int hi) {
  CheckRange(lo, hi);
  if (grid.bits_per_symbol != hi - lo + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid carries " + std::to_string(grid.bits_per_symbol) +
                    " bits per symbol, range needs " +
                    std::to_string(hi - lo + 1));
  }
  std::vector<BitPlane> planes(grid.bits_per_symbol);
  const int64_t n = static_cast<int64_t>(grid.symbols.size());
  for (int j = 0; j < grid.bits_per_symbol; ++j) {
    planes[j].width = grid.width;
    planes[j].height = grid.height;
    planes[j].index = lo + j;
    planes[j].bits.resize(n);
  }
#pragma omp parallel for if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    const unsigned v = grid.symbols[i];
    for (int j = 0; j < grid.bits_per_symbol; ++j) {
      planes[j].bits[i] = (v >> j) & 1;
    }
  }
  return planes;
}

SymbolGrid PackPlanes(std::span<const BitPlane> planes) {
  if (planes.empty() || planes.size() > kNumPlanes) {
    throw Error(ErrorCode::kInvalidArgument, "need 1..8 planes to pack");
  }
  SymbolGrid grid;
  grid.width = planes[0].width;
  grid.height = planes[0].height;
  grid.bits_per_symbol = static_cast<int>(planes.size());
  const size_t n = planes[0].bits.size();
  for (size_t j = 0; j < planes.size(); ++j) {
    if (planes[j].width != grid.width || planes[j].height != grid.height ||
        planes[j].bits.size() != n ||
        planes[j].index != planes[0].index + static_cast<int>(j)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "planes to pack are not consecutive and equally sized");
    }
  }
  grid.symbols.assign(n, 0);
  const int64_t count = static_cast<int64_t>(n);
#pragma omp parallel for if (count >= kParallelThreshold)
  for (int64_t i = 0; i < count; ++i) {
    unsigned v = 0;
    for (size_t j = 0; j < planes.size(); ++j) {
      v |= static_cast<unsigned>(planes[j].bits[i] & 1) << j;
    }
    grid.symbols[i] = static_cast<uint8_t>(v);
  }
  return grid;
}

SymbolGrid PackImageRange(const Image& image, int lo, int hi) {
  CheckRange(lo, hi);
  SymbolGrid grid;
  grid.width = image.width;
  grid.height = image.height;
  grid.bits_per_symbol = hi - lo + 1;
  const int64_t n = static_cast<int64_t>(image.size());
  grid.symbols.assign(n, 0);
  if (grid.bits_per_symbol == 0) return grid;
  const unsigned mask = (1u << grid.bits_per_symbol) - 1;
#pragma omp parallel for if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    grid.symbols[i] =
        static_cast<uint8_t>((image.samples[i] >> (lo - 1)) & mask);
  }
  return grid;
}

}  // namespace bpsc
