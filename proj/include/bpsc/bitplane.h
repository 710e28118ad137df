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

// Bit-plane decomposition of 8-bit grayscale images.
//
// Plane indices run from 1 (least significant) to 8 (most significant), so
// plane l of pixel x is floor(x / 2^(l-1)) mod 2 and the pixel is recovered
// as sum over l of 2^(l-1) * plane_l.

#ifndef BPSC_BITPLANE_H_
#define BPSC_BITPLANE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bpsc {

inline constexpr int kNumPlanes = 8;

struct Image {
  uint32_t width = 0;
  uint32_t height = 0;
  std::vector<uint8_t> samples;  // row-major

  // Throws kInvalidArgument unless width, height >= 1 and the sample count
  // matches.
  static Image Create(uint32_t width, uint32_t height,
                      std::vector<uint8_t> samples);
  static Image Filled(uint32_t width, uint32_t height, uint8_t value);

  size_t size() const { return samples.size(); }
  uint8_t at(uint32_t x, uint32_t y) const {
    return samples[static_cast<size_t>(y) * width + x];
  }

  bool operator==(const Image&) const = default;
};

struct BitPlane {
  uint32_t width = 0;
  uint32_t height = 0;
  int index = 0;               // 1 = LSB ... 8 = MSB
  std::vector<uint8_t> bits;   // one 0/1 value per pixel, row-major

  size_t size() const { return bits.size(); }
  bool operator==(const BitPlane&) const = default;
};

struct PlaneStack {
  std::array<BitPlane, kNumPlanes> planes;  // planes[l - 1] has index l

  const BitPlane& plane(int index) const { return planes[index - 1]; }
  BitPlane& plane(int index) { return planes[index - 1]; }
  uint32_t width() const { return planes[0].width; }
  uint32_t height() const { return planes[0].height; }
};

// Planes lo..hi packed into one integer symbol per pixel. bits_per_symbol is
// 0 for the empty range (lo == hi + 1), in which case every symbol is 0.
struct SymbolGrid {
  uint32_t width = 0;
  uint32_t height = 0;
  int bits_per_symbol = 0;
  std::vector<uint8_t> symbols;

  size_t size() const { return symbols.size(); }
  uint32_t alphabet_size() const { return 1u << bits_per_symbol; }
  bool empty_modality() const { return bits_per_symbol == 0; }
  bool operator==(const SymbolGrid&) const = default;
};

PlaneStack SlicePlanes(const Image& image);

// Throws kDimensionMismatch if the planes disagree on dimensions or carry
// the wrong index.
Image Recompose(const PlaneStack& stack);

// Requires 1 <= lo, hi <= 8, lo <= hi + 1.
SymbolGrid PackRange(const PlaneStack& stack, int lo, int hi);

// Inverse of PackRange: returns planes lo..hi in ascending index order.
// Throws kInvalidArgument if the grid width does not equal hi - lo + 1.
std::vector<BitPlane> UnpackRange(const SymbolGrid& grid, int lo, int hi);

// Packs consecutive planes (ascending index, equal dimensions) into a grid;
// planes[0] becomes the least significant symbol bit.
SymbolGrid PackPlanes(std::span<const BitPlane> planes);

// Same as PackRange(SlicePlanes(image), lo, hi) without materializing the
// stack.
SymbolGrid PackImageRange(const Image& image, int lo, int hi);

}  // namespace bpsc

#endif  // BPSC_BITPLANE_H_
