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

// Single-threaded reference versions of the data-parallel kernels. They
// favour the most direct formulation and serve as test oracles and as the
// baseline in the kernel benchmark.

#ifndef BPSC_SERIAL_H_
#define BPSC_SERIAL_H_

#include <cstdint>

#include "bpsc/bitplane.h"
#include "bpsc/decomposition.h"

namespace bpsc::serial {

PlaneStack SlicePlanes(const Image& image);
Image Recompose(const PlaneStack& stack);
SymbolGrid PackImageRange(const Image& image, int lo, int hi);
Histogram256 PixelHistogram(const Image& image);
uint64_t SquaredError(const Image& a, const Image& b);

// Direct two-dimensional windowed sums, no separable filtering.
double Ssim(const Image& a, const Image& b);

}  // namespace bpsc::serial

#endif  // BPSC_SERIAL_H_
