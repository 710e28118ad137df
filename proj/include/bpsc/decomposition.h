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

// Empirical information measures and the adaptive split of the plane stack
// into a local modality (planes 1..s) and a global modality (planes s+1..8).

#ifndef BPSC_DECOMPOSITION_H_
#define BPSC_DECOMPOSITION_H_

#include <array>
#include <cstdint>

#include "bpsc/bitplane.h"

namespace bpsc {

inline constexpr double kDefaultBeta = 0.8;

using Histogram256 = std::array<uint64_t, 256>;

Histogram256 PixelHistogram(const Image& image);

// Shannon entropy in bits of an empirical distribution given by counts.
double EntropyFromCounts(const uint64_t* counts, int num_bins);

// Entropy of the 256-bin pixel histogram, bits/pixel. Equals I(x;x).
double PixelEntropy(const Image& image);

// Binary entropy of the plane's empirical 0/1 frequencies.
double PlaneEntropy(const BitPlane& plane);

// Mutual information between the plane bit and the pixel value, computed
// from their joint empirical histogram (2 x 256 bins). Throws
// kDimensionMismatch if the plane and image disagree on size.
double PlaneMutualInformation(const BitPlane& plane, const Image& image);

struct SplitDecision {
  int slicing_index = 1;  // s in [1, 8]
  double beta = kDefaultBeta;
  std::array<double, kNumPlanes> per_plane_info{};  // I(x^i; x), i = 1..8
  double total_entropy = 0.0;                       // H(x)
};

// Smallest s such that the information of planes 1..s reaches
// beta * H(x). Throws kInvalidArgument unless 0 <= beta <= 1.
SplitDecision SelectSlicingIndex(const Image& image, double beta);

struct Decomposition {
  SymbolGrid local;   // planes 1..s
  SymbolGrid global;  // planes s+1..8, empty when s == 8
  SplitDecision decision;
};

Decomposition Decompose(const Image& image, double beta);

// pixel = global << local.bits_per_symbol | local. The two grids must share
// dimensions and their widths must add up to 8 bits.
Image Recombine(const SymbolGrid& local, const SymbolGrid& global);

}  // namespace bpsc

#endif  // BPSC_DECOMPOSITION_H_
