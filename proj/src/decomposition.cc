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

#include "bpsc/decomposition.h"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bpsc/parallel.h"
#include "bpsc/status.h"

namespace bpsc {

namespace {

// I(B;X) = sum p(b,v) log2(p(b,v) / (p(b) p(v))) over a 2 x 256 table.
double MutualInformationFromJoint(const uint64_t (&joint)[2][256]) {
  uint64_t n = 0;
  uint64_t row[2] = {0, 0};
  uint64_t col[256] = {};
  for (int b = 0; b < 2; ++b) {
    for (int v = 0; v < 256; ++v) {
      row[b] += joint[b][v];
      col[v] += joint[b][v];
    }
    n += row[b];
  }
  if (n == 0) return 0.0;
  const double dn = static_cast<double>(n);
  double mi = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (int v = 0; v < 256; ++v) {
      const uint64_t c = joint[b][v];
      if (c == 0) continue;
      // p(b,v) / (p(b) p(v)) = c n / (row col)
      const double ratio = (static_cast<double>(c) * dn) /
                           (static_cast<double>(row[b]) *
                            static_cast<double>(col[v]));
      mi += (static_cast<double>(c) / dn) * std::log2(ratio);
    }
  }
  return mi;
}

}  // namespace

Histogram256 PixelHistogram(const Image& image) {
  uint64_t hist[256] = {};
  const int64_t n = static_cast<int64_t>(image.size());
  const uint8_t* src = image.samples.data();
#pragma omp parallel for reduction(+ : hist[:256]) if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    ++hist[src[i]];
  }
  Histogram256 out;
  for (int v = 0; v < 256; ++v) out[v] = hist[v];
  return out;
}

double EntropyFromCounts(const uint64_t* counts, int num_bins) {
  uint64_t n = 0;
  for (int i = 0; i < num_bins; ++i) n += counts[i];
  if (n == 0) return 0.0;
  const double dn = static_cast<double>(n);
  double h = 0.0;
  for (int i = 0; i < num_bins; ++i) {
    if (counts[i] == 0) continue;
    const double p = static_cast<double>(counts[i]) / dn;
    h -= p * std::log2(p);
  }
  return h;
}

double PixelEntropy(const Image& image) {
  const Histogram256 hist = PixelHistogram(image);
  return EntropyFromCounts(hist.data(), 256);
}

double PlaneEntropy(const BitPlane& plane) {
  uint64_t counts[2] = {0, 0};
  for (uint8_t b : plane.bits) ++counts[b & 1];
  return EntropyFromCounts(counts, 2);
}

double PlaneMutualInformation(const BitPlane& plane, const Image& image) {
  if (plane.width != image.width || plane.height != image.height ||
      plane.bits.size() != image.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "plane and image dimensions differ");
  }
  uint64_t joint[2][256] = {};
  for (size_t i = 0; i < image.size(); ++i) {
    ++joint[plane.bits[i] & 1][image.samples[i]];
  }
  return MutualInformationFromJoint(joint);
}

SplitDecision SelectSlicingIndex(const Image& image, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta must lie in [0, 1], got " + std::to_string(beta));
  }
  const Histogram256 hist = PixelHistogram(image);
  SplitDecision decision;
  decision.beta = beta;
  decision.total_entropy = EntropyFromCounts(hist.data(), 256);

  // Plane bits are a function of the pixel value, so the joint histogram of
  // (plane bit, pixel) is the pixel histogram split by that bit.
  for (int l = 1; l <= kNumPlanes; ++l) {
    uint64_t joint[2][256] = {};
    for (int v = 0; v < 256; ++v) joint[(v >> (l - 1)) & 1][v] = hist[v];
    decision.per_plane_info[l - 1] = MutualInformationFromJoint(joint);
  }

  // Independent planes make the full sum equal H(x) exactly, which the
  // rounded partial sums may miss by a few ulps.
  constexpr double kSlack = 1e-12;
  const double target = beta * decision.total_entropy - kSlack;
  double cumulative = 0.0;
  decision.slicing_index = kNumPlanes;
  for (int s = 1; s <= kNumPlanes; ++s) {
    cumulative += decision.per_plane_info[s - 1];
    if (cumulative >= target) {
      decision.slicing_index = s;
      break;
    }
  }
  return decision;
}

Decomposition Decompose(const Image& image, double beta) {
  Decomposition out;
  out.decision = SelectSlicingIndex(image, beta);
  const int s = out.decision.slicing_index;
  out.local = PackImageRange(image, 1, s);
  out.global = PackImageRange(image, s + 1, kNumPlanes);
  return out;
}

Image Recombine(const SymbolGrid& local, const SymbolGrid& global) {
  if (local.width != global.width || local.height != global.height ||
      local.symbols.size() != global.symbols.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "local and global grids differ in size");
  }
  if (local.bits_per_symbol + global.bits_per_symbol != kNumPlanes) {
    throw Error(ErrorCode::kInvalidArgument,
                "modalities must cover exactly 8 planes");
  }
  const int shift = local.bits_per_symbol;
  std::vector<uint8_t> samples(local.symbols.size());
  const int64_t n = static_cast<int64_t>(samples.size());
#pragma omp parallel for if (n >= kParallelThreshold)
  for (int64_t i = 0; i < n; ++i) {
    samples[i] = static_cast<uint8_t>(
        (static_cast<unsigned>(global.symbols[i]) << shift) |
        local.symbols[i]);
  }
  return Image::Create(local.width, local.height, std::move(samples));
}

}  // namespace bpsc
