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

#include "bpsc/frequency_table.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bpsc/status.h"

namespace bpsc {

namespace {

void CheckPrecision(int precision_bits) {
  if (precision_bits < 1 || precision_bits > kMaxPrecision) {
    throw Error(ErrorCode::kInvalidArgument,
                "precision must be in [1, 16], got " +
                    std::to_string(precision_bits));
  }
}

void CheckAlphabet(size_t n, int precision_bits) {
  if (n == 0 || n > (size_t{1} << precision_bits)) {
    throw Error(ErrorCode::kInvalidArgument,
                "alphabet of " + std::to_string(n) +
                    " symbols does not fit precision " +
                    std::to_string(precision_bits));
  }
}

// Hands out `leftover` extra slots to the symbols with the largest
// remainders. Ties resolve to the lower symbol index.
template <typename Remainder>
void DistributeLeftover(std::vector<uint32_t>& freq,
                        const std::vector<Remainder>& remainder,
                        uint32_t leftover) {
  while (leftover >= freq.size()) {
    for (uint32_t& f : freq) ++f;
    leftover -= static_cast<uint32_t>(freq.size());
  }
  if (leftover == 0) return;
  std::vector<uint32_t> order(freq.size());
  std::iota(order.begin(), order.end(), 0u);
  std::partial_sort(order.begin(), order.begin() + leftover, order.end(),
                    [&](uint32_t a, uint32_t b) {
                      if (remainder[a] != remainder[b]) {
                        return remainder[a] > remainder[b];
                      }
                      return a < b;
                    });
  for (uint32_t i = 0; i < leftover; ++i) ++freq[order[i]];
}

}  // namespace

FrequencyTable FrequencyTable::FromFrequencies(std::span<const uint32_t> freqs,
                                               int precision_bits) {
  CheckPrecision(precision_bits);
  CheckAlphabet(freqs.size(), precision_bits);
  uint64_t sum = 0;
  for (uint32_t f : freqs) {
    if (f == 0) {
      throw Error(ErrorCode::kInvalidArgument, "zero symbol frequency");
    }
    sum += f;
  }
  if (sum != (uint64_t{1} << precision_bits)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frequencies sum to " + std::to_string(sum) +
                    ", not 2^" + std::to_string(precision_bits));
  }
  FrequencyTable t;
  t.precision_bits_ = precision_bits;
  t.freq_.assign(freqs.begin(), freqs.end());
  t.BuildCumulative();
  return t;
}

FrequencyTable FrequencyTable::FromCounts(std::span<const uint32_t> counts,
                                          int precision_bits) {
  CheckPrecision(precision_bits);
  CheckAlphabet(counts.size(), precision_bits);
  const uint64_t n = counts.size();
  const uint64_t sum =
      std::accumulate(counts.begin(), counts.end(), uint64_t{0});
  if (sum == 0) {
    throw Error(ErrorCode::kInvalidArgument, "all counts are zero");
  }
  const uint64_t spare = (uint64_t{1} << precision_bits) - n;
  std::vector<uint32_t> freq(n);
  std::vector<uint64_t> remainder(n);
  uint64_t assigned = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t scaled = static_cast<uint64_t>(counts[i]) * spare;
    freq[i] = static_cast<uint32_t>(1 + scaled / sum);
    remainder[i] = scaled % sum;
    assigned += freq[i];
  }
  DistributeLeftover(freq, remainder,
                     static_cast<uint32_t>((uint64_t{1} << precision_bits) -
                                           assigned));
  FrequencyTable t;
  t.precision_bits_ = precision_bits;
  t.freq_ = std::move(freq);
  t.BuildCumulative();
  return t;
}

FrequencyTable FrequencyTable::FromWeights(std::span<const double> weights,
                                           int precision_bits) {
  CheckPrecision(precision_bits);
  CheckAlphabet(weights.size(), precision_bits);
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid weight");
    }
    sum += w;
  }
  const size_t n = weights.size();
  if (!(sum > 0.0)) return Uniform(static_cast<uint32_t>(n), precision_bits);
  const uint32_t spare = (1u << precision_bits) - static_cast<uint32_t>(n);
  std::vector<uint32_t> freq(n);
  std::vector<double> remainder(n);
  uint64_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    const double share = weights[i] / sum * spare;
    const double whole = std::floor(share);
    freq[i] = 1 + static_cast<uint32_t>(whole);
    remainder[i] = share - whole;
    assigned += freq[i];
  }
  // Rounding in the shares can overshoot by a slot or two; take them back
  // from the symbols with the smallest remainder that can spare one.
  const uint64_t total = uint64_t{1} << precision_bits;
  while (assigned > total) {
    size_t victim = n;
    for (size_t i = 0; i < n; ++i) {
      if (freq[i] > 1 && (victim == n || remainder[i] < remainder[victim])) {
        victim = i;
      }
    }
    --freq[victim];
    remainder[victim] = 1.0;
    --assigned;
  }
  DistributeLeftover(freq, remainder,
                     static_cast<uint32_t>(total - assigned));
  FrequencyTable t;
  t.precision_bits_ = precision_bits;
  t.freq_ = std::move(freq);
  t.BuildCumulative();
  return t;
}

FrequencyTable FrequencyTable::Uniform(uint32_t alphabet_size,
                                       int precision_bits) {
  std::vector<uint32_t> ones(alphabet_size, 1);
  return FromCounts(ones, precision_bits);
}

void FrequencyTable::BuildCumulative() {
  cum_.resize(freq_.size() + 1);
  cum_[0] = 0;
  for (size_t i = 0; i < freq_.size(); ++i) cum_[i + 1] = cum_[i] + freq_[i];
}

uint32_t FrequencyTable::SymbolForSlot(uint32_t slot) const {
  // First cumulative entry strictly greater than slot, minus one.
  const auto it = std::upper_bound(cum_.begin() + 1, cum_.end(), slot);
  return static_cast<uint32_t>(it - cum_.begin() - 1);
}

double FrequencyTable::CodeLength(uint32_t symbol) const {
  return static_cast<double>(precision_bits_) -
         std::log2(static_cast<double>(freq_[symbol]));
}

}  // namespace bpsc
