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

#ifndef BPSC_FREQUENCY_TABLE_H_
#define BPSC_FREQUENCY_TABLE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace bpsc {

inline constexpr int kAdaptivePrecision = 12;
inline constexpr int kStaticPrecision = 16;
inline constexpr int kMaxPrecision = 16;

// Integer symbol distribution whose frequencies are all >= 1 and sum to
// exactly 2^precision_bits.
class FrequencyTable {
 public:
  FrequencyTable() = default;

  // Throws kInvalidArgument on a zero frequency, a wrong total, or a
  // precision outside [1, 16].
  static FrequencyTable FromFrequencies(std::span<const uint32_t> freqs,
                                        int precision_bits);

  // Every symbol receives 1, the remaining 2^precision - n slots are split
  // in proportion to `counts` by largest remainder (ties go to the lower
  // symbol). Integer-exact. Requires a nonzero count sum.
  static FrequencyTable FromCounts(std::span<const uint32_t> counts,
                                   int precision_bits);

  // Same split rule applied to nonnegative real weights.
  static FrequencyTable FromWeights(std::span<const double> weights,
                                    int precision_bits);

  static FrequencyTable Uniform(uint32_t alphabet_size, int precision_bits);

  int precision_bits() const { return precision_bits_; }
  uint32_t total() const { return 1u << precision_bits_; }
  uint32_t size() const { return static_cast<uint32_t>(freq_.size()); }
  uint32_t freq(uint32_t symbol) const { return freq_[symbol]; }
  uint32_t start(uint32_t symbol) const { return cum_[symbol]; }

  // Symbol whose interval [start, start + freq) contains `slot`.
  uint32_t SymbolForSlot(uint32_t slot) const;

  // -log2(freq / total).
  double CodeLength(uint32_t symbol) const;

  std::span<const uint32_t> frequencies() const { return freq_; }

  bool operator==(const FrequencyTable&) const = default;

 private:
  void BuildCumulative();

  int precision_bits_ = 0;
  std::vector<uint32_t> freq_;
  std::vector<uint32_t> cum_;  // size() + 1 entries
};

}  // namespace bpsc

#endif  // BPSC_FREQUENCY_TABLE_H_
