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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bpsc/det_math.h"
#include "bpsc/frequency_table.h"
#include "bpsc/range_coder.h"
#include "bpsc/stack_coder.h"
#include "bpsc/status.h"
#include "synth.h"

namespace bpsc {
namespace {

using testing::Rng;

FrequencyTable RandomTable(Rng& rng, uint32_t n, int precision) {
  std::vector<uint32_t> counts(n);
  for (auto& c : counts) c = static_cast<uint32_t>(rng() % 1000);
  counts[rng() % n] += 1;
  return FrequencyTable::FromCounts(counts, precision);
}

TEST(FrequencyTable, FromFrequenciesValidates) {
  const std::vector<uint32_t> ok = {1, 3, 4};
  const FrequencyTable t = FrequencyTable::FromFrequencies(ok, 3);
  EXPECT_EQ(t.start(2), 4u);
  EXPECT_EQ(t.SymbolForSlot(0), 0u);
  EXPECT_EQ(t.SymbolForSlot(3), 1u);
  EXPECT_EQ(t.SymbolForSlot(7), 2u);
  EXPECT_DOUBLE_EQ(t.CodeLength(2), 1.0);
  const std::vector<uint32_t> zero = {0, 4, 4};
  const std::vector<uint32_t> wrong_total = {1, 2, 3};
  EXPECT_THROW(FrequencyTable::FromFrequencies(zero, 3), Error);
  EXPECT_THROW(FrequencyTable::FromFrequencies(wrong_total, 3), Error);
  EXPECT_THROW(FrequencyTable::FromFrequencies(ok, 17), Error);
}

TEST(FrequencyTable, FromCountsSumsToTotalAndKeepsEverySymbol) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const uint32_t n = 1 + rng() % 256;
    const int k = std::max(8, 1 + static_cast<int>(rng() % 16));
    const FrequencyTable t = RandomTable(rng, n, k);
    uint64_t sum = 0;
    for (uint32_t f : t.frequencies()) {
      EXPECT_GE(f, 1u);
      sum += f;
    }
    EXPECT_EQ(sum, t.total());
  }
}

TEST(FrequencyTable, FromCountsIsProportional) {
  const std::vector<uint32_t> counts = {0, 1, 3};
  const FrequencyTable t = FrequencyTable::FromCounts(counts, 4);
  // 13 spare slots split 1:3 -> 3.25 and 9.75, largest remainder to the
  // second.
  EXPECT_EQ(t.frequencies()[0], 1u);
  EXPECT_EQ(t.frequencies()[1], 4u);
  EXPECT_EQ(t.frequencies()[2], 11u);
}

TEST(FrequencyTable, UniformAndSingleton) {
  const FrequencyTable u = FrequencyTable::Uniform(4, 12);
  for (uint32_t f : u.frequencies()) EXPECT_EQ(f, 1024u);
  const FrequencyTable one = FrequencyTable::Uniform(1, 12);
  EXPECT_EQ(one.freq(0), 4096u);
  EXPECT_EQ(one.CodeLength(0), 0.0);
}

TEST(RangeCoder, FairBitsCostAboutOneBitEach) {
  Rng rng(2);
  std::vector<uint32_t> bits(1024);
  for (auto& b : bits) b = static_cast<uint32_t>(rng() >> 63);
  const FrequencyTable fair = FrequencyTable::Uniform(2, 12);
  auto tables = [&](size_t, std::span<const uint32_t>) { return fair; };
  const auto bytes = ArithEncode(bits, tables);
  EXPECT_LE(8 * bytes.size(), 1024u + 64u);
  EXPECT_EQ(ArithDecode(bytes, tables, bits.size()), bits);
}

TEST(RangeCoder, DegenerateTableProducesNoPayload) {
  const FrequencyTable certain = FrequencyTable::Uniform(1, 12);
  auto tables = [&](size_t, std::span<const uint32_t>) { return certain; };
  const std::vector<uint32_t> zeros(1000, 0);
  const auto bytes = ArithEncode(zeros, tables);
  EXPECT_LE(bytes.size(), 8u);
  EXPECT_EQ(ArithDecode(bytes, tables, zeros.size()), zeros);
}

TEST(RangeCoder, EmptyStream) {
  const FrequencyTable fair = FrequencyTable::Uniform(2, 12);
  auto tables = [&](size_t, std::span<const uint32_t>) { return fair; };
  const auto bytes = ArithEncode({}, tables);
  EXPECT_TRUE(ArithDecode(bytes, tables, 0).empty());
}

TEST(RangeCoder, AdaptiveHistoryRoundTrip) {
  Rng rng(3);
  std::vector<uint32_t> symbols(5000);
  for (auto& s : symbols) s = static_cast<uint32_t>(rng() % 7 == 0 ? rng() % 16 : 3);
  auto tables = [](size_t, std::span<const uint32_t> history) {
    std::vector<uint32_t> counts(16, 1);
    for (uint32_t s : history.last(std::min<size_t>(history.size(), 64))) {
      counts[s] += 4;
    }
    return FrequencyTable::FromCounts(counts, 12);
  };
  const auto bytes = ArithEncode(symbols, tables);
  EXPECT_EQ(ArithDecode(bytes, tables, symbols.size()), symbols);
}

TEST(RangeCoder, CodeLengthWithinSmallOverheadOfIdeal) {
  Rng rng(4);
  const FrequencyTable t = RandomTable(rng, 40, 12);
  std::vector<uint32_t> symbols(20000);
  double ideal = 0.0;
  for (auto& s : symbols) {
    s = t.SymbolForSlot(static_cast<uint32_t>(rng() % t.total()));
    ideal += t.CodeLength(s);
  }
  auto tables = [&](size_t, std::span<const uint32_t>) { return t; };
  const auto bytes = ArithEncode(symbols, tables);
  EXPECT_LE(8.0 * bytes.size(), ideal * 1.001 + 64);
}

TEST(RangeCoder, SymbolOutsideTableThrows) {
  RangeEncoder enc;
  EXPECT_THROW(enc.Encode(FrequencyTable::Uniform(4, 8), 4), Error);
}

TEST(RangeCoder, TruncatedStreamIsDetected) {
  Rng rng(5);
  std::vector<uint32_t> symbols(4000);
  for (auto& s : symbols) s = static_cast<uint32_t>(rng() % 256);
  const FrequencyTable u = FrequencyTable::Uniform(256, 12);
  auto tables = [&](size_t, std::span<const uint32_t>) { return u; };
  auto bytes = ArithEncode(symbols, tables);
  bytes.resize(bytes.size() / 2);
  try {
    ArithDecode(bytes, tables, symbols.size());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncated);
  }
}

TEST(StackCoder, LastInFirstOut) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    StackCoder c;
    std::vector<std::pair<FrequencyTable, uint32_t>> pushed;
    const int n = static_cast<int>(rng() % 2000);
    for (int i = 0; i < n; ++i) {
      FrequencyTable t = RandomTable(rng, 1 + rng() % 64, 8 + rng() % 9);
      const uint32_t s = t.SymbolForSlot(static_cast<uint32_t>(rng() % t.total()));
      c.Push(t, s);
      pushed.emplace_back(std::move(t), s);
    }
    StackCoder d = StackCoder::Deserialize(c.Serialize());
    for (int i = n - 1; i >= 0; --i) {
      EXPECT_EQ(d.Pop(pushed[i].first), pushed[i].second);
    }
    EXPECT_EQ(d.head(), StackCoder::kStandaloneBottom);
    EXPECT_TRUE(d.words().empty());
  }
}

TEST(StackCoder, EmptyCoderCostsThreeBytes) {
  StackCoder c;
  EXPECT_EQ(c.Serialize().size(), 3u);
  EXPECT_THROW(c.PopUniform(4), Error);
  // A certain symbol pops without touching the state.
  EXPECT_EQ(c.Pop(FrequencyTable::Uniform(1, 12)), 0u);
}

TEST(StackCoder, UniformValuesCostTheirWidth) {
  Rng rng(7);
  StackCoder c;
  std::vector<uint32_t> values(4096);
  for (auto& v : values) {
    v = static_cast<uint32_t>(rng() % 65536);
    c.Push(v, 1, 16);
  }
  EXPECT_LE(8.0 * c.Serialize().size(), 16.0 * values.size() + 64);
  for (size_t i = values.size(); i-- > 0;) EXPECT_EQ(c.PopUniform(16), values[i]);
}

TEST(StackCoder, PopThenPushRestoresInitialBits) {
  SeededBits src(11);
  StackCoder c(&src);
  const FrequencyTable t = FrequencyTable::Uniform(5, 12);
  std::vector<uint32_t> popped;
  for (int i = 0; i < 100; ++i) popped.push_back(c.Pop(t));
  for (size_t i = popped.size(); i-- > 0;) c.Push(t, popped[i]);
  // The drawn words come back as the head's low word, then the stack from
  // the top down.
  ASSERT_GT(c.consumed_words(), 1u);
  ASSERT_EQ(c.words().size(), c.consumed_words() - 1);
  EXPECT_EQ(c.head() >> 32, 1u);
  SeededBits ref(11);
  EXPECT_EQ(static_cast<uint32_t>(c.head()), ref.NextWord());
  for (size_t i = c.words().size(); i-- > 0;) {
    EXPECT_EQ(c.words()[i], ref.NextWord());
  }
}

TEST(StackCoder, DeserializeRejectsBadInput) {
  try {
    StackCoder::Deserialize({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncated);
  }
  const std::vector<uint8_t> trailing_zero = {1, 2, 0};
  EXPECT_THROW(StackCoder::Deserialize(trailing_zero), Error);
  const std::vector<uint8_t> small = {5};
  EXPECT_THROW(StackCoder::Deserialize(small), Error);
}

TEST(DetMath, ExpMatchesLibm) {
  for (double x = -700; x < 700; x += 0.731) {
    EXPECT_NEAR(DetExp(x) / std::exp(x), 1.0, 1e-14) << x;
  }
  EXPECT_EQ(DetExp(-800), 0.0);
  EXPECT_EQ(DetExp(0), 1.0);
}

TEST(DetMath, ErfcMatchesLibm) {
  for (double x = -6; x < 6; x += 0.013) {
    EXPECT_NEAR(DetErfc(x), std::erfc(x), 1.2e-7 * std::erfc(x) + 1e-15) << x;
  }
}

}  // namespace
}  // namespace bpsc
