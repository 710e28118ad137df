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

#include "bpsc/probmodel.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "bpsc/status.h"
#include "synth.h"

namespace bpsc {
namespace {

using testing::Rng;

SymbolGrid GridOf(const Image& img, int lo, int hi) {
  return PackImageRange(img, lo, hi);
}

TEST(PatchOrder, VisitsEveryPixelOncePatchByPatch) {
  const PatchOrder o = PatchOrder::Create(5, 3, 2);
  EXPECT_EQ(o.order, (std::vector<uint32_t>{0, 1, 5, 6, 2, 3, 7, 8, 4, 9,
                                            10, 11, 12, 13, 14}));
  EXPECT_EQ(std::accumulate(o.starts_patch.begin(), o.starts_patch.end(), 0),
            6);
  EXPECT_THROW(PatchOrder::Create(5, 3, 0), Error);
}

TEST(Order1PatchModel, FreshModelIsUniform) {
  Order1PatchModel m(3);
  m.StartPatch();
  const FrequencyTable& t = m.NextDistribution();
  ASSERT_EQ(t.size(), 8u);
  for (uint32_t f : t.frequencies()) EXPECT_EQ(f, 512u);
}

TEST(Order1PatchModel, CountsMatchRecount) {
  Rng rng(1);
  Order1PatchModel m(2);
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> oracle;
  m.StartPatch();
  uint32_t ctx = m.start_token();
  for (int i = 0; i < 1000; ++i) {
    if (i % 37 == 0) {
      m.StartPatch();
      ctx = m.start_token();
    }
    const uint32_t s = static_cast<uint32_t>(rng() % 4);
    m.Update(s);
    ++oracle[{ctx, s}];
    ctx = s;
  }
  for (uint32_t c = 0; c <= 4; ++c) {
    for (uint32_t s = 0; s < 4; ++s) {
      EXPECT_EQ(m.counts(c)[s], 1 + oracle[std::make_pair(c, s)]);
    }
  }
}

TEST(Order1PatchModel, HalvingKeepsCountsPositiveAndBounded) {
  Order1PatchModel m(1);
  m.StartPatch();
  for (int i = 0; i < 20000; ++i) {
    m.StartPatch();
    m.Update(0);
  }
  const auto c = m.counts(m.start_token());
  EXPECT_GE(c[1], 1u);
  EXPECT_LE(m.context_total(m.start_token()), Order1PatchModel::kMaxTotal);
  EXPECT_GT(c[0], 1000u);
}

TEST(Order1PatchModel, RejectsOutOfAlphabetSymbol) {
  Order1PatchModel m(2);
  m.StartPatch();
  EXPECT_THROW(m.Update(4), Error);
}

TEST(MakeModels, UnknownIdsAreRejected) {
  try {
    MakeAutoregressiveModel(7, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownModel);
  }
  EXPECT_THROW(MakeLatentModel(0), Error);
  EXPECT_NE(MakeLatentModel(kBlockMeanModelId), nullptr);
}

TEST(BlockLayout, CoversGridWithPartialEdges) {
  const auto blocks = BlockLayout(20, 9, 8);
  ASSERT_EQ(blocks.size(), 6u);
  uint64_t area = 0;
  for (const auto& b : blocks) area += uint64_t{b.width} * b.height;
  EXPECT_EQ(area, 180u);
  EXPECT_EQ(blocks[2].width, 4u);
  EXPECT_EQ(blocks[5].height, 1u);
}

TEST(Discretized, BinsSumToOneAndNarrowOnesPeakAtCenter) {
  for (double sigma : {0.5, 1.0, 7.3, 200.0}) {
    const auto g = DiscretizedGaussian(10.0, sigma, 32);
    const auto l = DiscretizedLaplace(10.0, sigma, 32);
    EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 1.0, 1e-6);
    EXPECT_NEAR(std::accumulate(l.begin(), l.end(), 0.0), 1.0, 1e-9);
    if (sigma <= 1.0) {
      EXPECT_EQ(std::max_element(l.begin(), l.end()) - l.begin(), 10);
      EXPECT_EQ(std::max_element(g.begin(), g.end()) - g.begin(), 10);
    }
  }
}

TEST(BlockMeanLatentModel, ZeroResidualGivesMinimumScale) {
  const LatentParams p =
      BlockMeanLatentModel().Fit(GridOf(Image::Filled(32, 32, 0xA0), 5, 8));
  EXPECT_EQ(p.sigma_x_q, 128);
  EXPECT_EQ(p.prior_mean_q, 10 * 256);
  EXPECT_EQ(p.prior_sigma_q, 128);
}

TEST(BlockMeanLatentModel, TablesSumToStaticTotal) {
  Rng rng(2);
  const BlockMeanLatentModel model;
  const SymbolGrid g = GridOf(testing::SmoothImage(40, 30, 120, 40, 3, rng), 4, 8);
  const LatentTableSet set = LvmTables(model, g);
  auto check = [](const FrequencyTable& t, uint32_t n) {
    EXPECT_EQ(t.size(), n);
    EXPECT_EQ(std::accumulate(t.frequencies().begin(), t.frequencies().end(),
                              uint64_t{0}),
              uint64_t{1} << kStaticPrecision);
  };
  check(set.tables.prior, 32);
  for (const auto& t : set.tables.likelihood) check(t, 32);
  for (const auto& t : set.posteriors) check(t, 32);
  EXPECT_EQ(set.posteriors.size(), set.blocks.size());
}

TEST(BlockMeanLatentModel, BuildTablesRejectsTooSmallScale) {
  LatentParams p;
  p.sigma_x_q = 10;
  p.prior_sigma_q = 256;
  EXPECT_THROW(BlockMeanLatentModel().BuildTables(p, 3), Error);
}

TEST(BlockMeanLatentModel, FitRejectsEmptyModality) {
  SymbolGrid empty;
  empty.width = 4;
  empty.height = 4;
  empty.symbols.assign(16, 0);
  EXPECT_THROW(BlockMeanLatentModel().Fit(empty), Error);
}

TEST(BlockMeanLatentModel, PosteriorPeaksNearBlockMean) {
  Rng rng(3);
  const BlockMeanLatentModel model;
  const SymbolGrid g = GridOf(testing::SmoothImage(64, 64, 128, 60, 1, rng), 3, 8);
  const LatentTableSet set = LvmTables(model, g);
  for (size_t b = 0; b < set.blocks.size(); ++b) {
    const auto f = set.posteriors[b].frequencies();
    const int mode = static_cast<int>(std::max_element(f.begin(), f.end()) - f.begin());
    const int mean = static_cast<int>(BlockMeanLatentModel::BlockMean(g, set.blocks[b]));
    EXPECT_LE(std::abs(mode - mean), 1);
  }
}

// The negative ELBO recomputed by direct summation over every pixel.
TEST(ElboEstimate, MatchesDirectSummation) {
  Rng rng(4);
  const BlockMeanLatentModel model;
  const SymbolGrid g = GridOf(testing::SmoothImage(19, 13, 90, 50, 4, rng), 4, 8);
  const LatentTableSet set = LvmTables(model, g);
  double oracle = 0.0;
  for (size_t b = 0; b < set.blocks.size(); ++b) {
    const BlockRect& r = set.blocks[b];
    const FrequencyTable& q = set.posteriors[b];
    for (uint32_t z = 0; z < q.size(); ++z) {
      const double qz = q.freq(z) / 65536.0;
      double cost = -std::log2(set.tables.prior.freq(z) / 65536.0) +
                    std::log2(qz);
      for (uint32_t y = r.y0; y < r.y0 + r.height; ++y) {
        for (uint32_t x = r.x0; x < r.x0 + r.width; ++x) {
          const uint32_t v = g.symbols[y * g.width + x];
          cost -= std::log2(set.tables.likelihood[z].freq(v) / 65536.0);
        }
      }
      oracle += qz * cost;
    }
  }
  EXPECT_NEAR(ElboEstimate(set, g), oracle, 1e-9 * oracle);
  EXPECT_DOUBLE_EQ(ElboEstimate(model, g), ElboEstimate(set, g));
}

TEST(LvmTables, IsDeterministic) {
  Rng rng(5);
  const BlockMeanLatentModel model;
  const SymbolGrid g = GridOf(testing::NoiseImage(50, 50, rng), 2, 8);
  const LatentTableSet a = LvmTables(model, g);
  const LatentTableSet b = LvmTables(model, g, a.params);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.posteriors, b.posteriors);
  EXPECT_EQ(a.tables.prior, b.tables.prior);
}

}  // namespace
}  // namespace bpsc
