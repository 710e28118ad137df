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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bpsc/det_math.h"
#include "bpsc/parallel.h"
#include "bpsc/status.h"

namespace bpsc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

uint16_t QuantizeFixed88(double v) {
  const double q = std::round(v * 256.0);
  return static_cast<uint16_t>(std::clamp(q, 0.0, 65535.0));
}

// Probability of [lo, hi) given the CDF below the center and the survival
// function above it, each evaluated on its own side to keep tail accuracy.
template <typename Cdf, typename Surv>
double IntervalMass(double lo, double hi, double center, Cdf cdf, Surv surv) {
  double m;
  if (lo >= center) {
    m = surv(lo) - (hi == kInf ? 0.0 : surv(hi));
  } else if (hi <= center) {
    m = cdf(hi) - (lo == -kInf ? 0.0 : cdf(lo));
  } else {
    m = 1.0 - (lo == -kInf ? 0.0 : cdf(lo)) - (hi == kInf ? 0.0 : surv(hi));
  }
  return std::max(m, 0.0);
}

template <typename Cdf, typename Surv>
std::vector<double> Discretize(double center, uint32_t alphabet, Cdf cdf,
                               Surv surv) {
  std::vector<double> mass(alphabet);
  for (uint32_t v = 0; v < alphabet; ++v) {
    const double lo = v == 0 ? -kInf : v - 0.5;
    const double hi = v + 1 == alphabet ? kInf : v + 0.5;
    mass[v] = IntervalMass(lo, hi, center, cdf, surv);
  }
  return mass;
}

struct BlockHistogram {
  std::vector<uint32_t> values;
  std::vector<uint32_t> counts;
};

BlockHistogram HistogramOf(const SymbolGrid& grid, const BlockRect& b,
                           std::vector<uint32_t>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0u);
  for (uint32_t y = b.y0; y < b.y0 + b.height; ++y) {
    const uint8_t* row = grid.symbols.data() + static_cast<size_t>(y) * grid.width;
    for (uint32_t x = b.x0; x < b.x0 + b.width; ++x) ++scratch[row[x]];
  }
  BlockHistogram h;
  for (uint32_t v = 0; v < scratch.size(); ++v) {
    if (scratch[v] != 0) {
      h.values.push_back(v);
      h.counts.push_back(scratch[v]);
    }
  }
  return h;
}

void CheckGrid(const SymbolGrid& grid) {
  if (grid.bits_per_symbol < 1 || grid.bits_per_symbol > 8 ||
      grid.symbols.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "latent model needs a non-empty modality");
  }
}

}  // namespace

PatchOrder PatchOrder::Create(uint32_t width, uint32_t height,
                              uint32_t patch_size) {
  if (patch_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "patch size must be positive");
  }
  PatchOrder p;
  p.patch_size = patch_size;
  const size_t n = static_cast<size_t>(width) * height;
  p.order.reserve(n);
  p.starts_patch.reserve(n);
  for (uint32_t py = 0; py < height; py += patch_size) {
    for (uint32_t px = 0; px < width; px += patch_size) {
      const uint32_t ye = std::min(height, py + patch_size);
      const uint32_t xe = std::min(width, px + patch_size);
      bool first = true;
      for (uint32_t y = py; y < ye; ++y) {
        for (uint32_t x = px; x < xe; ++x) {
          p.order.push_back(y * width + x);
          p.starts_patch.push_back(first ? 1 : 0);
          first = false;
        }
      }
    }
  }
  return p;
}

Order1PatchModel::Order1PatchModel(int bits_per_symbol)
    : bits_(bits_per_symbol) {
  if (bits_per_symbol < 1 || bits_per_symbol > 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "order-1 model needs 1..8 bits per symbol, got " +
                    std::to_string(bits_per_symbol));
  }
  alphabet_ = 1u << bits_per_symbol;
  context_ = alphabet_;
  counts_.assign(static_cast<size_t>(alphabet_ + 1) * alphabet_, 1u);
  totals_.assign(alphabet_ + 1, alphabet_);
  cache_.resize(alphabet_ + 1);
  dirty_.assign(alphabet_ + 1, 1);
}

std::span<const uint32_t> Order1PatchModel::counts(uint32_t context) const {
  return {counts_.data() + static_cast<size_t>(context) * alphabet_, alphabet_};
}

const FrequencyTable& Order1PatchModel::NextDistribution() {
  if (dirty_[context_]) {
    cache_[context_] =
        FrequencyTable::FromCounts(counts(context_), kAdaptivePrecision);
    dirty_[context_] = 0;
  }
  return cache_[context_];
}

void Order1PatchModel::Update(uint32_t symbol) {
  if (symbol >= alphabet_) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol " + std::to_string(symbol) + " outside alphabet of " +
                    std::to_string(alphabet_));
  }
  uint32_t* row = counts_.data() + static_cast<size_t>(context_) * alphabet_;
  ++row[symbol];
  if (++totals_[context_] > kMaxTotal) {
    uint32_t total = 0;
    for (uint32_t v = 0; v < alphabet_; ++v) {
      row[v] = std::max(1u, row[v] / 2);
      total += row[v];
    }
    totals_[context_] = total;
  }
  dirty_[context_] = 1;
  context_ = symbol;
}

std::unique_ptr<AutoregressiveModel> Order1PatchModel::Clone() const {
  return std::make_unique<Order1PatchModel>(*this);
}

std::unique_ptr<AutoregressiveModel> MakeAutoregressiveModel(
    uint8_t model_id, int bits_per_symbol) {
  if (model_id == kOrder1PatchModelId) {
    return std::make_unique<Order1PatchModel>(bits_per_symbol);
  }
  throw Error(ErrorCode::kUnknownModel,
              "unknown autoregressive model id " + std::to_string(model_id));
}

std::vector<BlockRect> BlockLayout(uint32_t width, uint32_t height,
                                   uint32_t block_size) {
  if (block_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block size must be positive");
  }
  std::vector<BlockRect> blocks;
  for (uint32_t y = 0; y < height; y += block_size) {
    for (uint32_t x = 0; x < width; x += block_size) {
      blocks.push_back({x, y, std::min(block_size, width - x),
                        std::min(block_size, height - y)});
    }
  }
  return blocks;
}

std::vector<double> DiscretizedGaussian(double mean, double sigma,
                                        uint32_t alphabet) {
  const double inv = 1.0 / (sigma * 1.4142135623730951);
  return Discretize(
      mean, alphabet,
      [&](double t) { return 0.5 * DetErfc((mean - t) * inv); },
      [&](double t) { return 0.5 * DetErfc((t - mean) * inv); });
}

std::vector<double> DiscretizedLaplace(double center, double scale,
                                       uint32_t alphabet) {
  const double inv = 1.0 / scale;
  return Discretize(
      center, alphabet,
      [&](double t) { return 0.5 * DetExp((t - center) * inv); },
      [&](double t) { return 0.5 * DetExp((center - t) * inv); });
}

uint32_t BlockMeanLatentModel::BlockMean(const SymbolGrid& grid,
                                         const BlockRect& block) {
  uint64_t sum = 0;
  for (uint32_t y = block.y0; y < block.y0 + block.height; ++y) {
    for (uint32_t x = block.x0; x < block.x0 + block.width; ++x) {
      sum += grid.symbols[static_cast<size_t>(y) * grid.width + x];
    }
  }
  const uint64_t n = uint64_t{block.width} * block.height;
  return static_cast<uint32_t>((2 * sum + n) / (2 * n));
}

std::vector<FrequencyTable> BlockMeanLatentModel::LikelihoodTables(
    uint16_t sigma_x_q, int bits_per_symbol) {
  const uint32_t alphabet = 1u << bits_per_symbol;
  const double scale = sigma_x_q / 256.0;
  std::vector<FrequencyTable> tables(alphabet);
  for (uint32_t z = 0; z < alphabet; ++z) {
    tables[z] = FrequencyTable::FromWeights(
        DiscretizedLaplace(z, scale, alphabet), kStaticPrecision);
  }
  return tables;
}

LatentParams BlockMeanLatentModel::Fit(const SymbolGrid& global) const {
  CheckGrid(global);
  const uint32_t alphabet = global.alphabet_size();
  const auto blocks = BlockLayout(global.width, global.height, kBlockSize);

  // hist[m][v]: pixels of value v in blocks whose rounded mean is m.
  std::vector<uint64_t> hist(static_cast<size_t>(alphabet) * alphabet, 0);
  double sum = 0.0, sum_sq = 0.0;
  for (const BlockRect& b : blocks) {
    const uint32_t m = BlockMean(global, b);
    sum += m;
    sum_sq += static_cast<double>(m) * m;
    for (uint32_t y = b.y0; y < b.y0 + b.height; ++y) {
      for (uint32_t x = b.x0; x < b.x0 + b.width; ++x) {
        ++hist[static_cast<size_t>(m) * alphabet +
               global.symbols[static_cast<size_t>(y) * global.width + x]];
      }
    }
  }
  const double nb = static_cast<double>(blocks.size());
  const double mean = sum / nb;
  const double var = std::max(0.0, sum_sq / nb - mean * mean);

  LatentParams params;
  params.prior_mean_q = QuantizeFixed88(mean);
  params.prior_sigma_q =
      QuantizeFixed88(std::max(std::sqrt(var), kMinPriorSigma));

  // Scale grid 0.5 * 2^(j/8); the first scale reaching the minimum wins.
  double best_cost = kInf;
  for (int j = 0;; ++j) {
    const double scale = kMinScale * std::exp2(j / 8.0);
    if (scale > kMaxScale) break;
    const uint16_t q = QuantizeFixed88(scale);
    const auto tables = LikelihoodTables(q, global.bits_per_symbol);
    double cost = 0.0;
    for (uint32_t m = 0; m < alphabet; ++m) {
      for (uint32_t v = 0; v < alphabet; ++v) {
        const uint64_t c = hist[static_cast<size_t>(m) * alphabet + v];
        if (c != 0) cost += static_cast<double>(c) * tables[m].CodeLength(v);
      }
    }
    if (cost < best_cost) {
      best_cost = cost;
      params.sigma_x_q = q;
    }
  }
  return params;
}

LatentTables BlockMeanLatentModel::BuildTables(const LatentParams& params,
                                               int bits_per_symbol) const {
  if (bits_per_symbol < 1 || bits_per_symbol > 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "latent model needs 1..8 bits per symbol");
  }
  if (params.sigma_x() < kMinScale || params.prior_sigma() < kMinPriorSigma) {
    throw Error(ErrorCode::kInvalidArgument,
                "latent scale below the model minimum");
  }
  LatentTables t;
  t.bits_per_symbol = bits_per_symbol;
  const uint32_t alphabet = 1u << bits_per_symbol;
  t.prior = FrequencyTable::FromWeights(
      DiscretizedGaussian(params.prior_mean(), params.prior_sigma(), alphabet),
      kStaticPrecision);
  t.likelihood = LikelihoodTables(params.sigma_x_q, bits_per_symbol);
  return t;
}

FrequencyTable BlockMeanLatentModel::Posterior(const LatentTables& tables,
                                               const SymbolGrid& grid,
                                               const BlockRect& block) const {
  const uint32_t alphabet = 1u << tables.bits_per_symbol;
  std::vector<uint32_t> scratch(alphabet);
  const BlockHistogram h = HistogramOf(grid, block, scratch);

  // Products of up to 65 table frequencies leave the double range, so each
  // weight is carried as mantissa * 2^exponent.
  std::vector<double> mant(alphabet);
  std::vector<int> expo(alphabet);
  int max_expo = std::numeric_limits<int>::min();
  for (uint32_t z = 0; z < alphabet; ++z) {
    int e = 0;
    double m = std::frexp(static_cast<double>(tables.prior.freq(z)), &e);
    const FrequencyTable& lik = tables.likelihood[z];
    for (size_t i = 0; i < h.values.size(); ++i) {
      const double f = lik.freq(h.values[i]);
      for (uint32_t c = 0; c < h.counts[i]; ++c) {
        int de = 0;
        m = std::frexp(m * f, &de);
        e += de;
      }
    }
    mant[z] = m;
    expo[z] = e;
    max_expo = std::max(max_expo, e);
  }
  std::vector<double> w(alphabet);
  for (uint32_t z = 0; z < alphabet; ++z) {
    w[z] = std::ldexp(mant[z], expo[z] - max_expo);
  }
  return FrequencyTable::FromWeights(w, kStaticPrecision);
}

std::unique_ptr<LatentVariableModel> MakeLatentModel(uint8_t model_id) {
  if (model_id == kBlockMeanModelId) {
    return std::make_unique<BlockMeanLatentModel>();
  }
  throw Error(ErrorCode::kUnknownModel,
              "unknown latent model id " + std::to_string(model_id));
}

LatentTableSet LvmTables(const LatentVariableModel& model,
                         const SymbolGrid& global) {
  return LvmTables(model, global, model.Fit(global));
}

LatentTableSet LvmTables(const LatentVariableModel& model,
                         const SymbolGrid& global, const LatentParams& params) {
  CheckGrid(global);
  LatentTableSet set;
  set.params = params;
  set.tables = model.BuildTables(params, global.bits_per_symbol);
  set.blocks = BlockLayout(global.width, global.height, model.block_size());
  set.posteriors.resize(set.blocks.size());
  const int64_t nb = static_cast<int64_t>(set.blocks.size());
#pragma omp parallel for schedule(dynamic, 16) if (global.size() >= kParallelThreshold)
  for (int64_t b = 0; b < nb; ++b) {
    set.posteriors[b] = model.Posterior(set.tables, global, set.blocks[b]);
  }
  return set;
}

double ElboEstimate(const LatentVariableModel& model,
                    const SymbolGrid& global) {
  return ElboEstimate(LvmTables(model, global), global);
}

double ElboEstimate(const LatentTableSet& set, const SymbolGrid& global) {
  const uint32_t alphabet = 1u << set.tables.bits_per_symbol;
  std::vector<uint32_t> scratch(alphabet);
  double total = 0.0;
  for (size_t b = 0; b < set.blocks.size(); ++b) {
    const BlockHistogram h = HistogramOf(global, set.blocks[b], scratch);
    const FrequencyTable& q = set.posteriors[b];
    for (uint32_t z = 0; z < alphabet; ++z) {
      const double qz = static_cast<double>(q.freq(z)) / q.total();
      double cost = set.tables.prior.CodeLength(z) - q.CodeLength(z);
      for (size_t i = 0; i < h.values.size(); ++i) {
        cost += h.counts[i] * set.tables.likelihood[z].CodeLength(h.values[i]);
      }
      total += qz * cost;
    }
  }
  return total;
}

}  // namespace bpsc
