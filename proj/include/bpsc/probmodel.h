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

// Probability models for the two coding paths.
//
// The local modality is coded with an AutoregressiveModel: a next-symbol
// distribution conditioned on previously coded symbols. The global modality
// is coded with a LatentVariableModel that supplies an inference
// distribution q(z|x), a prior p(z) and a likelihood p(x|z) for bits-back
// coding. Both are addressed by a one-byte model id stored in the container.

#ifndef BPSC_PROBMODEL_H_
#define BPSC_PROBMODEL_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bpsc/bitplane.h"
#include "bpsc/frequency_table.h"

namespace bpsc {

inline constexpr uint32_t kDefaultPatchSize = 16;
inline constexpr uint8_t kOrder1PatchModelId = 1;
inline constexpr uint8_t kBlockMeanModelId = 1;

// Patches of patch_size x patch_size pixels visited in raster order, pixels
// raster-scanned inside each patch. Edge patches may be partial.
struct PatchOrder {
  uint32_t patch_size = kDefaultPatchSize;
  std::vector<uint32_t> order;        // pixel indices in coding order
  std::vector<uint8_t> starts_patch;  // 1 where a new patch begins

  static PatchOrder Create(uint32_t width, uint32_t height,
                           uint32_t patch_size);
};

class AutoregressiveModel {
 public:
  virtual ~AutoregressiveModel() = default;

  virtual uint8_t model_id() const = 0;
  virtual int bits_per_symbol() const = 0;

  // Drops the conditioning context (learned statistics are kept).
  virtual void StartPatch() = 0;

  // Distribution for the next symbol given the current context. The table
  // is valid until the next call to Update.
  virtual const FrequencyTable& NextDistribution() = 0;

  // Records `symbol` under the current context and advances the context.
  // Throws kInvalidArgument for a symbol outside the alphabet.
  virtual void Update(uint32_t symbol) = 0;

  virtual std::unique_ptr<AutoregressiveModel> Clone() const = 0;
};

// Adaptive order-1 model: the context is the previous symbol of the patch,
// or a start token at the patch origin. Counts start at 1 (Laplace) and are
// halved, keeping each >= 1, whenever a context's total exceeds 2^12.
class Order1PatchModel : public AutoregressiveModel {
 public:
  static constexpr uint32_t kMaxTotal = 1u << kAdaptivePrecision;

  explicit Order1PatchModel(int bits_per_symbol);

  uint8_t model_id() const override { return kOrder1PatchModelId; }
  int bits_per_symbol() const override { return bits_; }
  void StartPatch() override { context_ = start_token(); }
  const FrequencyTable& NextDistribution() override;
  void Update(uint32_t symbol) override;
  std::unique_ptr<AutoregressiveModel> Clone() const override;

  uint32_t start_token() const { return alphabet_; }
  uint32_t context() const { return context_; }
  std::span<const uint32_t> counts(uint32_t context) const;
  uint32_t context_total(uint32_t context) const { return totals_[context]; }

 private:
  int bits_;
  uint32_t alphabet_;
  uint32_t context_;
  std::vector<uint32_t> counts_;  // (alphabet + 1) rows of alphabet counts
  std::vector<uint32_t> totals_;
  std::vector<FrequencyTable> cache_;
  std::vector<uint8_t> dirty_;
};

// Throws kUnknownModel for an unregistered id.
std::unique_ptr<AutoregressiveModel> MakeAutoregressiveModel(
    uint8_t model_id, int bits_per_symbol);

struct BlockRect {
  uint32_t x0 = 0, y0 = 0, width = 0, height = 0;
};

// Blocks of block_size pixels square in raster order.
std::vector<BlockRect> BlockLayout(uint32_t width, uint32_t height,
                                   uint32_t block_size);

// Per-image parameters of a latent model, held in 8.8 fixed point so both
// ends derive tables from identical values. sigma_x travels in the header;
// the prior parameters travel inside the global stream.
struct LatentParams {
  uint16_t sigma_x_q = 0;
  uint16_t prior_mean_q = 0;
  uint16_t prior_sigma_q = 0;

  double sigma_x() const { return sigma_x_q / 256.0; }
  double prior_mean() const { return prior_mean_q / 256.0; }
  double prior_sigma() const { return prior_sigma_q / 256.0; }
  bool operator==(const LatentParams&) const = default;
};

struct LatentTables {
  int bits_per_symbol = 0;
  FrequencyTable prior;                    // p(z)
  std::vector<FrequencyTable> likelihood;  // p(x | z), indexed by z
};

class LatentVariableModel {
 public:
  virtual ~LatentVariableModel() = default;

  virtual uint8_t model_id() const = 0;
  virtual uint32_t block_size() const = 0;

  // Throws kInvalidArgument on an empty modality.
  virtual LatentParams Fit(const SymbolGrid& global) const = 0;

  virtual LatentTables BuildTables(const LatentParams& params,
                                   int bits_per_symbol) const = 0;

  // q(z | x) for one block. Depends only on the tables and the block's
  // pixels, so the decoder can rebuild it once the block is decoded.
  virtual FrequencyTable Posterior(const LatentTables& tables,
                                   const SymbolGrid& grid,
                                   const BlockRect& block) const = 0;
};

// One latent per 8x8 block, valued in the block's symbol alphabet.
//   p(z)    discretized Gaussian with the mean and spread of the rounded
//           block means
//   p(x|z)  discretized Laplace centered at z with per-image scale sigma_x
//   q(z|x)  the exact block posterior p(z) prod p(x|z), normalized
// sigma_x minimizes the likelihood code length with z set to each block's
// rounded mean, floored at 0.5.
class BlockMeanLatentModel : public LatentVariableModel {
 public:
  static constexpr uint32_t kBlockSize = 8;
  static constexpr double kMinScale = 0.5;
  static constexpr double kMaxScale = 255.0;
  static constexpr double kMinPriorSigma = 0.5;

  uint8_t model_id() const override { return kBlockMeanModelId; }
  uint32_t block_size() const override { return kBlockSize; }
  LatentParams Fit(const SymbolGrid& global) const override;
  LatentTables BuildTables(const LatentParams& params,
                           int bits_per_symbol) const override;
  FrequencyTable Posterior(const LatentTables& tables, const SymbolGrid& grid,
                           const BlockRect& block) const override;

  // Rounded mean of the block's symbols (half rounds up).
  static uint32_t BlockMean(const SymbolGrid& grid, const BlockRect& block);
  // p(x|z) tables for every z at the given scale.
  static std::vector<FrequencyTable> LikelihoodTables(uint16_t sigma_x_q,
                                                      int bits_per_symbol);
};

// Throws kUnknownModel for an unregistered id.
std::unique_ptr<LatentVariableModel> MakeLatentModel(uint8_t model_id);

// Unit-width bins over [0, alphabet), the outer bins absorbing the tails.
std::vector<double> DiscretizedGaussian(double mean, double sigma,
                                        uint32_t alphabet);
std::vector<double> DiscretizedLaplace(double center, double scale,
                                       uint32_t alphabet);

// Everything the global path needs for one grid: fitted parameters, tables
// and the inference distribution of each block.
struct LatentTableSet {
  LatentParams params;
  LatentTables tables;
  std::vector<BlockRect> blocks;
  std::vector<FrequencyTable> posteriors;  // q(z|x) per block
};

LatentTableSet LvmTables(const LatentVariableModel& model,
                         const SymbolGrid& global);
LatentTableSet LvmTables(const LatentVariableModel& model,
                         const SymbolGrid& global, const LatentParams& params);

// Exact negative ELBO in bits, using the quantized tables:
//   sum over blocks of E_q[ log2 q(z) - log2 p(z) - sum log2 p(x|z) ].
// This is the expected net cost of bits-back coding the grid.
double ElboEstimate(const LatentVariableModel& model, const SymbolGrid& global);
double ElboEstimate(const LatentTableSet& set, const SymbolGrid& global);

}  // namespace bpsc

#endif  // BPSC_PROBMODEL_H_
