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

// End-to-end compression with an embedded message.
//
// Encoding: split the image at the slicing index s, embed the message into
// planes 1..s, code the stego local planes with the autoregressive model,
// then bits-back code planes s+1..8 with the latent model, drawing its
// initial bits from the tail of the local stream. Decoding runs in reverse:
// the global stream is decoded first, which hands back the borrowed tail of
// the local stream.

#ifndef BPSC_PIPELINE_H_
#define BPSC_PIPELINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bpsc/bitplane.h"
#include "bpsc/container.h"
#include "bpsc/decomposition.h"
#include "bpsc/probmodel.h"
#include "bpsc/stack_coder.h"
#include "bpsc/stego.h"

namespace bpsc {

enum class InitialBitsPolicy : uint8_t {
  kLocalTail = 0,  // tail of the local stream, seeded words once it runs out
  kSeeded = 1,     // seeded pseudo-random words only
};

struct EncodeConfig {
  double beta = kDefaultBeta;
  uint32_t patch_size = kDefaultPatchSize;
  uint8_t ar_model_id = kOrder1PatchModelId;
  uint8_t lvm_model_id = kBlockMeanModelId;
  InitialBitsPolicy policy = InitialBitsPolicy::kLocalTail;
  uint64_t seed = 0;

  // Throws kInvalidArgument for beta outside [0, 1], a patch size outside
  // 1..255 or an unknown policy, and kUnknownModel for unregistered ids.
  void Validate() const;
};

struct LocalStream {
  std::vector<uint8_t> bytes;
  double ideal_bits = 0.0;  // sum of -log2 p over the coded symbols
};

LocalStream EncodeLocal(const SymbolGrid& grid, uint8_t ar_model_id,
                        uint32_t patch_size);

// Throws kCorruptStream when the stream does not decode to exactly its own
// length.
SymbolGrid DecodeLocal(std::span<const uint8_t> bytes, uint8_t ar_model_id,
                       int bits_per_symbol, uint32_t width, uint32_t height,
                       uint32_t patch_size);

// Initial bits read backwards from the end of a byte stream, four bytes per
// little-endian word, then seeded words once fewer than four bytes remain.
class LocalTailBits : public InitialBitsSource {
 public:
  LocalTailBits(std::span<const uint8_t> stream, uint64_t seed)
      : stream_(stream), remaining_(stream.size()), seeded_(seed) {}

  uint32_t NextWord() override;

  uint64_t local_words() const { return local_words_; }
  uint64_t seeded_words() const { return seeded_words_; }
  // Bytes of the stream not handed out.
  size_t remaining() const { return remaining_; }

 private:
  std::span<const uint8_t> stream_;
  size_t remaining_;
  SeededBits seeded_;
  uint64_t local_words_ = 0;
  uint64_t seeded_words_ = 0;
};

struct GlobalStream {
  std::vector<uint8_t> bytes;
  LatentParams params;
  uint64_t consumed_words = 0;  // initial-bit words drawn

  double gross_bits() const { return 8.0 * bytes.size(); }
  // Stream length minus the initial bits it absorbed.
  double net_bits() const { return gross_bits() - 32.0 * consumed_words; }
};

// Per block, in raster order: z ~ q(z|x) popped from the coder, the block's
// pixels pushed under p(x|z), then z pushed under p(z). The prior
// parameters are pushed last. An empty modality yields an empty stream.
GlobalStream EncodeGlobal(const SymbolGrid& global,
                          const LatentVariableModel& model,
                          InitialBitsSource* initial_bits);

struct GlobalDecode {
  SymbolGrid grid;
  // Initial-bit words handed back, in the order they were drawn.
  std::vector<uint32_t> reclaimed_words;
};

// Throws kCorruptStream or kExhausted on a stream that does not decode.
GlobalDecode DecodeGlobal(std::span<const uint8_t> bytes,
                          const LatentVariableModel& model,
                          uint16_t sigma_x_q, int bits_per_symbol,
                          uint32_t width, uint32_t height);

struct EncodeStats {
  SplitDecision decision;
  SegmentPlan plan;
  uint64_t local_gross_bytes = 0;
  double local_ideal_bits = 0.0;
  uint64_t global_gross_bytes = 0;
  uint64_t local_tail_words = 0;
  uint64_t seeded_words = 0;

  // Global stream bits net of every initial-bit word it absorbed.
  double global_net_bits() const {
    return 8.0 * global_gross_bytes -
           32.0 * static_cast<double>(local_tail_words + seeded_words);
  }
};

struct CompressedImage {
  Container container;
  EncodeStats stats;
};

// Throws kCapacityExceeded when the message does not fit s * W * H bits.
CompressedImage Compress(const Image& image, const Message& message,
                         const EncodeConfig& config);

struct Decompressed {
  Image image;
  Message message;
};

Decompressed Decompress(const Container& container);
Decompressed Decompress(std::span<const uint8_t> container_bytes);

// The image carrying the message: planes 1..s after embedding, the rest
// untouched.
Image RenderStego(const Image& image, int slicing_index,
                  const Message& message);

}  // namespace bpsc

#endif  // BPSC_PIPELINE_H_
