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

#include "bpsc/pipeline.h"

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "bpsc/range_coder.h"
#include "bpsc/status.h"

namespace bpsc {
namespace {

constexpr int kParamBits = 16;
constexpr uint64_t kU32Max = std::numeric_limits<uint32_t>::max();

uint32_t CheckedU32(uint64_t v, const char* what) {
  if (v > kU32Max) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " exceeds the container's 32-bit field");
  }
  return static_cast<uint32_t>(v);
}

template <typename F>
void ForEachBlockPixel(const BlockRect& b, uint32_t width, F f) {
  for (uint32_t y = b.y0; y < b.y0 + b.height; ++y) {
    for (uint32_t x = b.x0; x < b.x0 + b.width; ++x) {
      f(static_cast<size_t>(y) * width + x);
    }
  }
}

[[noreturn]] void Corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptStream, what);
}

}  // namespace

void EncodeConfig::Validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta must lie in [0, 1], got " + std::to_string(beta));
  }
  if (patch_size < 1 || patch_size > 255) {
    throw Error(ErrorCode::kInvalidArgument,
                "patch size must lie in 1..255, got " +
                    std::to_string(patch_size));
  }
  if (policy != InitialBitsPolicy::kLocalTail &&
      policy != InitialBitsPolicy::kSeeded) {
    throw Error(ErrorCode::kInvalidArgument, "unknown initial-bits policy");
  }
  MakeAutoregressiveModel(ar_model_id, 1);
  MakeLatentModel(lvm_model_id);
}

LocalStream EncodeLocal(const SymbolGrid& grid, uint8_t ar_model_id,
                        uint32_t patch_size) {
  auto model = MakeAutoregressiveModel(ar_model_id, grid.bits_per_symbol);
  const PatchOrder order = PatchOrder::Create(grid.width, grid.height,
                                              patch_size);
  RangeEncoder enc;
  LocalStream out;
  for (size_t k = 0; k < order.order.size(); ++k) {
    if (order.starts_patch[k]) model->StartPatch();
    const FrequencyTable& table = model->NextDistribution();
    const uint32_t sym = grid.symbols[order.order[k]];
    out.ideal_bits += table.CodeLength(sym);
    enc.Encode(table, sym);
    model->Update(sym);
  }
  out.bytes = enc.Finish();
  return out;
}

SymbolGrid DecodeLocal(std::span<const uint8_t> bytes, uint8_t ar_model_id,
                       int bits_per_symbol, uint32_t width, uint32_t height,
                       uint32_t patch_size) {
  auto model = MakeAutoregressiveModel(ar_model_id, bits_per_symbol);
  const PatchOrder order = PatchOrder::Create(width, height, patch_size);
  SymbolGrid grid;
  grid.width = width;
  grid.height = height;
  grid.bits_per_symbol = bits_per_symbol;
  grid.symbols.assign(static_cast<size_t>(width) * height, 0);
  RangeDecoder dec(bytes);
  for (size_t k = 0; k < order.order.size(); ++k) {
    if (order.starts_patch[k]) model->StartPatch();
    const uint32_t sym = dec.Decode(model->NextDistribution());
    grid.symbols[order.order[k]] = static_cast<uint8_t>(sym);
    model->Update(sym);
  }
  if (!dec.ConsumedAll()) Corrupt("local stream has unused bytes");
  return grid;
}

uint32_t LocalTailBits::NextWord() {
  if (remaining_ < 4) {
    ++seeded_words_;
    return seeded_.NextWord();
  }
  remaining_ -= 4;
  uint32_t w = 0;
  for (int i = 0; i < 4; ++i) {
    w |= uint32_t{stream_[remaining_ + i]} << (8 * i);
  }
  ++local_words_;
  return w;
}

GlobalStream EncodeGlobal(const SymbolGrid& global,
                          const LatentVariableModel& model,
                          InitialBitsSource* initial_bits) {
  GlobalStream out;
  if (global.empty_modality()) return out;
  const LatentTableSet set = LvmTables(model, global);
  out.params = set.params;
  StackCoder coder(initial_bits);
  for (size_t b = 0; b < set.blocks.size(); ++b) {
    const uint32_t z = coder.Pop(set.posteriors[b]);
    const FrequencyTable& lik = set.tables.likelihood[z];
    ForEachBlockPixel(set.blocks[b], global.width, [&](size_t i) {
      coder.Push(lik, global.symbols[i]);
    });
    coder.Push(set.tables.prior, z);
  }
  coder.Push(set.params.prior_sigma_q, 1, kParamBits);
  coder.Push(set.params.prior_mean_q, 1, kParamBits);
  out.bytes = coder.Serialize();
  out.consumed_words = coder.consumed_words();
  return out;
}

GlobalDecode DecodeGlobal(std::span<const uint8_t> bytes,
                          const LatentVariableModel& model,
                          uint16_t sigma_x_q, int bits_per_symbol,
                          uint32_t width, uint32_t height) {
  GlobalDecode out;
  out.grid.width = width;
  out.grid.height = height;
  out.grid.bits_per_symbol = bits_per_symbol;
  out.grid.symbols.assign(static_cast<size_t>(width) * height, 0);
  if (bits_per_symbol == 0) {
    if (!bytes.empty()) Corrupt("global stream present for an empty modality");
    return out;
  }

  StackCoder coder = StackCoder::Deserialize(bytes);
  LatentParams params;
  params.sigma_x_q = sigma_x_q;
  params.prior_mean_q = static_cast<uint16_t>(coder.PopUniform(kParamBits));
  params.prior_sigma_q = static_cast<uint16_t>(coder.PopUniform(kParamBits));
  LatentTables tables;
  try {
    tables = model.BuildTables(params, bits_per_symbol);
  } catch (const Error& e) {
    Corrupt(std::string("bad latent parameters: ") + e.what());
  }
  const auto blocks = BlockLayout(width, height, model.block_size());
  std::vector<size_t> pixels;
  for (size_t b = blocks.size(); b-- > 0;) {
    const uint32_t z = coder.Pop(tables.prior);
    const FrequencyTable& lik = tables.likelihood[z];
    pixels.clear();
    ForEachBlockPixel(blocks[b], width,
                      [&](size_t i) { pixels.push_back(i); });
    for (size_t j = pixels.size(); j-- > 0;) {
      out.grid.symbols[pixels[j]] = static_cast<uint8_t>(coder.Pop(lik));
    }
    coder.Push(model.Posterior(tables, out.grid, blocks[b]), z);
  }

  // What is left is exactly the initial bits: head = 2^32 + first word,
  // later words stacked in the order they were drawn, last on the bottom.
  if ((coder.head() >> 32) != 1) Corrupt("global stream has leftover state");
  out.reclaimed_words.push_back(static_cast<uint32_t>(coder.head()));
  const auto words = coder.words();
  for (size_t j = words.size(); j-- > 0;) {
    out.reclaimed_words.push_back(words[j]);
  }
  return out;
}

CompressedImage Compress(const Image& image, const Message& message,
                         const EncodeConfig& config) {
  config.Validate();
  if (image.width == 0 || image.height == 0 ||
      image.size() != static_cast<size_t>(image.width) * image.height) {
    throw Error(ErrorCode::kInvalidArgument, "malformed image");
  }
  CompressedImage result;
  EncodeStats& stats = result.stats;

  const Decomposition dec = Decompose(image, config.beta);
  stats.decision = dec.decision;
  const int s = dec.decision.slicing_index;
  const uint64_t capacity = uint64_t{image.width} * image.height;
  stats.plan = PlanSegments(message.length(), s, capacity);

  const std::vector<BitPlane> local_planes = UnpackRange(dec.local, 1, s);
  StegoResult stego = Embed(local_planes, message, stats.plan);
  const SymbolGrid stego_local = PackPlanes(stego.planes);

  LocalStream local = EncodeLocal(stego_local, config.ar_model_id,
                                  config.patch_size);
  stats.local_gross_bytes = local.bytes.size();
  stats.local_ideal_bits = local.ideal_bits;

  const auto lvm = MakeLatentModel(config.lvm_model_id);
  GlobalStream global;
  size_t local_kept = local.bytes.size();
  if (config.policy == InitialBitsPolicy::kLocalTail) {
    LocalTailBits source(local.bytes, config.seed);
    global = EncodeGlobal(dec.global, *lvm, &source);
    stats.local_tail_words = source.local_words();
    stats.seeded_words = source.seeded_words();
    local_kept = source.remaining();
  } else {
    SeededBits source(config.seed);
    global = EncodeGlobal(dec.global, *lvm, &source);
    stats.seeded_words = global.consumed_words;
  }
  stats.global_gross_bytes = global.bytes.size();

  Container& c = result.container;
  ContainerHeader& h = c.header;
  h.width = image.width;
  h.height = image.height;
  h.slicing_index = static_cast<uint8_t>(s);
  h.beta_q = static_cast<uint16_t>(std::lround(config.beta * 10000.0));
  h.ar_model_id = config.ar_model_id;
  h.lvm_model_id = config.lvm_model_id;
  h.patch_size = static_cast<uint8_t>(config.patch_size);
  h.block_size = static_cast<uint8_t>(lvm->block_size());
  h.sigma_x_q = global.params.sigma_x_q;
  h.policy = static_cast<uint8_t>(config.policy);
  h.seed = config.seed;
  h.message_bits = message.length();
  for (uint64_t len : stats.plan.lengths) {
    h.segment_lengths.push_back(CheckedU32(len, "segment length"));
  }
  c.sidecar = SerializeSidecar(stego.sidecar);
  c.global_stream = std::move(global.bytes);
  local.bytes.resize(local_kept);
  c.local_stream = std::move(local.bytes);
  h.sidecar_bytes = CheckedU32(c.sidecar.size(), "sidecar");
  h.global_bytes = CheckedU32(c.global_stream.size(), "global stream");
  h.local_tail_bits =
      CheckedU32(32 * stats.local_tail_words, "initial-bit count");
  h.local_bytes = CheckedU32(c.local_stream.size(), "local stream");
  return result;
}

Decompressed Decompress(const Container& container) {
  const ContainerHeader& h = container.header;
  const int s = h.slicing_index;
  if (s < 1 || s > kNumPlanes ||
      h.segment_lengths.size() != static_cast<size_t>(s)) {
    throw Error(ErrorCode::kFormat, "inconsistent slicing index");
  }
  const auto lvm = MakeLatentModel(h.lvm_model_id);
  MakeAutoregressiveModel(h.ar_model_id, s);
  if (h.patch_size == 0) Corrupt("zero patch size");
  if (h.block_size != lvm->block_size()) Corrupt("block size does not match the latent model");
  if (h.policy > 1) Corrupt("unknown initial-bits policy");

  GlobalDecode global =
      DecodeGlobal(container.global_stream, *lvm, h.sigma_x_q, kNumPlanes - s,
                   h.width, h.height);

  // Reattach the borrowed tail: the first word drawn was the last four
  // bytes of the local stream.
  const uint64_t local_words = h.local_tail_bits / 32;
  const auto& reclaimed = global.reclaimed_words;
  if (local_words > reclaimed.size() ||
      (h.policy == static_cast<uint8_t>(InitialBitsPolicy::kSeeded) &&
       local_words != 0) ||
      (h.policy == static_cast<uint8_t>(InitialBitsPolicy::kLocalTail) &&
       reclaimed.size() > local_words && container.local_stream.size() >= 4)) {
    Corrupt("initial-bit accounting does not match the global stream");
  }
  std::vector<uint8_t> local(container.local_stream);
  for (uint64_t j = local_words; j-- > 0;) {
    for (int i = 0; i < 4; ++i) {
      local.push_back(static_cast<uint8_t>(reclaimed[j] >> (8 * i)));
    }
  }
  SeededBits seeded(h.seed);
  for (size_t j = local_words; j < reclaimed.size(); ++j) {
    if (reclaimed[j] != seeded.NextWord()) {
      Corrupt("reclaimed initial bits differ from the seeded source");
    }
  }

  const SymbolGrid stego_local =
      DecodeLocal(local, h.ar_model_id, s, h.width, h.height, h.patch_size);
  const std::vector<BitPlane> stego_planes = UnpackRange(stego_local, 1, s);

  SegmentPlan plan;
  plan.plane_capacity = uint64_t{h.width} * h.height;
  plan.lengths.assign(h.segment_lengths.begin(), h.segment_lengths.end());

  Decompressed out;
  out.message = ExtractMessage(stego_planes, plan);
  const BitmapSidecar sidecar = ParseSidecar(container.sidecar, plan.lengths);
  const std::vector<BitPlane> planes = RecoverPlanes(stego_planes, sidecar);
  out.image = Recombine(PackPlanes(planes), global.grid);
  return out;
}

Decompressed Decompress(std::span<const uint8_t> container_bytes) {
  return Decompress(ReadContainer(container_bytes));
}

Image RenderStego(const Image& image, int slicing_index,
                  const Message& message) {
  PlaneStack stack = SlicePlanes(image);
  std::vector<BitPlane> local(stack.planes.begin(),
                              stack.planes.begin() + slicing_index);
  const SegmentPlan plan =
      PlanSegments(message.length(), slicing_index, image.size());
  StegoResult stego = Embed(local, message, plan);
  for (int l = 1; l <= slicing_index; ++l) {
    stack.plane(l) = std::move(stego.planes[l - 1]);
  }
  return Recompose(stack);
}

}  // namespace bpsc
