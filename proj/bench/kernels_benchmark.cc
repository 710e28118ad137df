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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "bpsc/bitplane.h"
#include "bpsc/decomposition.h"
#include "bpsc/metrics.h"
#include "bpsc/pipeline.h"
#include "bpsc/serial.h"

namespace {

bpsc::Image NoiseImage(uint32_t side, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint8_t> px(static_cast<size_t>(side) * side);
  for (auto& v : px) v = static_cast<uint8_t>(rng());
  return bpsc::Image::Create(side, side, std::move(px));
}

bpsc::Image Perturbed(const bpsc::Image& img) {
  bpsc::Image out = img;
  for (size_t i = 0; i < out.size(); i += 97) out.samples[i] ^= 1;
  return out;
}

void BM_SlicePlanesSerial(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::serial::SlicePlanes(img));
  state.SetItemsProcessed(state.iterations() * img.size());
}
void BM_SlicePlanesParallel(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::SlicePlanes(img));
  state.SetItemsProcessed(state.iterations() * img.size());
}

void BM_PackRangeSerial(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpsc::serial::PackImageRange(img, 1, 4));
  }
  state.SetItemsProcessed(state.iterations() * img.size());
}
void BM_PackRangeParallel(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpsc::PackImageRange(img, 1, 4));
  }
  state.SetItemsProcessed(state.iterations() * img.size());
}

void BM_HistogramSerial(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpsc::serial::PixelHistogram(img));
  }
  state.SetItemsProcessed(state.iterations() * img.size());
}
void BM_HistogramParallel(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::PixelHistogram(img));
  state.SetItemsProcessed(state.iterations() * img.size());
}

void BM_SquaredErrorSerial(benchmark::State& state) {
  const auto a = NoiseImage(state.range(0), 4);
  const auto b = Perturbed(a);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::serial::SquaredError(a, b));
  state.SetItemsProcessed(state.iterations() * a.size());
}
void BM_SquaredErrorParallel(benchmark::State& state) {
  const auto a = NoiseImage(state.range(0), 4);
  const auto b = Perturbed(a);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::SquaredError(a, b));
  state.SetItemsProcessed(state.iterations() * a.size());
}

void BM_SsimSerial(benchmark::State& state) {
  const auto a = NoiseImage(state.range(0), 5);
  const auto b = Perturbed(a);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::serial::Ssim(a, b));
  state.SetItemsProcessed(state.iterations() * a.size());
}
void BM_SsimParallel(benchmark::State& state) {
  const auto a = NoiseImage(state.range(0), 5);
  const auto b = Perturbed(a);
  for (auto _ : state) benchmark::DoNotOptimize(bpsc::Ssim(a, b));
  state.SetItemsProcessed(state.iterations() * a.size());
}

void BM_CompressRoundTrip(benchmark::State& state) {
  const auto img = NoiseImage(state.range(0), 6);
  for (auto _ : state) {
    const auto c = bpsc::Compress(img, {}, bpsc::EncodeConfig{});
    benchmark::DoNotOptimize(bpsc::Decompress(c.container));
  }
  state.SetItemsProcessed(state.iterations() * img.size());
}

BENCHMARK(BM_SlicePlanesSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_SlicePlanesParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_PackRangeSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_PackRangeParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_HistogramSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_HistogramParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_SquaredErrorSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_SquaredErrorParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_SsimSerial)->Arg(256);
BENCHMARK(BM_SsimParallel)->Arg(256);
BENCHMARK(BM_CompressRoundTrip)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
