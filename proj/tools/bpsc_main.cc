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

// bpsc: compress grayscale images with an embedded message.
//
// Exit codes: 0 success, 1 bad arguments or malformed input, 2 message
// exceeds capacity, 3 I/O failure, 4 corrupt container, 5 unknown model id,
// 6 benchmark round-trip failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpsc/container.h"
#include "bpsc/decomposition.h"
#include "bpsc/metrics.h"
#include "bpsc/pgm.h"
#include "bpsc/pipeline.h"
#include "bpsc/status.h"
#include "bpsc/stego.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode {
  kOk = 0,
  kParse = 1,
  kCapacity = 2,
  kIoFailure = 3,
  kCorruption = 4,
  kUnknownModelId = 5,
  kBenchFailure = 6,
};

// Container-level codes count as corruption when decoding and as a parse
// failure when only the header is inspected.
int ExitCodeFor(const bpsc::Error& e, bool header_only) {
  using bpsc::ErrorCode;
  switch (e.code()) {
    case ErrorCode::kCapacityExceeded:
      return kCapacity;
    case ErrorCode::kIo:
      return kIoFailure;
    case ErrorCode::kUnknownModel:
      return kUnknownModelId;
    case ErrorCode::kBadMagic:
    case ErrorCode::kBadVersion:
    case ErrorCode::kTruncated:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kChecksumMismatch:
    case ErrorCode::kCorruptStream:
    case ErrorCode::kExhausted:
      return header_only ? kParse : kCorruption;
    default:
      return kParse;
  }
}

std::string Fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

bpsc::Image LoadPgm(const fs::path& path) {
  return bpsc::ReadPgm(bpsc::ReadFileBytes(path));
}

struct CompressArgs {
  std::string input, output, message;
  std::optional<uint64_t> message_bits;
  double beta = bpsc::kDefaultBeta;
  uint32_t patch = bpsc::kDefaultPatchSize;
  int ar_model = bpsc::kOrder1PatchModelId;
  int lvm_model = bpsc::kBlockMeanModelId;
  uint64_t seed = 0;
  std::string policy = "local-tail";
};

bpsc::EncodeConfig ConfigFrom(double beta, uint32_t patch, int ar_model,
                              int lvm_model, uint64_t seed,
                              const std::string& policy) {
  bpsc::EncodeConfig config;
  config.beta = beta;
  config.patch_size = patch;
  config.ar_model_id = static_cast<uint8_t>(ar_model);
  config.lvm_model_id = static_cast<uint8_t>(lvm_model);
  config.seed = seed;
  config.policy = policy == "seeded" ? bpsc::InitialBitsPolicy::kSeeded
                                     : bpsc::InitialBitsPolicy::kLocalTail;
  return config;
}

bpsc::Message LoadMessage(const CompressArgs& a) {
  bpsc::Message message;
  if (!a.message.empty()) {
    const std::vector<uint8_t> bytes = bpsc::ReadFileBytes(a.message);
    message = bpsc::MessageFromBytes(bytes,
                                     a.message_bits.value_or(8 * bytes.size()));
  } else if (a.message_bits.value_or(0) != 0) {
    throw bpsc::Error(bpsc::ErrorCode::kInvalidArgument,
                      "--message-bits needs --message");
  }
  return message;
}

void PrintQuality(const bpsc::Image& image, const bpsc::Image& stego,
                  uint64_t message_bits, uint64_t bytes) {
  const bpsc::QualityReport q = bpsc::Evaluate(image, stego, bytes);
  std::cout << " message_bits=" << message_bits << " psnr=" << Fixed(q.psnr, 2)
            << " ssim=" << Fixed(q.ssim, 6)
            << " change_ratio=" << Fixed(q.change_ratio, 6);
}

// Writes the stego image only; nothing is compressed.
int RunEmbed(const CompressArgs& a) {
  const bpsc::Image image = LoadPgm(a.input);
  const bpsc::Message message = LoadMessage(a);
  const int s = bpsc::SelectSlicingIndex(image, a.beta).slicing_index;
  bpsc::PlanSegments(message.length(), s, image.size());
  const bpsc::Image stego = bpsc::RenderStego(image, s, message);
  bpsc::WriteFileBytes(a.output, bpsc::WritePgm(stego));
  std::cout << "s=" << s;
  PrintQuality(image, stego, message.length(), 0);
  std::cout << "\n";
  return kOk;
}

int RunCompress(const CompressArgs& a) {
  const bpsc::Image image = LoadPgm(a.input);
  const bpsc::Message message = LoadMessage(a);
  const bpsc::EncodeConfig config = ConfigFrom(
      a.beta, a.patch, a.ar_model, a.lvm_model, a.seed, a.policy);
  const bpsc::CompressedImage compressed =
      bpsc::Compress(image, message, config);
  const std::vector<uint8_t> bytes =
      bpsc::WriteContainer(compressed.container);
  bpsc::WriteFileBytes(a.output, bytes);

  const int s = compressed.stats.decision.slicing_index;
  std::cout << "s=" << s << " bpp="
            << Fixed(bpsc::Bpp(bytes.size(), image.width, image.height), 4)
            << " bytes=" << bytes.size();
  if (message.length() > 0) {
    PrintQuality(image, bpsc::RenderStego(image, s, message),
                 message.length(), bytes.size());
  }
  std::cout << "\n";
  return kOk;
}

int RunDecompress(const std::string& input, const std::string& output,
                  const std::string& message_out) {
  const std::vector<uint8_t> bytes = bpsc::ReadFileBytes(input);
  const bpsc::Decompressed d = bpsc::Decompress(bytes);
  if (!output.empty()) bpsc::WriteFileBytes(output, bpsc::WritePgm(d.image));
  if (!message_out.empty() && d.message.length() > 0) {
    bpsc::WriteFileBytes(message_out, bpsc::MessageToBytes(d.message));
  }
  std::cout << d.image.width << "x" << d.image.height
            << " message_bits=" << d.message.length() << "\n";
  return kOk;
}

int RunExtract(const std::string& input, const std::string& message_out) {
  const std::vector<uint8_t> bytes = bpsc::ReadFileBytes(input);
  const bpsc::Decompressed d = bpsc::Decompress(bytes);
  bpsc::WriteFileBytes(message_out, bpsc::MessageToBytes(d.message));
  std::cout << "message_bits=" << d.message.length() << "\n";
  return kOk;
}

int RunInspect(const std::string& input) {
  const std::vector<uint8_t> bytes = bpsc::ReadFileBytes(input);
  const bpsc::ContainerHeader h = bpsc::ReadContainerHeader(bytes);
  auto line = [](const char* key, const std::string& value) {
    std::printf("%-16s %s\n", key, value.c_str());
  };
  std::string segments;
  for (uint32_t len : h.segment_lengths) {
    segments += (segments.empty() ? "" : " ") + std::to_string(len);
  }
  line("version", std::to_string(h.version));
  line("width", std::to_string(h.width));
  line("height", std::to_string(h.height));
  line("slicing_index", std::to_string(h.slicing_index));
  line("beta", Fixed(h.beta_q / 10000.0, 4));
  line("ar_model_id", std::to_string(h.ar_model_id));
  line("lvm_model_id", std::to_string(h.lvm_model_id));
  line("patch_size", std::to_string(h.patch_size));
  line("block_size", std::to_string(h.block_size));
  line("sigma_x", Fixed(h.sigma_x_q / 256.0, 4));
  line("policy", h.policy == 0 ? "local-tail" : "seeded");
  line("seed", std::to_string(h.seed));
  line("message_bits", std::to_string(h.message_bits));
  line("segments", segments);
  line("header_bytes", std::to_string(h.EncodedSize()));
  line("sidecar_bytes", std::to_string(h.sidecar_bytes));
  line("global_bytes", std::to_string(h.global_bytes));
  line("local_tail_bits", std::to_string(h.local_tail_bits));
  line("local_bytes", std::to_string(h.local_bytes));
  line("total_bytes", std::to_string(bytes.size()));
  return kOk;
}

struct BenchArgs {
  std::string corpus, report;
  double beta = bpsc::kDefaultBeta;
  uint64_t message_bits = 0;
  int jobs = 1;
  uint64_t seed = 0;
  bool no_verify = false;
  bool no_timing = false;
};

uint64_t Fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic per-file message, clamped to the image's capacity.
bpsc::Message BenchMessage(const std::string& name, uint64_t bits,
                           uint64_t seed) {
  bpsc::Message m;
  m.bits.resize(bits);
  std::mt19937_64 rng(seed ^ Fnv1a(name));
  for (auto& b : m.bits) b = static_cast<uint8_t>(rng() >> 63);
  return m;
}

struct BenchRow {
  std::string csv;
  std::string error;
};

BenchRow BenchOne(const fs::path& path, const BenchArgs& a) {
  using Clock = std::chrono::steady_clock;
  BenchRow row;
  const std::string name = path.filename().string();
  try {
    const bpsc::Image image = LoadPgm(path);
    const int s =
        bpsc::SelectSlicingIndex(image, a.beta).slicing_index;
    const uint64_t capacity = static_cast<uint64_t>(s) * image.size();
    const bpsc::Message message =
        BenchMessage(name, std::min(a.message_bits, capacity), a.seed);
    bpsc::EncodeConfig config;
    config.beta = a.beta;
    config.seed = a.seed;

    const auto t0 = Clock::now();
    const bpsc::CompressedImage c = bpsc::Compress(image, message, config);
    const std::vector<uint8_t> bytes = bpsc::WriteContainer(c.container);
    const auto t1 = Clock::now();
    double decode_ms = 0.0;
    if (!a.no_verify) {
      const auto t2 = Clock::now();
      const bpsc::Decompressed d = bpsc::Decompress(bytes);
      decode_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - t2).count();
      if (!(d.image == image) || !(d.message == message)) {
        row.error = "round-trip mismatch";
        return row;
      }
    }
    double encode_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (a.no_timing) encode_ms = decode_ms = 0.0;

    const bpsc::Image stego = bpsc::RenderStego(image, s, message);
    const bpsc::QualityReport q = bpsc::Evaluate(image, stego, bytes.size());
    const double px = static_cast<double>(image.size());
    const bpsc::EncodeStats& st = c.stats;
    const double local_bpp = 8.0 * st.local_gross_bytes / px;
    const double global_bpp =
        (8.0 * st.global_gross_bytes - 32.0 * st.local_tail_words) / px;
    const double sidecar_bpp = 8.0 * c.container.sidecar.size() / px;

    row.csv = name + "," + std::to_string(image.width) + "," +
              std::to_string(image.height) + "," + std::to_string(s) + "," +
              Fixed(a.beta, 4) + "," + Fixed(q.bpp, 6) + "," +
              Fixed(local_bpp, 6) + "," + Fixed(global_bpp, 6) + "," +
              Fixed(sidecar_bpp, 6) + "," + Fixed(q.psnr, 4) + "," +
              Fixed(q.ssim, 8) + "," + Fixed(q.change_ratio, 8) + "," +
              Fixed(encode_ms, 3) + "," + Fixed(decode_ms, 3);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int RunBench(const BenchArgs& a) {
  if (!fs::is_directory(a.corpus)) {
    throw bpsc::Error(bpsc::ErrorCode::kIo,
                      "corpus is not a directory: " + a.corpus);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows(files.size());
  const int64_t n = static_cast<int64_t>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(a.jobs) if (a.jobs > 1)
  for (int64_t i = 0; i < n; ++i) rows[i] = BenchOne(files[i], a);

  std::ofstream out(a.report, std::ios::trunc);
  if (!out) {
    throw bpsc::Error(bpsc::ErrorCode::kIo, "cannot create " + a.report);
  }
  out << "file,W,H,s,beta,bpp_total,bpp_local,bpp_global,sidecar_bpp,"
         "psnr_stego,ssim_stego,change_ratio,encode_ms,decode_ms\n";
  int failures = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty()) {
      std::cerr << "bpsc bench: " << files[i].filename().string() << ": "
                << rows[i].error << "\n";
      ++failures;
      continue;
    }
    out << rows[i].csv << "\n";
  }
  if (!out.flush()) {
    throw bpsc::Error(bpsc::ErrorCode::kIo, "cannot write " + a.report);
  }
  std::cout << files.size() - failures << " of " << files.size()
            << " files ok\n";
  return failures == 0 ? kOk : kBenchFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossless grayscale compression with an embedded message"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "Compress a P5 image");
  compress->add_option("--input,-i", ca.input, "Input P5 graymap")
      ->required();
  compress->add_option("--output,-o", ca.output, "Output container")
      ->required();
  compress->add_option("--message,-m", ca.message,
                       "Message file to embed (default: none)");
  compress->add_option("--message-bits", ca.message_bits,
                       "Message length in bits (default: 8 x file size)");
  compress->add_option("--beta", ca.beta, "Information ratio for the split")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  compress->add_option("--patch", ca.patch, "Patch size of the local model")
      ->capture_default_str()
      ->check(CLI::Range(1, 255));
  compress->add_option("--ar-model", ca.ar_model, "Autoregressive model id")
      ->capture_default_str()
      ->check(CLI::Range(0, 255));
  compress->add_option("--lvm-model", ca.lvm_model, "Latent model id")
      ->capture_default_str()
      ->check(CLI::Range(0, 255));
  compress->add_option("--seed", ca.seed, "Seed of the auxiliary bit source")
      ->capture_default_str();
  compress->add_option("--policy", ca.policy,
                       "Initial bits: local-tail or seeded")
      ->capture_default_str()
      ->check(CLI::IsMember({"local-tail", "seeded"}));

  CompressArgs ea;
  auto* embed =
      app.add_subcommand("embed", "Write the stego image without compressing");
  embed->add_option("--input,-i", ea.input, "Input P5 graymap")->required();
  embed->add_option("--output,-o", ea.output, "Output stego P5 graymap")
      ->required();
  embed->add_option("--message,-m", ea.message, "Message file to embed")
      ->required();
  embed->add_option("--message-bits", ea.message_bits,
                    "Message length in bits (default: 8 x file size)");
  embed->add_option("--beta", ea.beta, "Information ratio for the split")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));

  std::string d_input, d_output, d_message;
  auto* decompress =
      app.add_subcommand("decompress", "Restore the image and message");
  decompress->add_option("--input,-i", d_input, "Input container")
      ->required();
  decompress->add_option("--output,-o", d_output, "Output P5 graymap")
      ->required();
  decompress->add_option("--message-out", d_message,
                         "Message output file (default: not written)");

  std::string e_input, e_message;
  auto* extract = app.add_subcommand("extract", "Recover only the message");
  extract->add_option("--input,-i", e_input, "Input container")->required();
  extract->add_option("--message-out", e_message, "Message output file")
      ->required();

  std::string i_input;
  auto* inspect =
      app.add_subcommand("inspect", "Print container header fields");
  inspect->add_option("--input,-i", i_input, "Input container")->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Benchmark a corpus of P5 files");
  bench->add_option("--corpus", ba.corpus, "Directory of .pgm files")
      ->required();
  bench->add_option("--report", ba.report, "Output CSV")->required();
  bench->add_option("--beta", ba.beta, "Information ratio for the split")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--message-bits", ba.message_bits,
                    "Bits embedded per file, clamped to capacity")
      ->capture_default_str();
  bench->add_option("--jobs,-j", ba.jobs, "Files processed concurrently")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));
  bench->add_option("--seed", ba.seed, "Seed for messages and initial bits")
      ->capture_default_str();
  bench->add_flag("--no-verify", ba.no_verify,
                  "Skip decoding and round-trip verification");
  bench->add_flag("--no-timing", ba.no_timing,
                  "Report zero timings for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const bool header_only = inspect->parsed();
  try {
    if (compress->parsed()) return RunCompress(ca);
    if (embed->parsed()) return RunEmbed(ea);
    if (decompress->parsed()) return RunDecompress(d_input, d_output, d_message);
    if (extract->parsed()) return RunExtract(e_input, e_message);
    if (inspect->parsed()) return RunInspect(i_input);
    if (bench->parsed()) return RunBench(ba);
  } catch (const bpsc::Error& e) {
    std::cerr << "bpsc: " << bpsc::ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return ExitCodeFor(e, header_only);
  } catch (const std::exception& e) {
    std::cerr << "bpsc: " << e.what() << "\n";
    return kParse;
  }
  return kParse;
}
