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

#include "bpsc/container.h"

#include <zlib.h>

#include <algorithm>
#include <string>

#include "bpsc/status.h"

namespace bpsc {
namespace {

constexpr size_t kVersionOffset = 4;
constexpr size_t kSlicingOffset = 13;
constexpr size_t kPolicyOffset = 22;
constexpr size_t kSegmentsOffset = 39;

class Writer {
 public:
  explicit Writer(std::vector<uint8_t>& out) : out_(out) {}
  template <typename T>
  void Put(T v) {
    for (size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<uint8_t>(static_cast<uint64_t>(v) >> (8 * i)));
    }
  }

 private:
  std::vector<uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}
  template <typename T>
  T Get() {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw Error(ErrorCode::kTruncated, "container header ends early",
                  bytes_.size());
    }
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      v |= uint64_t{bytes_[pos_ + i]} << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  size_t pos() const { return pos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

void CheckMagic(std::span<const uint8_t> bytes) {
  const size_t n = std::min(bytes.size(), kContainerMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + n, kContainerMagic.begin())) {
    throw Error(ErrorCode::kBadMagic, "not a BPSC container", 0);
  }
  if (n < kContainerMagic.size()) {
    throw Error(ErrorCode::kTruncated, "container ends inside the magic",
                bytes.size());
  }
}

struct Parsed {
  ContainerHeader header;
  size_t header_size = 0;
  uint32_t stored_crc = 0;
};

Parsed ParseHeader(std::span<const uint8_t> bytes) {
  CheckMagic(bytes);
  Reader r(bytes.subspan(kContainerMagic.size()));
  Parsed p;
  ContainerHeader& h = p.header;
  h.version = r.Get<uint8_t>();
  if (h.version != kContainerVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported container version " + std::to_string(h.version),
                kVersionOffset);
  }
  h.width = r.Get<uint32_t>();
  h.height = r.Get<uint32_t>();
  h.slicing_index = r.Get<uint8_t>();
  if (h.slicing_index < 1 || h.slicing_index > 8) {
    throw Error(ErrorCode::kFormat,
                "slicing index " + std::to_string(h.slicing_index) +
                    " outside 1..8",
                kSlicingOffset);
  }
  h.beta_q = r.Get<uint16_t>();
  h.ar_model_id = r.Get<uint8_t>();
  h.lvm_model_id = r.Get<uint8_t>();
  h.patch_size = r.Get<uint8_t>();
  h.block_size = r.Get<uint8_t>();
  h.sigma_x_q = r.Get<uint16_t>();
  h.policy = r.Get<uint8_t>();
  h.seed = r.Get<uint64_t>();
  h.message_bits = r.Get<uint64_t>();
  h.segment_lengths.resize(h.slicing_index);
  for (uint32_t& len : h.segment_lengths) len = r.Get<uint32_t>();
  h.sidecar_bytes = r.Get<uint32_t>();
  h.global_bytes = r.Get<uint32_t>();
  h.local_tail_bits = r.Get<uint32_t>();
  h.local_bytes = r.Get<uint32_t>();
  p.stored_crc = r.Get<uint32_t>();
  p.header_size = kContainerMagic.size() + r.pos();

  const uint64_t expected = p.header_size + uint64_t{h.sidecar_bytes} +
                            h.global_bytes + h.local_bytes;
  if (bytes.size() < expected) {
    throw Error(ErrorCode::kTruncated,
                "container payload ends early, expected " +
                    std::to_string(expected) + " bytes",
                bytes.size());
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::kLengthMismatch, "trailing bytes after payload",
                expected);
  }
  return p;
}

void ValidateFields(const ContainerHeader& h) {
  if (h.width == 0 || h.height == 0) {
    throw Error(ErrorCode::kFormat, "zero image dimension", 5);
  }
  if (h.beta_q > 10000) {
    throw Error(ErrorCode::kFormat, "beta above 1", 14);
  }
  if (h.policy > 1) {
    throw Error(ErrorCode::kFormat,
                "unknown initial-bits policy " + std::to_string(h.policy),
                kPolicyOffset);
  }
  const uint64_t capacity = uint64_t{h.width} * h.height;
  uint64_t sum = 0;
  for (size_t i = 0; i < h.segment_lengths.size(); ++i) {
    if (h.segment_lengths[i] > capacity) {
      throw Error(ErrorCode::kFormat, "segment longer than a plane",
                  kSegmentsOffset + 4 * i);
    }
    sum += h.segment_lengths[i];
  }
  const size_t after_segments = kSegmentsOffset + 4 * h.segment_lengths.size();
  if (sum != h.message_bits) {
    throw Error(ErrorCode::kLengthMismatch,
                "segment lengths do not add up to the message length",
                kSegmentsOffset);
  }
  if (h.sidecar_bytes != (h.message_bits + 7) / 8) {
    throw Error(ErrorCode::kLengthMismatch,
                "sidecar length does not match the message length",
                after_segments);
  }
  if (h.local_tail_bits % 32 != 0) {
    throw Error(ErrorCode::kFormat, "initial-bit count not a whole word",
                after_segments + 8);
  }
}

uint32_t PayloadCrc(std::span<const uint8_t> header_before_crc,
                    std::span<const uint8_t> payload) {
  return Crc32(payload, Crc32(header_before_crc));
}

}  // namespace

uint32_t Crc32(std::span<const uint8_t> bytes, uint32_t crc) {
  // zlib takes a uInt length; feed large buffers in chunks.
  uLong c = crc;
  size_t pos = 0;
  while (pos < bytes.size()) {
    const size_t n = std::min<size_t>(bytes.size() - pos, 1u << 30);
    c = crc32(c, bytes.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<uint32_t>(c);
}

std::vector<uint8_t> WriteContainer(const Container& c) {
  const ContainerHeader& h = c.header;
  if (h.segment_lengths.size() != h.slicing_index ||
      h.sidecar_bytes != c.sidecar.size() ||
      h.global_bytes != c.global_stream.size() ||
      h.local_bytes != c.local_stream.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "header lengths do not match the payload");
  }
  std::vector<uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
  out.reserve(h.EncodedSize() + c.sidecar.size() + c.global_stream.size() +
              c.local_stream.size());
  Writer w(out);
  w.Put(h.version);
  w.Put(h.width);
  w.Put(h.height);
  w.Put(h.slicing_index);
  w.Put(h.beta_q);
  w.Put(h.ar_model_id);
  w.Put(h.lvm_model_id);
  w.Put(h.patch_size);
  w.Put(h.block_size);
  w.Put(h.sigma_x_q);
  w.Put(h.policy);
  w.Put(h.seed);
  w.Put(h.message_bits);
  for (uint32_t len : h.segment_lengths) w.Put(len);
  w.Put(h.sidecar_bytes);
  w.Put(h.global_bytes);
  w.Put(h.local_tail_bits);
  w.Put(h.local_bytes);
  const size_t crc_offset = out.size();
  out.insert(out.end(), c.sidecar.begin(), c.sidecar.end());
  out.insert(out.end(), c.global_stream.begin(), c.global_stream.end());
  out.insert(out.end(), c.local_stream.begin(), c.local_stream.end());
  const uint32_t crc =
      PayloadCrc(std::span(out).first(crc_offset),
                 std::span(out).subspan(crc_offset));
  std::vector<uint8_t> crc_bytes;
  Writer(crc_bytes).Put(crc);
  out.insert(out.begin() + crc_offset, crc_bytes.begin(), crc_bytes.end());
  return out;
}

ContainerHeader ReadContainerHeader(std::span<const uint8_t> bytes) {
  Parsed p = ParseHeader(bytes);
  ValidateFields(p.header);
  return p.header;
}

Container ReadContainer(std::span<const uint8_t> bytes) {
  Parsed p = ParseHeader(bytes);
  const size_t crc_offset = p.header_size - 4;
  const uint32_t crc = PayloadCrc(bytes.first(crc_offset),
                                  bytes.subspan(p.header_size));
  if (crc != p.stored_crc) {
    throw Error(ErrorCode::kChecksumMismatch, "container CRC mismatch",
                crc_offset);
  }
  ValidateFields(p.header);
  Container c;
  c.header = p.header;
  auto payload = bytes.subspan(p.header_size);
  const ContainerHeader& h = c.header;
  c.sidecar.assign(payload.begin(), payload.begin() + h.sidecar_bytes);
  payload = payload.subspan(h.sidecar_bytes);
  c.global_stream.assign(payload.begin(), payload.begin() + h.global_bytes);
  payload = payload.subspan(h.global_bytes);
  c.local_stream.assign(payload.begin(), payload.end());
  return c;
}

}  // namespace bpsc
