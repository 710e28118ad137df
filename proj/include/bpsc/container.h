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

// On-disk container: a fixed little-endian header followed by the sidecar,
// the global stream and the local stream, in that order.
//
//   offset  size  field
//        0     4  magic "BPSC"
//        4     1  version (1)
//        5     4  width
//        9     4  height
//       13     1  slicing index s (1..8)
//       14     2  beta * 10000
//       16     1  autoregressive model id
//       17     1  latent model id
//       18     1  patch size
//       19     1  block size
//       20     2  sigma_x * 256
//       22     1  initial-bits policy
//       23     8  seed
//       31     8  message bit length L
//       39    4s  segment lengths L_1..L_s
//    39+4s     4  sidecar byte length
//    43+4s     4  global stream byte length
//    47+4s     4  initial bits taken from the local stream
//    51+4s     4  local stream byte length
//    55+4s     4  CRC-32 of all preceding header bytes and the payload

#ifndef BPSC_CONTAINER_H_
#define BPSC_CONTAINER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bpsc {

inline constexpr std::array<uint8_t, 4> kContainerMagic = {'B', 'P', 'S', 'C'};
inline constexpr uint8_t kContainerVersion = 1;

struct ContainerHeader {
  uint8_t version = kContainerVersion;
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t slicing_index = 1;
  uint16_t beta_q = 0;
  uint8_t ar_model_id = 0;
  uint8_t lvm_model_id = 0;
  uint8_t patch_size = 0;
  uint8_t block_size = 0;
  uint16_t sigma_x_q = 0;
  uint8_t policy = 0;
  uint64_t seed = 0;
  uint64_t message_bits = 0;
  std::vector<uint32_t> segment_lengths;
  uint32_t sidecar_bytes = 0;
  uint32_t global_bytes = 0;
  uint32_t local_tail_bits = 0;
  uint32_t local_bytes = 0;

  // Header size in bytes including the CRC field.
  size_t EncodedSize() const { return HeaderSize(slicing_index); }
  static size_t HeaderSize(int slicing_index) { return 59 + 4 * slicing_index; }

  bool operator==(const ContainerHeader&) const = default;
};

struct Container {
  ContainerHeader header;
  std::vector<uint8_t> sidecar;
  std::vector<uint8_t> global_stream;
  std::vector<uint8_t> local_stream;

  bool operator==(const Container&) const = default;
};

// Serializes the container. The stored length fields must match the payload
// vectors and the segment count must equal s; otherwise kLengthMismatch.
std::vector<uint8_t> WriteContainer(const Container& container);

// Parses and validates a container. Errors carry the byte offset of the
// offending field: kBadMagic, kBadVersion, kTruncated (buffer ends early),
// kLengthMismatch (trailing bytes or inconsistent lengths), kFormat (a field
// outside its range) and kChecksumMismatch.
Container ReadContainer(std::span<const uint8_t> bytes);

// Header fields only; the CRC is not checked. Same errors as ReadContainer
// apart from kChecksumMismatch.
ContainerHeader ReadContainerHeader(std::span<const uint8_t> bytes);

// CRC-32 (IEEE 802.3), as used by the container.
uint32_t Crc32(std::span<const uint8_t> bytes, uint32_t crc = 0);

}  // namespace bpsc

#endif  // BPSC_CONTAINER_H_
