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

// Binary portable graymap (P5, maxval 255) and whole-file I/O.

#ifndef BPSC_PGM_H_
#define BPSC_PGM_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bpsc/bitplane.h"

namespace bpsc {

// Accepts '#' comments and any whitespace between header tokens. Throws
// kFormat for a wrong magic, a malformed header or maxval != 255, and
// kTruncated when the raster is short. Trailing bytes are ignored.
Image ReadPgm(std::span<const uint8_t> bytes);

// "P5\n<width> <height>\n255\n" followed by the raster.
std::vector<uint8_t> WritePgm(const Image& image);

// Throw kIo on failure.
std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes);

}  // namespace bpsc

#endif  // BPSC_PGM_H_
