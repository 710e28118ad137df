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

#include "bpsc/pgm.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "bpsc/status.h"

namespace bpsc {
namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  // Next unsigned decimal token, skipping whitespace and comments.
  uint64_t Number(const char* what) {
    SkipSpaceAndComments();
    const size_t start = pos_;
    uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) {
        throw Error(ErrorCode::kFormat, std::string(what) + " too large",
                    start);
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw Error(ErrorCode::kFormat, std::string("expected ") + what, pos_);
    }
    return v;
  }

  // The single whitespace byte that ends the header.
  void EndOfHeader() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kFormat, "missing whitespace after maxval", pos_);
    }
    ++pos_;
  }

  size_t pos() const { return pos_; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 2;
};

}  // namespace

Image ReadPgm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCode::kFormat, "not a binary graymap (P5)", 0);
  }
  HeaderScanner scan(bytes);
  const uint64_t width = scan.Number("width");
  const uint64_t height = scan.Number("height");
  const size_t maxval_pos = scan.pos();
  const uint64_t maxval = scan.Number("maxval");
  if (maxval != 255) {
    throw Error(ErrorCode::kFormat,
                "maxval " + std::to_string(maxval) + " unsupported, need 255",
                maxval_pos);
  }
  scan.EndOfHeader();
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kFormat, "zero image dimension", 2);
  }
  const uint64_t n = width * height;
  if (bytes.size() - scan.pos() < n) {
    throw Error(ErrorCode::kTruncated,
                "raster holds " + std::to_string(bytes.size() - scan.pos()) +
                    " of " + std::to_string(n) + " samples",
                bytes.size());
  }
  const auto raster = bytes.subspan(scan.pos(), n);
  return Image::Create(static_cast<uint32_t>(width),
                       static_cast<uint32_t>(height),
                       std::vector<uint8_t>(raster.begin(), raster.end()));
}

std::vector<uint8_t> WritePgm(const Image& image) {
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.samples.begin(), image.samples.end());
  return out;
}

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot create " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

}  // namespace bpsc
