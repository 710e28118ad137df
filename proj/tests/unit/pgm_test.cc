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

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "bpsc/status.h"

namespace bpsc {
namespace {

std::vector<uint8_t> Bytes(const std::string& s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

ErrorCode CodeOf(const std::vector<uint8_t>& bytes) {
  try {
    ReadPgm(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted";
  return ErrorCode::kInvalidArgument;
}

TEST(Pgm, OnePixelRoundTrip) {
  const Image img = Image::Filled(1, 1, 42);
  const auto bytes = WritePgm(img);
  EXPECT_EQ(bytes, Bytes(std::string("P5\n1 1\n255\n") + '\x2a'));
  EXPECT_EQ(ReadPgm(bytes), img);
}

TEST(Pgm, CommentsAndWhitespace) {
  const Image img = ReadPgm(Bytes("P5 # a comment\n2\t# more\n 1\n255\nAB"));
  EXPECT_EQ(img, Image::Create(2, 1, {'A', 'B'}));
}

TEST(Pgm, Errors) {
  EXPECT_EQ(CodeOf(Bytes("P2\n1 1\n255\n0")), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf(Bytes("P5\n1 1\n65535\n00")), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf(Bytes("P5\n0 1\n255\n")), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf(Bytes("P5\nx 1\n255\n0")), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf(Bytes("P5\n3 3\n255\n01234")), ErrorCode::kTruncated);
  EXPECT_EQ(CodeOf(Bytes("")), ErrorCode::kFormat);
}

TEST(Pgm, FileIo) {
  const auto path =
      std::filesystem::temp_directory_path() / "bpsc_pgm_test.pgm";
  const Image img = Image::Create(3, 2, {0, 1, 2, 253, 254, 255});
  WriteFileBytes(path, WritePgm(img));
  EXPECT_EQ(ReadPgm(ReadFileBytes(path)), img);
  std::filesystem::remove(path);
  try {
    ReadFileBytes(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace bpsc
