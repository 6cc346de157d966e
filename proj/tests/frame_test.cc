// Copyright 2026 The CCSO Filter Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "ccso/error.h"
#include "ccso/frame.h"
#include "ccso/yuv_io.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ccso {
namespace {

Plane Numbered(int w, int h) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.set(y, x, static_cast<uint16_t>(y * 16 + x));
  }
  return p;
}

TEST(Frame, PlaneDimensionsRoundUp) {
  Frame f(5, 3, 8);
  EXPECT_EQ(f.plane(PlaneId::kY).width(), 5);
  EXPECT_EQ(f.plane(PlaneId::kY).height(), 3);
  EXPECT_EQ(f.plane(PlaneId::kCb).width(), 3);
  EXPECT_EQ(f.plane(PlaneId::kCr).height(), 2);
  EXPECT_EQ(PlaneWidth(1920, PlaneId::kCb), 960);
  EXPECT_EQ(PlaneHeight(1, PlaneId::kCr), 1);
}

TEST(Frame, RejectsBadGeometry) {
  EXPECT_THROW(Frame(0, 4, 8), Error);
  EXPECT_THROW(Frame(4, 4, 9), Error);
  EXPECT_THROW(Frame(70000, 4, 8), Error);
}

TEST(Frame, ClampedAccess) {
  const Plane p = Numbered(4, 4);
  EXPECT_EQ(p.clamped(-1, 2), p.at(0, 2));
  EXPECT_EQ(p.clamped(2, 2), p.at(2, 2));
  EXPECT_EQ(p.clamped(5, 9), p.at(3, 3));
  EXPECT_EQ(p.clamped(-100, -100), p.at(0, 0));
}

TEST(Frame, ClampedAlwaysReturnsAStoredSample) {
  std::mt19937_64 rng(5);
  const Frame f = testing::RandomFrame(7, 5, 10, rng);
  for (PlaneId id : kAllPlanes) {
    const Plane& p = f.plane(id);
    for (int y = -6; y < p.height() + 6; ++y) {
      for (int x = -6; x < p.width() + 6; ++x) {
        const int cy = std::clamp(y, 0, p.height() - 1);
        const int cx = std::clamp(x, 0, p.width() - 1);
        ASSERT_EQ(f.sample_clamped(id, y, x), p.at(cy, cx));
      }
    }
  }
}

TEST(Frame, ColocatedLuma) {
  Frame f(16, 16, 8);
  f.plane(PlaneId::kY) = Numbered(16, 16);
  EXPECT_EQ(ColocatedLuma(f, 0, 0), f.plane(PlaneId::kY).at(0, 0));
  EXPECT_EQ(ColocatedLuma(f, 3, 5), f.plane(PlaneId::kY).at(6, 10));

  Frame odd(5, 5, 8);
  odd.plane(PlaneId::kY) = Numbered(5, 5);
  EXPECT_EQ(ColocatedLuma(odd, 2, 2), odd.plane(PlaneId::kY).at(4, 4));
  EXPECT_THROW(ColocatedLuma(odd, 3, 0), Error);
}

TEST(Frame, ColocatedLumaIsInjective) {
  Frame f(12, 10, 10);
  Plane& y = f.plane(PlaneId::kY);
  for (int r = 0; r < 10; ++r) {
    for (int c = 0; c < 12; ++c) y.set(r, c, static_cast<uint16_t>(r * 12 + c));
  }
  std::vector<bool> seen(120, false);
  for (int cy = 0; cy < 5; ++cy) {
    for (int cx = 0; cx < 6; ++cx) {
      const uint16_t v = ColocatedLuma(f, cy, cx);
      ASSERT_FALSE(seen[v]);
      seen[v] = true;
    }
  }
}

TEST(Frame, ClipPixel) {
  EXPECT_EQ(ClipPixel(-3, 8), 0);
  EXPECT_EQ(ClipPixel(260, 8), 255);
  EXPECT_EQ(ClipPixel(512, 10), 512);
  EXPECT_EQ(ClipPixel(1024, 10), 1023);
  for (int d : {8, 10}) {
    for (int v = 0; v <= MaxSampleValue(d); ++v) ASSERT_EQ(ClipPixel(v, d), v);
  }
}

TEST(Frame, ValidateSamplesRejectsOutOfRange) {
  Frame f(4, 4, 8);
  f.ValidateSamples();
  f.plane(PlaneId::kCr).set(1, 1, 256);
  EXPECT_THROW(f.ValidateSamples(), Error);
}

TEST(Frame, PlaneSse) {
  Plane a(2, 2, 10), b(2, 2, 10);
  b.set(0, 1, 13);
  b.set(1, 0, 7);
  EXPECT_EQ(PlaneSse(a, b), 9u + 9u);
}

class RawIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ccso_frame_test_" + std::to_string(::testing::UnitTest::GetInstance()
                                                     ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const char* name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(RawIo, FrameBytes) {
  EXPECT_EQ(RawFrameBytes(4, 4, 8), 16u + 4u + 4u);
  EXPECT_EQ(RawFrameBytes(5, 3, 10), 2u * (15 + 6 + 6));
}

TEST_F(RawIo, TenBitIsLittleEndian) {
  Frame f(2, 2, 10);
  f.plane(PlaneId::kY).set(0, 0, 0x3a5);
  const std::vector<uint8_t> bytes = EncodeRawFrame(f);
  ASSERT_EQ(bytes.size(), RawFrameBytes(2, 2, 10));
  EXPECT_EQ(bytes[0], 0xa5);
  EXPECT_EQ(bytes[1], 0x03);
  EXPECT_EQ(DecodeRawFrame(bytes, 2, 2, 10), f);
}

TEST_F(RawIo, DecodeRejectsOutOfRangeTenBit) {
  std::vector<uint8_t> bytes(RawFrameBytes(2, 2, 10), 0);
  bytes[1] = 0x04;  // 1024
  EXPECT_THROW(DecodeRawFrame(bytes, 2, 2, 10), Error);
}

TEST_F(RawIo, MultiFrameRoundTrip) {
  std::mt19937_64 rng(9);
  for (int bd : {8, 10}) {
    std::vector<Frame> frames;
    for (int i = 0; i < 3; ++i) frames.push_back(testing::RandomFrame(9, 7, bd, rng));
    WriteRawFrames(Path("a.yuv"), frames);
    RawYuvReader reader(Path("a.yuv"), 9, 7, bd);
    ASSERT_EQ(reader.frame_count(), 3u);
    EXPECT_EQ(reader.Read(2), frames[2]);
    EXPECT_EQ(reader.Read(0), frames[0]);
  }
}

TEST_F(RawIo, SizeMismatchNamesExpectedBytes) {
  {
    std::ofstream out(Path("short.yuv"), std::ios::binary);
    out << "abc";
  }
  try {
    RawYuvReader reader(Path("short.yuv"), 4, 4, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
    EXPECT_NE(std::string(e.what()).find("24"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RawYuvReader(Path("missing.yuv"), 4, 4, 8), Error);
}

TEST_F(RawIo, UnwritableOutput) {
  const Frame f(2, 2, 8);
  try {
    WriteRawFrames(Path("no/such/dir/out.yuv"), std::span<const Frame>(&f, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutput);
  }
}

}  // namespace
}  // namespace ccso
