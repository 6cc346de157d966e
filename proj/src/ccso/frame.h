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

#ifndef CCSO_FRAME_H_
#define CCSO_FRAME_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ccso {

enum class PlaneId : uint8_t { kY = 0, kCb = 1, kCr = 2 };

inline constexpr int kNumPlanes = 3;
inline constexpr std::array<PlaneId, kNumPlanes> kAllPlanes = {
    PlaneId::kY, PlaneId::kCb, PlaneId::kCr};

constexpr int PlaneIndex(PlaneId plane) { return static_cast<int>(plane); }

// log2 of the horizontal and vertical subsampling factor (4:2:0 only).
constexpr int Subsampling(PlaneId plane) {
  return plane == PlaneId::kY ? 0 : 1;
}

std::string_view PlaneName(PlaneId plane);

constexpr bool IsSupportedBitDepth(int bit_depth) {
  return bit_depth == 8 || bit_depth == 10;
}

constexpr int MaxSampleValue(int bit_depth) { return (1 << bit_depth) - 1; }

constexpr uint16_t ClipPixel(int value, int bit_depth) {
  return static_cast<uint16_t>(
      std::clamp(value, 0, MaxSampleValue(bit_depth)));
}

class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, uint16_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return samples_.size(); }

  uint16_t at(int y, int x) const { return samples_[Offset(y, x)]; }
  void set(int y, int x, uint16_t value) { samples_[Offset(y, x)] = value; }

  // Coordinates are clamped into the plane independently per axis.
  uint16_t clamped(int y, int x) const {
    return at(std::clamp(y, 0, height_ - 1), std::clamp(x, 0, width_ - 1));
  }

  std::span<const uint16_t> row(int y) const {
    return {samples_.data() + Offset(y, 0), static_cast<size_t>(width_)};
  }
  std::span<uint16_t> row(int y) {
    return {samples_.data() + Offset(y, 0), static_cast<size_t>(width_)};
  }
  std::span<const uint16_t> samples() const { return samples_; }
  std::span<uint16_t> samples() { return samples_; }

  bool operator==(const Plane&) const = default;

 private:
  size_t Offset(int y, int x) const {
    return static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint16_t> samples_;
};

// Planar 4:2:0 frame. Chroma planes are ceil(width / 2) x ceil(height / 2).
class Frame {
 public:
  Frame(int width, int height, int bit_depth);

  int width() const { return width_; }
  int height() const { return height_; }
  int bit_depth() const { return bit_depth_; }
  int max_value() const { return MaxSampleValue(bit_depth_); }

  const Plane& plane(PlaneId id) const { return planes_[PlaneIndex(id)]; }
  Plane& plane(PlaneId id) { return planes_[PlaneIndex(id)]; }

  uint16_t sample_clamped(PlaneId id, int y, int x) const {
    return plane(id).clamped(y, x);
  }

  bool SameGeometry(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           bit_depth_ == other.bit_depth_;
  }

  // Throws if any sample exceeds the bit-depth range.
  void ValidateSamples() const;

  bool operator==(const Frame&) const = default;

 private:
  int width_;
  int height_;
  int bit_depth_;
  std::array<Plane, kNumPlanes> planes_;
};

int PlaneWidth(int luma_width, PlaneId plane);
int PlaneHeight(int luma_height, PlaneId plane);

// Sum of squared sample differences; throws on a dimension mismatch.
uint64_t PlaneSse(const Plane& a, const Plane& b);

// Top-left luma sample of the 2x2 cluster covering chroma sample
// (chroma_y, chroma_x). Throws on coordinates outside the chroma plane.
uint16_t ColocatedLuma(const Frame& frame, int chroma_y, int chroma_x);

}  // namespace ccso

#endif  // CCSO_FRAME_H_
