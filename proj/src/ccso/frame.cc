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

#include "ccso/frame.h"

#include <string>

#include "ccso/error.h"

namespace ccso {

std::string_view PlaneName(PlaneId plane) {
  switch (plane) {
    case PlaneId::kY:
      return "Y";
    case PlaneId::kCb:
      return "Cb";
    case PlaneId::kCr:
      return "Cr";
  }
  return "?";
}

Plane::Plane(int width, int height, uint16_t fill)
    : width_(width),
      height_(height),
      samples_(static_cast<size_t>(width) * height, fill) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "plane dimensions must be positive");
  }
}

int PlaneWidth(int luma_width, PlaneId plane) {
  const int shift = Subsampling(plane);
  return (luma_width + (1 << shift) - 1) >> shift;
}

int PlaneHeight(int luma_height, PlaneId plane) {
  const int shift = Subsampling(plane);
  return (luma_height + (1 << shift) - 1) >> shift;
}

Frame::Frame(int width, int height, int bit_depth)
    : width_(width), height_(height), bit_depth_(bit_depth) {
  if (width <= 0 || height <= 0 || width > 65535 || height > 65535) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame dimensions must be in [1, 65535], got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (!IsSupportedBitDepth(bit_depth)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unsupported bit depth " + std::to_string(bit_depth));
  }
  for (PlaneId id : kAllPlanes) {
    planes_[PlaneIndex(id)] =
        Plane(PlaneWidth(width, id), PlaneHeight(height, id));
  }
}

void Frame::ValidateSamples() const {
  const int max = max_value();
  for (PlaneId id : kAllPlanes) {
    for (uint16_t v : plane(id).samples()) {
      if (v > max) {
        throw Error(ErrorCode::kInput,
                    "sample value " + std::to_string(v) + " exceeds " +
                        std::to_string(bit_depth_) + "-bit range in plane " +
                        std::string(PlaneName(id)));
      }
    }
  }
}

uint64_t PlaneSse(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "planes differ in size");
  }
  uint64_t sse = 0;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (size_t i = 0; i < sa.size(); ++i) {
    const int64_t d = static_cast<int64_t>(sa[i]) - sb[i];
    sse += static_cast<uint64_t>(d * d);
  }
  return sse;
}

uint16_t ColocatedLuma(const Frame& frame, int chroma_y, int chroma_x) {
  const Plane& chroma = frame.plane(PlaneId::kCb);
  if (chroma_y < 0 || chroma_x < 0 || chroma_y >= chroma.height() ||
      chroma_x >= chroma.width()) {
    throw Error(ErrorCode::kInvalidArgument,
                "chroma coordinate (" + std::to_string(chroma_y) + ", " +
                    std::to_string(chroma_x) + ") outside the chroma plane");
  }
  return frame.sample_clamped(PlaneId::kY, chroma_y << 1, chroma_x << 1);
}

}  // namespace ccso
