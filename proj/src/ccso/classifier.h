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

#ifndef CCSO_CLASSIFIER_H_
#define CCSO_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ccso/frame.h"

namespace ccso {

struct TapOffset {
  int dy;
  int dx;

  constexpr TapOffset operator-() const { return {-dy, -dx}; }
  bool operator==(const TapOffset&) const = default;
};

// Two edge taps placed point-symmetrically around the center luma sample.
struct FilterShape {
  int index;
  TapOffset p0;

  constexpr TapOffset p1() const { return -p0; }
};

inline constexpr int kNumFilterShapes = 6;

// Shapes 0-3 use adjacent taps, 4-5 non-adjacent. All taps stay within one
// row above and one row below the center sample. Format constant.
inline constexpr std::array<FilterShape, kNumFilterShapes> kFilterShapes = {{
    {0, {0, -1}},
    {1, {-1, 0}},
    {2, {-1, -1}},
    {3, {-1, 1}},
    {4, {0, -3}},
    {5, {-1, -3}},
}};

const FilterShape& GetFilterShape(int shape_idx);

enum class EdgeClf : uint8_t {
  kThreeLevel = 0,  // edge_clf0: {m < -T, |m| <= T, m > T}
  kTwoLevel = 1,    // edge_clf1: {m < -T, m >= -T}
};

constexpr int IntervalCount(EdgeClf clf) {
  return clf == EdgeClf::kThreeLevel ? 3 : 2;
}

inline constexpr int kNumQuantSteps = 4;

// quant_step_idx = log2(T) - 3, T in {8, 16, 32, 64}.
int QuantStepFromIndex(int quant_step_idx);

inline constexpr int kMaxBandLog2BoOnly = 7;
inline constexpr int kMaxBandLog2Combined = 3;

struct ClassifierConfig {
  bool bo_only = false;
  int max_band_log2 = 0;
  int quant_step_idx = 0;
  int shape_idx = 0;
  EdgeClf edge_clf = EdgeClf::kThreeLevel;
  int bit_depth = 8;

  void Validate() const;

  int num_bands() const { return 1 << max_band_log2; }
  int intervals() const { return bo_only ? 1 : IntervalCount(edge_clf); }
  int threshold() const { return QuantStepFromIndex(quant_step_idx); }
  // Packed LUT stride: N_band << 4.
  int lut_size() const { return num_bands() << 4; }

  bool operator==(const ClassifierConfig&) const = default;
};

constexpr int BoIndex(int luma, int bit_depth, int max_band_log2) {
  return luma >> (bit_depth - max_band_log2);
}

constexpr int EoIndex(int delta, int threshold, EdgeClf clf) {
  if (delta < -threshold) return 0;
  if (clf == EdgeClf::kTwoLevel || delta <= threshold) return 1;
  return 2;
}

constexpr int PackClass(int bo_idx, int eo_idx0, int eo_idx1) {
  return (bo_idx << 4) + (eo_idx0 << 2) + eo_idx1;
}

// True when |packed| can be produced by some sample under |cfg|.
bool IsReachableClass(int packed, const ClassifierConfig& cfg);

// Dense per-sample class indices for one target plane.
class ClassMap {
 public:
  ClassMap() = default;
  ClassMap(int width, int height)
      : width_(width),
        height_(height),
        indices_(static_cast<size_t>(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }

  uint16_t at(int y, int x) const {
    return indices_[static_cast<size_t>(y) * width_ + x];
  }
  std::span<const uint16_t> row(int y) const {
    return {indices_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }
  std::span<uint16_t> row(int y) {
    return {indices_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }
  std::span<const uint16_t> indices() const { return indices_; }

  bool operator==(const ClassMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint16_t> indices_;
};

// Classifies every sample of |target| from the luma plane of |frame|. For
// chroma targets the center sample is the co-located luma sample and the
// taps move on the luma grid around it. Out-of-frame taps are replicated.
ClassMap ClassifyPlane(const Frame& frame, PlaneId target,
                       const ClassifierConfig& cfg);

}  // namespace ccso

#endif  // CCSO_CLASSIFIER_H_
