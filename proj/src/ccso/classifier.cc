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

#include "ccso/classifier.h"

#include <algorithm>
#include <string>

#include "ccso/error.h"

namespace ccso {

const FilterShape& GetFilterShape(int shape_idx) {
  if (shape_idx < 0 || shape_idx >= kNumFilterShapes) {
    throw Error(ErrorCode::kConfig,
                "filter shape index " + std::to_string(shape_idx) +
                    " outside [0, 5]");
  }
  return kFilterShapes[shape_idx];
}

int QuantStepFromIndex(int quant_step_idx) {
  if (quant_step_idx < 0 || quant_step_idx >= kNumQuantSteps) {
    throw Error(ErrorCode::kConfig,
                "quant step index " + std::to_string(quant_step_idx) +
                    " outside [0, 3]");
  }
  return 8 << quant_step_idx;
}

void ClassifierConfig::Validate() const {
  if (!IsSupportedBitDepth(bit_depth)) {
    throw Error(ErrorCode::kConfig,
                "unsupported bit depth " + std::to_string(bit_depth));
  }
  const int max_log2 = bo_only ? kMaxBandLog2BoOnly : kMaxBandLog2Combined;
  if (max_band_log2 < 0 || max_band_log2 > max_log2) {
    throw Error(ErrorCode::kConfig,
                "max_band_log2 " + std::to_string(max_band_log2) +
                    " outside [0, " + std::to_string(max_log2) + "]");
  }
  if (bo_only) return;
  QuantStepFromIndex(quant_step_idx);
  GetFilterShape(shape_idx);
  if (edge_clf != EdgeClf::kThreeLevel && edge_clf != EdgeClf::kTwoLevel) {
    throw Error(ErrorCode::kConfig, "invalid edge classifier");
  }
}

bool IsReachableClass(int packed, const ClassifierConfig& cfg) {
  if (packed < 0 || packed >= cfg.lut_size()) return false;
  const int eo0 = (packed >> 2) & 3;
  const int eo1 = packed & 3;
  return eo0 < cfg.intervals() && eo1 < cfg.intervals();
}

namespace {

// Classifies one target row. |center|, |above| and |below| are luma rows
// (above/below are the rows of p0 and p1). |luma_x| maps target column to
// luma column; |col0| and |col1| map target column to the clamped tap
// columns.
void ClassifyRow(std::span<const uint16_t> center,
                 std::span<const uint16_t> row_p0,
                 std::span<const uint16_t> row_p1,
                 std::span<const int> luma_x, std::span<const int> col_p0,
                 std::span<const int> col_p1, const ClassifierConfig& cfg,
                 std::span<uint16_t> out) {
  const int band_shift = cfg.bit_depth - cfg.max_band_log2;
  if (cfg.bo_only) {
    for (size_t x = 0; x < out.size(); ++x) {
      out[x] = static_cast<uint16_t>((center[luma_x[x]] >> band_shift) << 4);
    }
    return;
  }
  const int t = cfg.threshold();
  const EdgeClf clf = cfg.edge_clf;
  for (size_t x = 0; x < out.size(); ++x) {
    const int rl = center[luma_x[x]];
    const int m0 = row_p0[col_p0[x]] - rl;
    const int m1 = row_p1[col_p1[x]] - rl;
    out[x] = static_cast<uint16_t>(PackClass(
        rl >> band_shift, EoIndex(m0, t, clf), EoIndex(m1, t, clf)));
  }
}

}  // namespace

ClassMap ClassifyPlane(const Frame& frame, PlaneId target,
                       const ClassifierConfig& cfg) {
  cfg.Validate();
  if (cfg.bit_depth != frame.bit_depth()) {
    throw Error(ErrorCode::kConfig, "classifier bit depth differs from frame");
  }
  const Plane& luma = frame.plane(PlaneId::kY);
  const Plane& out_plane = frame.plane(target);
  const int shift = Subsampling(target);
  ClassMap map(out_plane.width(), out_plane.height());

  const FilterShape& shape = GetFilterShape(cfg.bo_only ? 0 : cfg.shape_idx);
  const TapOffset p0 = shape.p0;
  const TapOffset p1 = shape.p1();

  const int w = out_plane.width();
  std::vector<int> luma_x(w), col_p0(w), col_p1(w);
  for (int x = 0; x < w; ++x) {
    const int lx = std::min(x << shift, luma.width() - 1);
    luma_x[x] = lx;
    col_p0[x] = std::clamp(lx + p0.dx, 0, luma.width() - 1);
    col_p1[x] = std::clamp(lx + p1.dx, 0, luma.width() - 1);
  }
  for (int y = 0; y < out_plane.height(); ++y) {
    const int ly = std::min(y << shift, luma.height() - 1);
    const int y0 = std::clamp(ly + p0.dy, 0, luma.height() - 1);
    const int y1 = std::clamp(ly + p1.dy, 0, luma.height() - 1);
    ClassifyRow(luma.row(ly), luma.row(y0), luma.row(y1), luma_x, col_p0,
                col_p1, cfg, map.row(y));
  }
  return map;
}

}  // namespace ccso
