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

#include "ccso/filter.h"

#include <algorithm>
#include <cassert>
#include <string>

#include "ccso/error.h"

namespace ccso {

int AlphabetIndex(int offset) {
  for (size_t i = 0; i < kOffsetAlphabet.size(); ++i) {
    if (kOffsetAlphabet[i] == offset) return static_cast<int>(i);
  }
  return -1;
}

OffsetLut::OffsetLut(int max_band_log2)
    : max_band_log2_(max_band_log2),
      entries_(static_cast<size_t>(1) << (max_band_log2 + 4), 0) {
  if (max_band_log2 < 0 || max_band_log2 > kMaxBandLog2BoOnly) {
    throw Error(ErrorCode::kConfig, "max_band_log2 outside [0, 7]");
  }
}

void OffsetLut::set(int packed, int offset) {
  if (packed < 0 || packed >= size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "LUT index " + std::to_string(packed) + " out of range");
  }
  if (AlphabetIndex(offset) < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "offset " + std::to_string(offset) + " not in the alphabet");
  }
  entries_[packed] = static_cast<int8_t>(offset);
}

bool OffsetLut::all_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](int8_t v) { return v == 0; });
}

void ValidateLut(const OffsetLut& lut, const ClassifierConfig& cfg) {
  if (lut.size() != cfg.lut_size()) {
    throw Error(ErrorCode::kConfig,
                "LUT has " + std::to_string(lut.size()) + " entries, expected " +
                    std::to_string(cfg.lut_size()));
  }
  for (int i = 0; i < lut.size(); ++i) {
    if (AlphabetIndex(lut[i]) < 0) {
      throw Error(ErrorCode::kConfig, "LUT entry outside the alphabet");
    }
    if (lut[i] != 0 && !IsReachableClass(i, cfg)) {
      throw Error(ErrorCode::kConfig,
                  "non-zero LUT entry at unreachable class " +
                      std::to_string(i));
    }
  }
}

FilterUnitGrid::FilterUnitGrid(int luma_width, int luma_height, PlaneId plane,
                               bool enabled)
    : plane_(plane),
      plane_width_(PlaneWidth(luma_width, plane)),
      plane_height_(PlaneHeight(luma_height, plane)),
      unit_size_(kUnitSizeLuma >> Subsampling(plane)),
      rows_(UnitsAlong(luma_height)),
      cols_(UnitsAlong(luma_width)),
      flags_(static_cast<size_t>(rows_) * cols_, enabled ? 1 : 0) {
  if (luma_width <= 0 || luma_height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "unit grid needs a non-empty frame");
  }
}

void FilterUnitGrid::SetAll(bool on) {
  std::fill(flags_.begin(), flags_.end(), on ? 1 : 0);
}

int FilterUnitGrid::enabled_count() const {
  return static_cast<int>(std::count(flags_.begin(), flags_.end(), 1));
}

UnitRect FilterUnitGrid::Bounds(int unit_row, int unit_col) const {
  if (unit_row < 0 || unit_row >= rows_ || unit_col < 0 || unit_col >= cols_) {
    throw Error(ErrorCode::kInvalidArgument,
                "unit (" + std::to_string(unit_row) + ", " +
                    std::to_string(unit_col) + ") outside the " +
                    std::to_string(rows_) + "x" + std::to_string(cols_) +
                    " grid");
  }
  UnitRect r;
  r.row_begin = unit_row * unit_size_;
  r.row_end = std::min(r.row_begin + unit_size_, plane_height_);
  r.col_begin = unit_col * unit_size_;
  r.col_end = std::min(r.col_begin + unit_size_, plane_width_);
  return r;
}

UnitRect UnitBounds(const FilterUnitGrid& units, int unit_row, int unit_col) {
  return units.Bounds(unit_row, unit_col);
}

namespace {

void CheckFilterInputs(const Plane& target, const ClassMap& class_map,
                       const OffsetLut& lut, const FilterUnitGrid& units,
                       int bit_depth) {
  if (class_map.width() != target.width() ||
      class_map.height() != target.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "class map is " + std::to_string(class_map.width()) + "x" +
                    std::to_string(class_map.height()) + ", plane is " +
                    std::to_string(target.width()) + "x" +
                    std::to_string(target.height()));
  }
  if (units.plane_width() != target.width() ||
      units.plane_height() != target.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "filter unit grid does not cover the target plane");
  }
  if (lut.empty()) throw Error(ErrorCode::kConfig, "empty LUT");
  if (!IsSupportedBitDepth(bit_depth)) {
    throw Error(ErrorCode::kConfig, "unsupported bit depth");
  }
}

}  // namespace

Plane ApplyCcso(const Plane& target, const ClassMap& class_map,
                const OffsetLut& lut, const FilterUnitGrid& units,
                int bit_depth) {
  CheckFilterInputs(target, class_map, lut, units, bit_depth);
  Plane out = target;
  const int unit = units.unit_size();
  for (int y = 0; y < target.height(); ++y) {
    for (int x = 0; x < target.width(); ++x) {
      if (!units.enabled(y / unit, x / unit)) continue;
      const int cls = class_map.at(y, x);
      assert(cls < lut.size());
      out.set(y, x, ClipPixel(target.at(y, x) + lut[cls], bit_depth));
    }
  }
  return out;
}

namespace internal {

CompactLut MakeCompactLut(const OffsetLut& lut) {
  CompactLut compact;
  if (lut.size() <= 128) {
    std::copy(lut.entries().begin(), lut.entries().end(),
              compact.table.begin());
    compact.shift = 0;
    compact.num_tables = (lut.size() + 15) / 16;
    return compact;
  }
  // Band-only tables beyond 8 bands: one entry per band at stride 16.
  compact.shift = 4;
  const int bands = lut.size() >> 4;
  for (int i = 0; i < lut.size(); ++i) {
    if ((i & 15) != 0 && lut[i] != 0) {
      throw Error(ErrorCode::kConfig,
                  "band-only LUT has a non-zero entry off the band stride");
    }
  }
  for (int b = 0; b < bands; ++b) compact.table[b] = lut[b << 4];
  compact.num_tables = (bands + 15) / 16;
  return compact;
}

void ApplySpanPortable(const uint16_t* in, const uint16_t* classes,
                       uint16_t* out, int count, const CompactLut& lut,
                       int max_value) {
  constexpr int kBlock = 16;
  int x = 0;
  for (; x + kBlock <= count; x += kBlock) {
    int16_t offsets[kBlock];
    for (int i = 0; i < kBlock; ++i) {
      const int slot = classes[x + i] >> lut.shift;
      offsets[i] = slot < 128 ? lut.table[slot] : 0;
    }
    for (int i = 0; i < kBlock; ++i) {
      const int v = in[x + i] + offsets[i];
      out[x + i] = static_cast<uint16_t>(v < 0 ? 0 : (v > max_value ? max_value : v));
    }
  }
  for (; x < count; ++x) {
    const int slot = classes[x] >> lut.shift;
    const int v = in[x] + (slot < 128 ? lut.table[slot] : 0);
    out[x] = static_cast<uint16_t>(std::clamp(v, 0, max_value));
  }
}

}  // namespace internal

bool Avx2Available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool available = __builtin_cpu_supports("avx2");
  return available;
#else
  return false;
#endif
}

Plane ApplyCcsoBatch(const Plane& target, const ClassMap& class_map,
                     const OffsetLut& lut, const FilterUnitGrid& units,
                     int bit_depth, BatchKernel kernel) {
  CheckFilterInputs(target, class_map, lut, units, bit_depth);
  if (kernel == BatchKernel::kAuto) {
    kernel = Avx2Available() ? BatchKernel::kAvx2 : BatchKernel::kPortable;
  }
  if (kernel == BatchKernel::kAvx2 && !Avx2Available()) {
    throw Error(ErrorCode::kInvalidArgument, "AVX2 kernel not supported here");
  }
  const internal::CompactLut compact = internal::MakeCompactLut(lut);
  const auto span_fn = kernel == BatchKernel::kAvx2
                           ? internal::ApplySpanAvx2
                           : internal::ApplySpanPortable;
  const int max_value = MaxSampleValue(bit_depth);

  Plane out = target;
  for (int ur = 0; ur < units.rows(); ++ur) {
    for (int uc = 0; uc < units.cols(); ++uc) {
      if (!units.enabled(ur, uc)) continue;
      const UnitRect r = units.Bounds(ur, uc);
      const int count = r.col_end - r.col_begin;
      for (int y = r.row_begin; y < r.row_end; ++y) {
        span_fn(target.row(y).data() + r.col_begin,
                class_map.row(y).data() + r.col_begin,
                out.row(y).data() + r.col_begin, count, compact, max_value);
      }
    }
  }
  return out;
}

}  // namespace ccso
