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

#ifndef CCSO_FILTER_H_
#define CCSO_FILTER_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ccso/classifier.h"
#include "ccso/frame.h"

namespace ccso {

// Offset alphabet in signalling order. The truncated-unary code of an entry
// is its position in this table.
inline constexpr std::array<int8_t, 8> kOffsetAlphabet = {0,  1, -1, 3,
                                                          -3, 7, -7, -10};
inline constexpr int kMaxOffsetMagnitude = 10;

// Position of |offset| in kOffsetAlphabet, or -1.
int AlphabetIndex(int offset);

// Offsets indexed by packed class. Always stored at the full packed stride
// (N_band << 4) so the filter does one unconditional load per sample.
class OffsetLut {
 public:
  OffsetLut() = default;
  explicit OffsetLut(int max_band_log2);

  int max_band_log2() const { return max_band_log2_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  int8_t operator[](int packed) const { return entries_[packed]; }
  // Throws unless |offset| is an alphabet value.
  void set(int packed, int offset);

  std::span<const int8_t> entries() const { return entries_; }
  bool all_zero() const;

  bool operator==(const OffsetLut&) const = default;

 private:
  int max_band_log2_ = 0;
  std::vector<int8_t> entries_;
};

// Throws unless |lut| has the stride of |cfg| and zeros at every packed index
// |cfg| cannot produce.
void ValidateLut(const OffsetLut& lut, const ClassifierConfig& cfg);

inline constexpr int kUnitSizeLuma = 256;

// Half-open sample rectangle in target-plane coordinates.
struct UnitRect {
  int row_begin;
  int row_end;
  int col_begin;
  int col_end;

  bool operator==(const UnitRect&) const = default;
};

// Per-plane grid of non-overlapping filter units. A unit spans 256x256 luma
// samples, i.e. 128x128 chroma samples. Edge units are clipped to the plane.
class FilterUnitGrid {
 public:
  FilterUnitGrid() = default;
  FilterUnitGrid(int luma_width, int luma_height, PlaneId plane,
                 bool enabled = true);

  PlaneId plane() const { return plane_; }
  int plane_width() const { return plane_width_; }
  int plane_height() const { return plane_height_; }
  int unit_size() const { return unit_size_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int count() const { return rows_ * cols_; }

  bool enabled(int unit_row, int unit_col) const {
    return flags_[unit_row * cols_ + unit_col] != 0;
  }
  bool enabled(int unit_index) const { return flags_[unit_index] != 0; }
  void set(int unit_index, bool on) { flags_[unit_index] = on ? 1 : 0; }
  void set(int unit_row, int unit_col, bool on) {
    set(unit_row * cols_ + unit_col, on);
  }
  void SetAll(bool on);

  // Raster-order flags, one byte (0/1) per unit.
  std::span<const uint8_t> flags() const { return flags_; }
  int enabled_count() const;

  UnitRect Bounds(int unit_row, int unit_col) const;
  UnitRect Bounds(int unit_index) const {
    return Bounds(unit_index / cols_, unit_index % cols_);
  }

  bool operator==(const FilterUnitGrid&) const = default;

 private:
  PlaneId plane_ = PlaneId::kY;
  int plane_width_ = 0;
  int plane_height_ = 0;
  int unit_size_ = kUnitSizeLuma;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<uint8_t> flags_;
};

// Number of filter units along one luma dimension.
constexpr int UnitsAlong(int luma_dim) {
  return (luma_dim + kUnitSizeLuma - 1) / kUnitSizeLuma;
}

UnitRect UnitBounds(const FilterUnitGrid& units, int unit_row, int unit_col);

// Scalar reference: out = clip(in + lut[class]) inside enabled units, copy
// elsewhere.
Plane ApplyCcso(const Plane& target, const ClassMap& class_map,
                const OffsetLut& lut, const FilterUnitGrid& units,
                int bit_depth);

enum class BatchKernel { kAuto, kPortable, kAvx2 };

bool Avx2Available();

// Multi-sample path; output is bit-identical to ApplyCcso.
Plane ApplyCcsoBatch(const Plane& target, const ClassMap& class_map,
                     const OffsetLut& lut, const FilterUnitGrid& units,
                     int bit_depth, BatchKernel kernel = BatchKernel::kAuto);

namespace internal {

// Compact table addressed by class for LUTs of up to 128 entries and by
// band for larger (band-only) LUTs, so every slot fits in 128 entries.
struct CompactLut {
  alignas(32) std::array<int8_t, 128> table{};
  int shift = 0;
  int num_tables = 0;  // 16-entry groups in use
};

CompactLut MakeCompactLut(const OffsetLut& lut);

void ApplySpanPortable(const uint16_t* in, const uint16_t* classes,
                       uint16_t* out, int count, const CompactLut& lut,
                       int max_value);
void ApplySpanAvx2(const uint16_t* in, const uint16_t* classes, uint16_t* out,
                   int count, const CompactLut& lut, int max_value);

}  // namespace internal

}  // namespace ccso

#endif  // CCSO_FILTER_H_
