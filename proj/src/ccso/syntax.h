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

#ifndef CCSO_SYNTAX_H_
#define CCSO_SYNTAX_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccso/classifier.h"
#include "ccso/filter.h"
#include "ccso/frame.h"

namespace ccso {

// MSB-first bit writer. Finish() zero-pads the final byte.
class BitWriter {
 public:
  void PutBits(uint32_t value, int num_bits);
  void PutFlag(bool flag) { PutBits(flag ? 1 : 0, 1); }

  size_t bit_count() const { return bit_count_; }
  std::vector<uint8_t> Finish() &&;
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<uint8_t> bytes_;
  size_t bit_count_ = 0;
};

// MSB-first bit reader. Reading past the end raises ParseError; reported
// bit offsets include |base_bit_offset|.
class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> bytes, size_t base_bit_offset = 0)
      : bytes_(bytes), base_(base_bit_offset) {}

  uint32_t GetBits(int num_bits);
  bool GetFlag() { return GetBits(1) != 0; }

  // Position relative to the start of |bytes|.
  size_t position() const { return pos_; }
  size_t absolute_position() const { return base_ + pos_; }
  size_t bits_left() const { return bytes_.size() * 8 - pos_; }
  void AlignToByte() { pos_ = (pos_ + 7) & ~size_t{7}; }

 private:
  std::span<const uint8_t> bytes_;
  size_t base_;
  size_t pos_ = 0;
};

inline constexpr int kMaxTuSymbol = 7;

// Truncated unary with maximum 7: k ones then a zero, 7 is seven ones.
void WriteTu(BitWriter& writer, int symbol);
int ReadTu(BitReader& reader);
constexpr int TuLength(int symbol) {
  return symbol < kMaxTuSymbol ? symbol + 1 : kMaxTuSymbol;
}

// Luma dimensions; unit-flag counts follow from these.
struct FrameGeometry {
  int width = 0;
  int height = 0;

  int unit_count() const { return UnitsAlong(width) * UnitsAlong(height); }
  bool operator==(const FrameGeometry&) const = default;
};

// Frame-level parameters of one plane. A disabled plane carries default
// values only; a band-only plane leaves the edge fields at zero.
struct CcsoPlaneParams {
  bool enable = false;
  bool bo_only = false;
  int max_band_log2 = 0;
  int quant_step_idx = 0;
  int filter_shape_idx = 0;
  EdgeClf edge_clf = EdgeClf::kThreeLevel;
  OffsetLut lut;
  std::vector<uint8_t> unit_flags;  // raster order, 0/1

  ClassifierConfig ToClassifierConfig(int bit_depth) const;
  FilterUnitGrid ToUnitGrid(FrameGeometry geometry, PlaneId plane) const;

  bool operator==(const CcsoPlaneParams&) const = default;
};

struct CcsoFrameParams {
  bool frame_flag = false;
  std::array<CcsoPlaneParams, kNumPlanes> planes;

  CcsoPlaneParams& plane(PlaneId id) { return planes[PlaneIndex(id)]; }
  const CcsoPlaneParams& plane(PlaneId id) const {
    return planes[PlaneIndex(id)];
  }
  // Sets frame_flag from the per-plane enables.
  void UpdateFrameFlag();

  bool operator==(const CcsoFrameParams&) const = default;
};

// Builds the enabled-plane params for a classifier config, LUT and units.
CcsoPlaneParams MakePlaneParams(const ClassifierConfig& cfg,
                                const OffsetLut& lut,
                                const FilterUnitGrid& units);

// Throws kInvalidArgument when |params| is not in canonical form for
// |geometry|.
void ValidateParams(const CcsoFrameParams& params, FrameGeometry geometry);

void WriteParams(BitWriter& writer, const CcsoFrameParams& params,
                 FrameGeometry geometry);
std::vector<uint8_t> WriteParams(const CcsoFrameParams& params,
                                 FrameGeometry geometry);

CcsoFrameParams ReadParams(BitReader& reader, FrameGeometry geometry);
CcsoFrameParams ReadParams(std::span<const uint8_t> bytes,
                           FrameGeometry geometry);

// Exact payload length in bits before padding.
size_t ParamsBitCost(const CcsoFrameParams& params, FrameGeometry geometry);
// Bits one plane contributes, including its ccso_enable flag.
size_t PlaneParamsBitCost(const CcsoPlaneParams& plane, FrameGeometry geometry);

// .ccso container: "CCSO", version byte, u16 BE width, u16 BE height, bit
// depth byte, then per frame a u32 BE frame index followed by the
// byte-aligned parameter payload.
inline constexpr uint8_t kContainerVersion = 1;
inline constexpr size_t kContainerHeaderBytes = 10;

struct ParamsFileEntry {
  uint32_t frame_index = 0;
  CcsoFrameParams params;

  bool operator==(const ParamsFileEntry&) const = default;
};

struct ParamsFile {
  FrameGeometry geometry;
  int bit_depth = 8;
  std::vector<ParamsFileEntry> frames;

  bool operator==(const ParamsFile&) const = default;
};

std::vector<uint8_t> EncodeParamsFile(const ParamsFile& file);
ParamsFile DecodeParamsFile(std::span<const uint8_t> bytes);

}  // namespace ccso

#endif  // CCSO_SYNTAX_H_
