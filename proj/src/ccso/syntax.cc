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

#include "ccso/syntax.h"

#include <string>

#include "ccso/error.h"

namespace ccso {

void BitWriter::PutBits(uint32_t value, int num_bits) {
  for (int i = num_bits - 1; i >= 0; --i) {
    if ((bit_count_ & 7) == 0) bytes_.push_back(0);
    if ((value >> i) & 1) {
      bytes_.back() |= static_cast<uint8_t>(0x80 >> (bit_count_ & 7));
    }
    ++bit_count_;
  }
}

std::vector<uint8_t> BitWriter::Finish() && { return std::move(bytes_); }

uint32_t BitReader::GetBits(int num_bits) {
  if (static_cast<size_t>(num_bits) > bits_left()) {
    throw ParseError(absolute_position(), "truncated parameter payload");
  }
  uint32_t value = 0;
  for (int i = 0; i < num_bits; ++i) {
    const uint8_t byte = bytes_[pos_ >> 3];
    value = (value << 1) | ((byte >> (7 - (pos_ & 7))) & 1);
    ++pos_;
  }
  return value;
}

void WriteTu(BitWriter& writer, int symbol) {
  if (symbol < 0 || symbol > kMaxTuSymbol) {
    throw Error(ErrorCode::kInvalidArgument,
                "truncated unary symbol " + std::to_string(symbol) +
                    " outside [0, 7]");
  }
  for (int i = 0; i < symbol; ++i) writer.PutBits(1, 1);
  if (symbol < kMaxTuSymbol) writer.PutBits(0, 1);
}

int ReadTu(BitReader& reader) {
  int symbol = 0;
  while (symbol < kMaxTuSymbol && reader.GetFlag()) ++symbol;
  return symbol;
}

ClassifierConfig CcsoPlaneParams::ToClassifierConfig(int bit_depth) const {
  ClassifierConfig cfg;
  cfg.bo_only = bo_only;
  cfg.max_band_log2 = max_band_log2;
  cfg.quant_step_idx = quant_step_idx;
  cfg.shape_idx = filter_shape_idx;
  cfg.edge_clf = edge_clf;
  cfg.bit_depth = bit_depth;
  return cfg;
}

FilterUnitGrid CcsoPlaneParams::ToUnitGrid(FrameGeometry geometry,
                                           PlaneId plane) const {
  FilterUnitGrid grid(geometry.width, geometry.height, plane, false);
  if (unit_flags.size() != static_cast<size_t>(grid.count())) {
    throw Error(ErrorCode::kInvalidArgument,
                "plane has " + std::to_string(unit_flags.size()) +
                    " unit flags, geometry needs " +
                    std::to_string(grid.count()));
  }
  for (int i = 0; i < grid.count(); ++i) grid.set(i, unit_flags[i] != 0);
  return grid;
}

void CcsoFrameParams::UpdateFrameFlag() {
  frame_flag = false;
  for (const CcsoPlaneParams& p : planes) frame_flag = frame_flag || p.enable;
}

CcsoPlaneParams MakePlaneParams(const ClassifierConfig& cfg,
                                const OffsetLut& lut,
                                const FilterUnitGrid& units) {
  CcsoPlaneParams p;
  p.enable = true;
  p.bo_only = cfg.bo_only;
  p.max_band_log2 = cfg.max_band_log2;
  if (!cfg.bo_only) {
    p.quant_step_idx = cfg.quant_step_idx;
    p.filter_shape_idx = cfg.shape_idx;
    p.edge_clf = cfg.edge_clf;
  }
  p.lut = lut;
  p.unit_flags.assign(units.flags().begin(), units.flags().end());
  return p;
}

namespace {

// Bit depth does not enter the syntax; 10 admits every band count.
constexpr int kSyntaxBitDepth = 10;

void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "inconsistent parameters: " + what);
}

void ValidatePlane(const CcsoPlaneParams& p, FrameGeometry geometry,
                   PlaneId plane) {
  const std::string name(PlaneName(plane));
  if (!p.enable) {
    if (!(p == CcsoPlaneParams{})) Invalid(name + " disabled but has fields set");
    return;
  }
  const int max_log2 = p.bo_only ? kMaxBandLog2BoOnly : kMaxBandLog2Combined;
  if (p.max_band_log2 < 0 || p.max_band_log2 > max_log2) {
    Invalid(name + " max_band_log2 out of range");
  }
  if (p.bo_only) {
    if (p.quant_step_idx != 0 || p.filter_shape_idx != 0 ||
        p.edge_clf != EdgeClf::kThreeLevel) {
      Invalid(name + " band-only plane has edge fields set");
    }
  } else {
    if (p.quant_step_idx < 0 || p.quant_step_idx >= kNumQuantSteps) {
      Invalid(name + " quant_step_idx out of range");
    }
    if (p.filter_shape_idx < 0 || p.filter_shape_idx >= kNumFilterShapes) {
      Invalid(name + " filter_shape_idx out of range");
    }
    if (p.edge_clf != EdgeClf::kThreeLevel && p.edge_clf != EdgeClf::kTwoLevel) {
      Invalid(name + " edge_clf out of range");
    }
  }
  if (p.lut.max_band_log2() != p.max_band_log2) {
    Invalid(name + " LUT band count differs from max_band_log2");
  }
  try {
    ValidateLut(p.lut, p.ToClassifierConfig(kSyntaxBitDepth));
  } catch (const Error& e) {
    Invalid(name + " " + e.what());
  }
  if (p.unit_flags.size() != static_cast<size_t>(geometry.unit_count())) {
    Invalid(name + " unit flag count differs from the geometry");
  }
  for (uint8_t f : p.unit_flags) {
    if (f > 1) Invalid(name + " unit flag not 0/1");
  }
}

void CheckGeometry(FrameGeometry geometry) {
  if (geometry.width <= 0 || geometry.height <= 0 || geometry.width > 65535 ||
      geometry.height > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "invalid frame geometry");
  }
}

template <typename Fn>
void ForEachSignalledClass(const CcsoPlaneParams& p, Fn&& fn) {
  const int intervals = p.bo_only ? 1 : IntervalCount(p.edge_clf);
  const int bands = 1 << p.max_band_log2;
  for (int d0 = 0; d0 < intervals; ++d0) {
    for (int d1 = 0; d1 < intervals; ++d1) {
      for (int band = 0; band < bands; ++band) {
        fn((band << 4) + (d0 << 2) + d1);
      }
    }
  }
}

}  // namespace

void ValidateParams(const CcsoFrameParams& params, FrameGeometry geometry) {
  CheckGeometry(geometry);
  bool any = false;
  for (PlaneId id : kAllPlanes) {
    ValidatePlane(params.plane(id), geometry, id);
    any = any || params.plane(id).enable;
  }
  if (params.frame_flag != any) {
    Invalid("ccso_frame_flag does not match the plane enables");
  }
}

void WriteParams(BitWriter& writer, const CcsoFrameParams& params,
                 FrameGeometry geometry) {
  ValidateParams(params, geometry);
  writer.PutFlag(params.frame_flag);
  if (!params.frame_flag) return;
  for (const CcsoPlaneParams& p : params.planes) {
    writer.PutFlag(p.enable);
    if (!p.enable) continue;
    writer.PutFlag(p.bo_only);
    if (p.bo_only) {
      writer.PutBits(p.max_band_log2, 3);
    } else {
      writer.PutBits(p.max_band_log2, 2);
      writer.PutBits(p.quant_step_idx, 2);
      writer.PutBits(p.filter_shape_idx, 3);
      writer.PutBits(static_cast<uint32_t>(p.edge_clf), 1);
    }
    ForEachSignalledClass(
        p, [&](int idx) { WriteTu(writer, AlphabetIndex(p.lut[idx])); });
    for (uint8_t f : p.unit_flags) writer.PutFlag(f != 0);
  }
}

std::vector<uint8_t> WriteParams(const CcsoFrameParams& params,
                                 FrameGeometry geometry) {
  BitWriter writer;
  WriteParams(writer, params, geometry);
  return std::move(writer).Finish();
}

CcsoFrameParams ReadParams(BitReader& reader, FrameGeometry geometry) {
  CheckGeometry(geometry);
  CcsoFrameParams params;
  params.frame_flag = reader.GetFlag();
  if (!params.frame_flag) return params;
  const int units = geometry.unit_count();
  bool any = false;
  for (CcsoPlaneParams& p : params.planes) {
    p.enable = reader.GetFlag();
    if (!p.enable) continue;
    any = true;
    p.bo_only = reader.GetFlag();
    if (p.bo_only) {
      p.max_band_log2 = static_cast<int>(reader.GetBits(3));
    } else {
      p.max_band_log2 = static_cast<int>(reader.GetBits(2));
      p.quant_step_idx = static_cast<int>(reader.GetBits(2));
      const size_t shape_pos = reader.absolute_position();
      p.filter_shape_idx = static_cast<int>(reader.GetBits(3));
      if (p.filter_shape_idx >= kNumFilterShapes) {
        throw ParseError(shape_pos, "filter_shape_idx " +
                                        std::to_string(p.filter_shape_idx) +
                                        " out of range");
      }
      p.edge_clf = static_cast<EdgeClf>(reader.GetBits(1));
    }
    p.lut = OffsetLut(p.max_band_log2);
    ForEachSignalledClass(p, [&](int idx) {
      p.lut.set(idx, kOffsetAlphabet[ReadTu(reader)]);
    });
    p.unit_flags.resize(units);
    for (uint8_t& f : p.unit_flags) f = reader.GetFlag() ? 1 : 0;
  }
  if (!any) {
    throw ParseError(reader.absolute_position(),
                     "ccso_frame_flag set but no plane enabled");
  }
  return params;
}

CcsoFrameParams ReadParams(std::span<const uint8_t> bytes,
                           FrameGeometry geometry) {
  BitReader reader(bytes);
  return ReadParams(reader, geometry);
}

size_t PlaneParamsBitCost(const CcsoPlaneParams& p, FrameGeometry geometry) {
  size_t bits = 1;
  if (!p.enable) return bits;
  bits += 1;
  bits += p.bo_only ? 3 : 2 + 2 + 3 + 1;
  ForEachSignalledClass(
      p, [&](int idx) { bits += TuLength(AlphabetIndex(p.lut[idx])); });
  bits += static_cast<size_t>(geometry.unit_count());
  return bits;
}

size_t ParamsBitCost(const CcsoFrameParams& params, FrameGeometry geometry) {
  if (!params.frame_flag) return 1;
  size_t bits = 1;
  for (const CcsoPlaneParams& p : params.planes) {
    bits += PlaneParamsBitCost(p, geometry);
  }
  return bits;
}

namespace {

constexpr uint8_t kMagic[4] = {'C', 'C', 'S', 'O'};

void PutByte(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
}

}  // namespace

std::vector<uint8_t> EncodeParamsFile(const ParamsFile& file) {
  CheckGeometry(file.geometry);
  if (!IsSupportedBitDepth(file.bit_depth)) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported bit depth");
  }
  std::vector<uint8_t> out(std::begin(kMagic), std::end(kMagic));
  PutByte(out, kContainerVersion);
  PutByte(out, file.geometry.width >> 8);
  PutByte(out, file.geometry.width);
  PutByte(out, file.geometry.height >> 8);
  PutByte(out, file.geometry.height);
  PutByte(out, file.bit_depth);
  for (const ParamsFileEntry& entry : file.frames) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      PutByte(out, entry.frame_index >> shift);
    }
    const std::vector<uint8_t> payload = WriteParams(entry.params, file.geometry);
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

ParamsFile DecodeParamsFile(std::span<const uint8_t> bytes) {
  if (bytes.size() < kContainerHeaderBytes) {
    throw ParseError(bytes.size() * 8, "truncated .ccso header");
  }
  for (size_t i = 0; i < 4; ++i) {
    if (bytes[i] != kMagic[i]) throw ParseError(i * 8, "bad .ccso magic");
  }
  if (bytes[4] != kContainerVersion) {
    throw ParseError(32, "unsupported .ccso version " + std::to_string(bytes[4]));
  }
  ParamsFile file;
  file.geometry.width = (bytes[5] << 8) | bytes[6];
  file.geometry.height = (bytes[7] << 8) | bytes[8];
  file.bit_depth = bytes[9];
  if (file.geometry.width == 0) throw ParseError(40, "zero frame width");
  if (file.geometry.height == 0) throw ParseError(56, "zero frame height");
  if (!IsSupportedBitDepth(file.bit_depth)) {
    throw ParseError(72, "unsupported bit depth " + std::to_string(file.bit_depth));
  }
  BitReader reader(bytes.subspan(kContainerHeaderBytes),
                   kContainerHeaderBytes * 8);
  while (reader.bits_left() > 0) {
    ParamsFileEntry entry;
    entry.frame_index = reader.GetBits(32);
    entry.params = ReadParams(reader, file.geometry);
    reader.AlignToByte();
    file.frames.push_back(std::move(entry));
  }
  return file;
}

}  // namespace ccso
