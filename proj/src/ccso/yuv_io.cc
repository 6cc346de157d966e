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

#include "ccso/yuv_io.h"

#include <filesystem>
#include <system_error>

#include "ccso/error.h"

namespace ccso {

size_t RawFrameBytes(int width, int height, int bit_depth) {
  const size_t bytes_per_sample = bit_depth > 8 ? 2 : 1;
  size_t samples = 0;
  for (PlaneId id : kAllPlanes) {
    samples += static_cast<size_t>(PlaneWidth(width, id)) *
               PlaneHeight(height, id);
  }
  return samples * bytes_per_sample;
}

Frame DecodeRawFrame(std::span<const uint8_t> bytes, int width, int height,
                     int bit_depth) {
  Frame frame(width, height, bit_depth);
  const size_t expected = RawFrameBytes(width, height, bit_depth);
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kInput,
                "raw frame needs " + std::to_string(expected) +
                    " bytes, got " + std::to_string(bytes.size()));
  }
  size_t pos = 0;
  for (PlaneId id : kAllPlanes) {
    std::span<uint16_t> out = frame.plane(id).samples();
    if (bit_depth == 8) {
      for (uint16_t& v : out) v = bytes[pos++];
    } else {
      for (uint16_t& v : out) {
        v = static_cast<uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
        pos += 2;
      }
    }
  }
  frame.ValidateSamples();
  return frame;
}

std::vector<uint8_t> EncodeRawFrame(const Frame& frame) {
  std::vector<uint8_t> bytes;
  bytes.reserve(RawFrameBytes(frame.width(), frame.height(), frame.bit_depth()));
  for (PlaneId id : kAllPlanes) {
    for (uint16_t v : frame.plane(id).samples()) {
      bytes.push_back(static_cast<uint8_t>(v & 0xff));
      if (frame.bit_depth() > 8) bytes.push_back(static_cast<uint8_t>(v >> 8));
    }
  }
  return bytes;
}

RawYuvReader::RawYuvReader(const std::string& path, int width, int height,
                           int bit_depth)
    : path_(path),
      width_(width),
      height_(height),
      bit_depth_(bit_depth),
      frame_bytes_(0),
      frame_count_(0) {
  // Validates geometry before touching the file.
  Frame probe(width, height, bit_depth);
  frame_bytes_ = RawFrameBytes(width, height, bit_depth);

  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (ec) {
    throw Error(ErrorCode::kInput, "cannot open '" + path + "': " + ec.message());
  }
  if (file_size == 0 || file_size % frame_bytes_ != 0) {
    throw Error(ErrorCode::kInput,
                "'" + path + "' has " + std::to_string(file_size) +
                    " bytes; expected a non-zero multiple of " +
                    std::to_string(frame_bytes_) + " bytes per " +
                    std::to_string(width) + "x" + std::to_string(height) +
                    " " + std::to_string(bit_depth) + "-bit frame");
  }
  frame_count_ = file_size / frame_bytes_;
  in_.open(path, std::ios::binary);
  if (!in_) throw Error(ErrorCode::kInput, "cannot open '" + path + "'");
}

Frame RawYuvReader::Read(size_t index) {
  if (index >= frame_count_) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame index " + std::to_string(index) + " out of range");
  }
  std::vector<uint8_t> bytes(frame_bytes_);
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(index * frame_bytes_));
  in_.read(reinterpret_cast<char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!in_) throw Error(ErrorCode::kInput, "short read from '" + path_ + "'");
  return DecodeRawFrame(bytes, width_, height_, bit_depth_);
}

void WriteRawFrames(const std::string& path, std::span<const Frame> frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kOutput, "cannot write '" + path + "'");
  for (const Frame& frame : frames) {
    const std::vector<uint8_t> bytes = EncodeRawFrame(frame);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kOutput, "write to '" + path + "' failed");
}

}  // namespace ccso
