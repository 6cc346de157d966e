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

#ifndef CCSO_YUV_IO_H_
#define CCSO_YUV_IO_H_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "ccso/frame.h"

namespace ccso {

// Raw planar 4:2:0: Y, Cb, Cr, row-major, no padding. 8-bit samples take one
// byte; 10-bit samples take two bytes, little-endian, LSB-aligned.
size_t RawFrameBytes(int width, int height, int bit_depth);

Frame DecodeRawFrame(std::span<const uint8_t> bytes, int width, int height,
                     int bit_depth);
std::vector<uint8_t> EncodeRawFrame(const Frame& frame);

// Random access over a multi-frame raw file. The file size must be an exact
// multiple of the frame size.
class RawYuvReader {
 public:
  RawYuvReader(const std::string& path, int width, int height, int bit_depth);

  size_t frame_count() const { return frame_count_; }
  Frame Read(size_t index);

 private:
  std::string path_;
  std::ifstream in_;
  int width_;
  int height_;
  int bit_depth_;
  size_t frame_bytes_;
  size_t frame_count_;
};

void WriteRawFrames(const std::string& path, std::span<const Frame> frames);

}  // namespace ccso

#endif  // CCSO_YUV_IO_H_
