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

#ifndef CCSO_TESTS_SYNTAX_GOLDEN_H_
#define CCSO_TESTS_SYNTAX_GOLDEN_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccso/syntax.h"

namespace ccso::testing {

// Byte strings below come from tests/oracles/syntax_golden.py.
inline std::string Hex(const std::vector<uint8_t>& bytes) {
  static const char* kDigits = "0123456789abcdef";
  std::string s;
  for (uint8_t b : bytes) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

using SymbolFn = std::function<int(int k, int band, int d0, int d1)>;

// Fills the LUT in the serialization loop order (d0, d1, band) so that the
// k-th coded offset is alphabet[symbol(k, ...)].
inline CcsoPlaneParams GoldenPlane(bool bo_only, int log2, int quant, int shape, int clf,
                                   const SymbolFn& symbol, std::vector<uint8_t> flags) {
  CcsoPlaneParams p;
  p.enable = true;
  p.bo_only = bo_only;
  p.max_band_log2 = log2;
  if (!bo_only) {
    p.quant_step_idx = quant;
    p.filter_shape_idx = shape;
    p.edge_clf = static_cast<EdgeClf>(clf);
  }
  p.lut = OffsetLut(log2);
  const int intervals = bo_only ? 1 : (clf == 0 ? 3 : 2);
  int k = 0;
  for (int d0 = 0; d0 < intervals; ++d0) {
    for (int d1 = 0; d1 < intervals; ++d1) {
      for (int b = 0; b < (1 << log2); ++b) {
        p.lut.set((b << 4) + (d0 << 2) + d1, kOffsetAlphabet[symbol(k++, b, d0, d1)]);
      }
    }
  }
  p.unit_flags = std::move(flags);
  return p;
}

struct Golden {
  const char* name;
  CcsoFrameParams params;
  FrameGeometry geometry;
  size_t bits;
  const char* hex;
};

inline std::vector<Golden> GoldenVectors() {
  std::vector<Golden> g;
  g.push_back({"frame_off", {}, {64, 64}, 1, "00"});

  CcsoFrameParams bo;
  bo.planes[1] = GoldenPlane(true, 7, 0, 0, 0, [](int, int b, int, int) { return (3 * b) % 8; },
                       {1, 0});
  bo.UpdateFrameFlag();
  g.push_back({"bo_only_128_bands", bo, {300, 200}, 570,
               "beefd7bfef9dfaf7fdf3bf5effbe77ebdff7cefd7bfef9dfaf7fdf3bf5effbe77ebdff7ce"
               "fd7bfef9dfaf7fdf3bf5effbe77ebdff7cefd7bfef9dfaf7fdf3bf5effbe77ebdff7d00"});

  CcsoFrameParams c0;
  c0.planes[0] = GoldenPlane(false, 3, 2, 4, 0,
                       [](int k, int, int, int) { return (5 * k + 1) % 8; }, {1});
  c0.UpdateFrameFlag();
  g.push_back({"combined_clf0_72", c0, {256, 256}, 329,
               "dd17ee7dbffafdcfb7ff5fb9f6ffebf73edffd7ee7dbffafdcfb7ff5fb9f6ffebf73edff"
               "d7ee7dbffa00"});

  CcsoFrameParams c1;
  c1.planes[2] = GoldenPlane(false, 1, 1, 5, 1,
                       [](int k, int, int d0, int) { return (k + d0) % 8; },
                       {1, 0, 1, 1, 0, 1});
  c1.UpdateFrameFlag();
  g.push_back({"combined_clf1", c1, {600, 300}, 50, "92daddf7efeb40"});

  CcsoFrameParams multi;
  multi.planes[0] = GoldenPlane(true, 0, 0, 0, 0, [](int, int, int, int) { return 7; },
                          {1, 1, 0, 0, 1, 0});
  multi.planes[1] = GoldenPlane(false, 0, 0, 2, 0,
                          [](int k, int, int, int) { return (2 * k) % 8; },
                          {0, 1, 0, 1, 0, 1});
  multi.planes[2] = GoldenPlane(false, 2, 3, 3, 1,
                          [](int, int b, int d0, int d1) { return (b + 2 * d0 + 3 * d1) % 8; },
                          {1, 1, 1, 1, 1, 1});
  multi.UpdateFrameFlag();
  g.push_back({"multi_plane", multi, {520, 260}, 155,
               "e3fe50237bf37bf15add6eef7dfb77befbf7f7e0"});
  return g;
}

inline std::string BytesToBits(const std::vector<uint8_t>& bytes, size_t n) {
  std::string s;
  for (size_t i = 0; i < n; ++i) s += ((bytes[i / 8] >> (7 - i % 8)) & 1) ? '1' : '0';
  return s;
}

}  // namespace ccso::testing

#endif  // CCSO_TESTS_SYNTAX_GOLDEN_H_
