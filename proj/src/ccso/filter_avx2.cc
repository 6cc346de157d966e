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

// Built with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "ccso/filter.h"

namespace ccso {
namespace internal {

void ApplySpanAvx2(const uint16_t* in, const uint16_t* classes, uint16_t* out,
                   int count, const CompactLut& lut, int max_value) {
  __m128i tables[8];
  for (int t = 0; t < 8; ++t) {
    tables[t] = _mm_load_si128(
        reinterpret_cast<const __m128i*>(lut.table.data() + 16 * t));
  }
  const __m128i shift = _mm_cvtsi32_si128(lut.shift);
  const __m128i nibble = _mm_set1_epi8(0x0f);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i max = _mm256_set1_epi16(static_cast<int16_t>(max_value));

  int x = 0;
  for (; x + 16 <= count; x += 16) {
    const __m256i cls = _mm256_srl_epi16(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(classes + x)),
        shift);
    // Saturating pack keeps slots >= 128 out of every table.
    const __m128i slot = _mm_packus_epi16(_mm256_castsi256_si128(cls),
                                          _mm256_extracti128_si256(cls, 1));
    const __m128i low = _mm_and_si128(slot, nibble);
    const __m128i group = _mm_and_si128(_mm_srli_epi16(slot, 4), nibble);
    __m128i offsets = _mm_setzero_si128();
    for (int t = 0; t < lut.num_tables; ++t) {
      const __m128i hit = _mm_cmpeq_epi8(group, _mm_set1_epi8(static_cast<char>(t)));
      offsets = _mm_blendv_epi8(offsets, _mm_shuffle_epi8(tables[t], low), hit);
    }
    const __m256i sum = _mm256_add_epi16(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + x)),
        _mm256_cvtepi8_epi16(offsets));
    const __m256i clipped = _mm256_min_epi16(_mm256_max_epi16(sum, zero), max);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), clipped);
  }
  for (; x < count; ++x) {
    const int slot = classes[x] >> lut.shift;
    const int v = in[x] + (slot < 128 ? lut.table[slot] : 0);
    out[x] = static_cast<uint16_t>(std::clamp(v, 0, max_value));
  }
}

}  // namespace internal
}  // namespace ccso
