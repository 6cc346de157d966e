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

#ifndef CCSO_METRICS_H_
#define CCSO_METRICS_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccso/frame.h"

namespace ccso {

// Weights applied to per-plane PSNR for the combined YCbCr score.
inline constexpr std::array<int, kNumPlanes> kPsnrWeights = {14, 1, 1};
inline constexpr int kPsnrWeightSum = 16;

struct PlaneQuality {
  uint64_t sse = 0;
  double mse = 0.0;
  std::optional<double> psnr;  // empty when lossless

  bool lossless() const { return sse == 0; }
};

struct QualityReport {
  std::array<PlaneQuality, kNumPlanes> planes;
  // (14 Y + Cb + Cr) / 16 over PSNR values; empty if any plane is lossless.
  std::optional<double> weighted_psnr;
};

// Throws on zero MSE.
double PsnrFromMse(double mse, int bit_depth);

QualityReport PsnrReport(const Frame& orig, const Frame& test);

struct RdPoint {
  double bitrate;
  double quality;
};

// Bjontegaard rate difference in percent (negative = test needs fewer bits),
// using monotone piecewise-cubic (PCHIP) interpolation of log10(rate) over
// quality and exact integration over the overlapping quality interval.
double BdRate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

namespace internal {

// Shape-preserving Hermite slopes at every knot; |x| strictly increasing.
std::vector<double> PchipSlopes(std::span<const double> x,
                                std::span<const double> y);
// Integral of the PCHIP interpolant through (x, y) over [lo, hi].
double PchipIntegral(std::span<const double> x, std::span<const double> y,
                     double lo, double hi);

}  // namespace internal

// One row of an RD-point CSV: bitrate_kbps,psnr_y,psnr_cb,psnr_cr.
struct RdCsvRow {
  double bitrate_kbps;
  std::array<double, kNumPlanes> psnr;

  double weighted_psnr() const;
};

// Accepts an optional header row naming exactly those columns, blank lines
// and '#' comments. Malformed input raises a kParse error naming the line.
std::vector<RdCsvRow> ParseRdCsv(std::istream& in);

struct BdRateSummary {
  std::array<double, kNumPlanes> planes{};
  double ycbcr = 0.0;
};

BdRateSummary BdRateFromRows(std::span<const RdCsvRow> anchor,
                             std::span<const RdCsvRow> test);

}  // namespace ccso

#endif  // CCSO_METRICS_H_
