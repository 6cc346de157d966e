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

#include "ccso/metrics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccso/error.h"

namespace ccso {

double PsnrFromMse(double mse, int bit_depth) {
  if (!(mse > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "PSNR undefined for zero MSE");
  }
  const double peak = MaxSampleValue(bit_depth);
  return 10.0 * std::log10(peak * peak / mse);
}

QualityReport PsnrReport(const Frame& orig, const Frame& test) {
  if (!orig.SameGeometry(test)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "frames differ in geometry or bit depth");
  }
  QualityReport report;
  bool all_finite = true;
  double weighted = 0.0;
  for (PlaneId id : kAllPlanes) {
    PlaneQuality& q = report.planes[PlaneIndex(id)];
    q.sse = PlaneSse(orig.plane(id), test.plane(id));
    q.mse = static_cast<double>(q.sse) / orig.plane(id).size();
    if (q.sse == 0) {
      all_finite = false;
      continue;
    }
    q.psnr = PsnrFromMse(q.mse, orig.bit_depth());
    weighted += kPsnrWeights[PlaneIndex(id)] * *q.psnr;
  }
  if (all_finite) report.weighted_psnr = weighted / kPsnrWeightSum;
  return report;
}

namespace internal {

namespace {

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

// Three-point endpoint slope, limited to keep the interpolant monotone.
double EdgeSlope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (Sign(d) != Sign(m0)) {
    d = 0.0;
  } else if (Sign(m0) != Sign(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
    d = 3.0 * m0;
  }
  return d;
}

// Integral over t in [0, t] of the unit Hermite segment, scaled by h.
double SegmentIntegral(double h, double y0, double y1, double d0, double d1,
                       double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double h00 = t - t3 + t4 / 2.0;
  const double h10 = t2 / 2.0 - 2.0 * t3 / 3.0 + t4 / 4.0;
  const double h01 = t3 - t4 / 2.0;
  const double h11 = -t3 / 3.0 + t4 / 4.0;
  return h * (h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1);
}

}  // namespace

std::vector<double> PchipSlopes(std::span<const double> x,
                                std::span<const double> y) {
  const size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> h(n - 1), m(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    m[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = m[0];
    return d;
  }
  for (size_t k = 1; k + 1 < n; ++k) {
    if (m[k - 1] == 0.0 || m[k] == 0.0 || Sign(m[k - 1]) != Sign(m[k])) {
      d[k] = 0.0;
      continue;
    }
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  d[0] = EdgeSlope(h[0], h[1], m[0], m[1]);
  d[n - 1] = EdgeSlope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
  return d;
}

double PchipIntegral(std::span<const double> x, std::span<const double> y,
                     double lo, double hi) {
  const std::vector<double> d = PchipSlopes(x, y);
  double total = 0.0;
  for (size_t k = 0; k + 1 < x.size(); ++k) {
    const double a = std::max(lo, x[k]);
    const double b = std::min(hi, x[k + 1]);
    if (b <= a) continue;
    const double h = x[k + 1] - x[k];
    const double ta = (a - x[k]) / h;
    const double tb = (b - x[k]) / h;
    total += SegmentIntegral(h, y[k], y[k + 1], d[k], d[k + 1], tb) -
             SegmentIntegral(h, y[k], y[k + 1], d[k], d[k + 1], ta);
  }
  return total;
}

}  // namespace internal

namespace {

struct Curve {
  std::vector<double> quality;
  std::vector<double> log_rate;
};

Curve PrepareCurve(std::span<const RdPoint> points, const char* name) {
  if (points.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " curve needs at least 4 points");
  }
  std::vector<RdPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RdPoint& a, const RdPoint& b) {
              return a.bitrate < b.bitrate;
            });
  Curve curve;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].bitrate > 0.0) || !std::isfinite(sorted[i].bitrate) ||
        !std::isfinite(sorted[i].quality)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " curve has a non-positive bitrate");
    }
    if (i > 0 && (sorted[i].bitrate == sorted[i - 1].bitrate ||
                  sorted[i].quality <= sorted[i - 1].quality)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) +
                      " curve must have distinct rates and quality strictly "
                      "increasing with rate");
    }
    curve.quality.push_back(sorted[i].quality);
    curve.log_rate.push_back(std::log10(sorted[i].bitrate));
  }
  return curve;
}

}  // namespace

double BdRate(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  const Curve a = PrepareCurve(anchor, "anchor");
  const Curve t = PrepareCurve(test, "test");
  const double lo = std::max(a.quality.front(), t.quality.front());
  const double hi = std::min(a.quality.back(), t.quality.back());
  if (!(hi > lo)) {
    throw Error(ErrorCode::kInvalidArgument,
                "anchor and test curves do not overlap in quality");
  }
  const double int_a = internal::PchipIntegral(a.quality, a.log_rate, lo, hi);
  const double int_t = internal::PchipIntegral(t.quality, t.log_rate, lo, hi);
  const double mean_diff = (int_t - int_a) / (hi - lo);
  return 100.0 * (std::pow(10.0, mean_diff) - 1.0);
}

double RdCsvRow::weighted_psnr() const {
  double sum = 0.0;
  for (int p = 0; p < kNumPlanes; ++p) sum += kPsnrWeights[p] * psnr[p];
  return sum / kPsnrWeightSum;
}

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void CsvError(size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse,
              "RD csv line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<RdCsvRow> ParseRdCsv(std::istream& in) {
  static const std::array<std::string, 4> kHeader = {
      "bitrate_kbps", "psnr_y", "psnr_cb", "psnr_cr"};
  std::vector<RdCsvRow> rows;
  std::string line;
  size_t line_no = 0;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (fields.size() != 4) {
      CsvError(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
    }
    const bool first = !seen_first;
    seen_first = true;
    if (first && !fields[0].empty() &&
        !(std::isdigit(static_cast<unsigned char>(fields[0][0])) ||
          fields[0][0] == '.' || fields[0][0] == '-' || fields[0][0] == '+')) {
      for (size_t i = 0; i < kHeader.size(); ++i) {
        if (fields[i] != kHeader[i]) {
          CsvError(line_no, "unexpected header column '" + fields[i] + "'");
        }
      }
      continue;
    }
    RdCsvRow row{};
    for (size_t i = 0; i < 4; ++i) {
      size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(fields[i], &used);
      } catch (const std::exception&) {
        CsvError(line_no, "'" + fields[i] + "' is not a number");
      }
      if (used != fields[i].size() || !std::isfinite(v)) {
        CsvError(line_no, "'" + fields[i] + "' is not a number");
      }
      if (i == 0) {
        row.bitrate_kbps = v;
      } else {
        row.psnr[i - 1] = v;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

BdRateSummary BdRateFromRows(std::span<const RdCsvRow> anchor,
                             std::span<const RdCsvRow> test) {
  auto points = [](std::span<const RdCsvRow> rows, int plane) {
    std::vector<RdPoint> out;
    for (const RdCsvRow& r : rows) {
      out.push_back({r.bitrate_kbps,
                     plane < 0 ? r.weighted_psnr() : r.psnr[plane]});
    }
    return out;
  };
  BdRateSummary summary;
  for (int p = 0; p < kNumPlanes; ++p) {
    summary.planes[p] = BdRate(points(anchor, p), points(test, p));
  }
  summary.ycbcr = BdRate(points(anchor, -1), points(test, -1));
  return summary;
}

}  // namespace ccso
