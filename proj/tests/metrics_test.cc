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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "ccso/error.h"
#include "ccso/metrics.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ccso {
namespace {

std::vector<RdPoint> Points(std::initializer_list<std::pair<double, double>> pts) {
  std::vector<RdPoint> out;
  for (auto [r, q] : pts) out.push_back({r, q});
  return out;
}

// log10(rate) = poly(quality), sampled at |n| evenly spaced qualities.
template <typename Fn>
std::vector<RdPoint> Sampled(Fn log_rate, double q0, double q1, int n) {
  std::vector<RdPoint> out;
  for (int i = 0; i < n; ++i) {
    const double q = q0 + (q1 - q0) * i / (n - 1);
    out.push_back({std::pow(10.0, log_rate(q)), q});
  }
  return out;
}

TEST(Psnr, Formula) {
  EXPECT_NEAR(PsnrFromMse(1.0, 8), 48.1308, 1e-4);
  EXPECT_NEAR(PsnrFromMse(1.0, 10), 10 * std::log10(1023.0 * 1023.0), 1e-12);
  EXPECT_NEAR(PsnrFromMse(255.0 * 255.0 / 256.0, 8), 24.0824, 1e-4);
  EXPECT_THROW(PsnrFromMse(0.0, 8), Error);
}

TEST(Psnr, StrictlyDecreasingInMse) {
  double prev = PsnrFromMse(1e-6, 8);
  for (double mse = 1e-3; mse < 1e5; mse *= 1.7) {
    const double p = PsnrFromMse(mse, 8);
    ASSERT_LT(p, prev);
    prev = p;
  }
}

TEST(PsnrReport, SingleSampleOff) {
  Frame a(32, 32, 8);
  Frame b = a;
  b.plane(PlaneId::kCb).set(3, 4, 255);
  const QualityReport r = PsnrReport(a, b);
  EXPECT_TRUE(r.planes[0].lossless());
  EXPECT_FALSE(r.planes[0].psnr.has_value());
  EXPECT_EQ(r.planes[1].sse, 255u * 255u);
  EXPECT_DOUBLE_EQ(r.planes[1].mse, 255.0 * 255.0 / 256.0);
  EXPECT_NEAR(*r.planes[1].psnr, 24.08, 0.005);
  EXPECT_FALSE(r.weighted_psnr.has_value());
}

TEST(PsnrReport, IdenticalIsLossless) {
  std::mt19937_64 rng(1);
  const Frame f = testing::RandomFrame(17, 9, 10, rng);
  const QualityReport r = PsnrReport(f, f);
  for (const PlaneQuality& p : r.planes) EXPECT_TRUE(p.lossless());
  EXPECT_FALSE(r.weighted_psnr.has_value());
  EXPECT_THROW(PsnrReport(f, Frame(17, 9, 8)), Error);
}

TEST(PsnrReport, WeightedLiesBetweenPlanes) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Frame a = testing::RandomFrame(16, 16, 8, rng);
    const Frame b = testing::RandomFrame(16, 16, 8, rng);
    const QualityReport r = PsnrReport(a, b);
    ASSERT_TRUE(r.weighted_psnr.has_value());
    double lo = 1e9, hi = -1e9;
    for (const PlaneQuality& p : r.planes) {
      lo = std::min(lo, *p.psnr);
      hi = std::max(hi, *p.psnr);
    }
    EXPECT_GE(*r.weighted_psnr, lo);
    EXPECT_LE(*r.weighted_psnr, hi);
    EXPECT_NEAR(*r.weighted_psnr,
                (14 * *r.planes[0].psnr + *r.planes[1].psnr + *r.planes[2].psnr) / 16, 1e-12);
  }
}

TEST(BdRate, IdenticalCurvesAreExactlyZero) {
  const auto a = Points({{1000, 34.1}, {1800, 36.4}, {3100, 38.2}, {5600, 40.3}});
  EXPECT_EQ(BdRate(a, a), 0.0);
}

TEST(BdRate, HalvedRateIsMinusFifty) {
  const auto a = Points({{1000, 34.1}, {1800, 36.4}, {3100, 38.2}, {5600, 40.3}});
  std::vector<RdPoint> t = a;
  for (RdPoint& p : t) p.bitrate /= 2;
  EXPECT_NEAR(BdRate(a, t), -50.0, 1e-9);
  for (RdPoint& p : t) p.bitrate *= 4;
  EXPECT_NEAR(BdRate(a, t), 100.0, 1e-9);
}

TEST(BdRate, MatchesScipyPchip) {
  struct Case {
    std::vector<RdPoint> a, t;
    double forward, backward;
  };
  const std::vector<Case> cases = {
      {Points({{1000, 34.1}, {1800, 36.4}, {3100, 38.2}, {5600, 40.3}}),
       Points({{950, 34.3}, {1700, 36.5}, {3000, 38.4}, {5300, 40.35}}), -8.380865381367,
       9.147505503356},
      {Points({{120, 28.0}, {300, 31.5}, {900, 33.0}, {2500, 37.9}, {7000, 38.6}}),
       Points({{100, 27.4}, {290, 31.7}, {800, 33.9}, {2600, 37.2}, {6400, 39.0}}),
       -7.269032389139, 7.838840223951},
      {Points({{200, 30.0}, {400, 30.01}, {800, 35.0}, {1600, 35.02}}),
       Points({{190, 29.5}, {410, 31.0}, {760, 33.0}, {1500, 36.0}}), 11.847686599277,
       -10.592697050342},
  };
  for (const Case& c : cases) {
    EXPECT_NEAR(BdRate(c.a, c.t), c.forward, 1e-9);
    EXPECT_NEAR(BdRate(c.t, c.a), c.backward, 1e-9);
    // Swapping curves inverts the average rate ratio only approximately,
    // since the mean is taken in the log domain before exponentiation.
    const double f = c.forward / 100, b = c.backward / 100;
    EXPECT_NEAR(1 + f, 1 / (1 + b), 1e-12);
  }
}

TEST(BdRate, LinearCurvesMatchClosedForm) {
  // log10 R_a = 2 + 0.1 (q - 30) on [30, 40]; log10 R_t = 1.95 + 0.08 (q - 30)
  // on [32, 42]. On the overlap [32, 40] the difference is
  // -0.05 - 0.02 (q - 30), whose mean is -0.05 - 0.02 * 6 = -0.17.
  const auto a = Sampled([](double q) { return 2 + 0.1 * (q - 30); }, 30, 40, 4);
  const auto t = Sampled([](double q) { return 1.95 + 0.08 * (q - 30); }, 32, 42, 5);
  EXPECT_NEAR(BdRate(a, t), 100 * (std::pow(10.0, -0.17) - 1), 1e-9);
}

TEST(BdRate, QuadraticCurvesMatchClosedForm) {
  // log10 R_a = 2 + 0.05 u + 0.002 u^2, log10 R_t = 1.9 + 0.06 u + 0.001 u^2,
  // u = q - 30 on [0, 10]. Mean difference:
  //   -0.1 + 0.01 * 5 - 0.001 * 100 / 3.
  const auto a = Sampled([](double q) { double u = q - 30; return 2 + 0.05 * u + 0.002 * u * u; },
                         30, 40, 41);
  const auto t = Sampled([](double q) { double u = q - 30; return 1.9 + 0.06 * u + 0.001 * u * u; },
                         30, 40, 41);
  const double mean = -0.1 + 0.05 - 0.1 / 3;
  EXPECT_NEAR(BdRate(a, t), 100 * (std::pow(10.0, mean) - 1), 0.01);
}

TEST(BdRate, RejectsBadCurves) {
  const auto good = Points({{1, 30}, {2, 31}, {3, 32}, {4, 33}});
  EXPECT_THROW(BdRate(Points({{1, 30}, {2, 31}, {3, 32}}), good), Error);
  EXPECT_THROW(BdRate(Points({{1, 30}, {2, 31}, {3, 31}, {4, 33}}), good), Error);
  EXPECT_THROW(BdRate(Points({{1, 30}, {1, 31}, {3, 32}, {4, 33}}), good), Error);
  EXPECT_THROW(BdRate(Points({{0, 30}, {2, 31}, {3, 32}, {4, 33}}), good), Error);
  EXPECT_THROW(BdRate(good, Points({{1, 40}, {2, 41}, {3, 42}, {4, 43}})), Error);
}

TEST(Pchip, SlopesPreserveMonotonicityAndExtrema) {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  const std::vector<double> y = {0, 1, 1, 3, 2};
  const std::vector<double> d = internal::PchipSlopes(x, y);
  EXPECT_EQ(d[1], 0.0);
  EXPECT_EQ(d[2], 0.0);
  EXPECT_EQ(d[3], 0.0);
  EXPECT_NEAR(internal::PchipIntegral(x, y, 0, 4),
              internal::PchipIntegral(x, y, 0, 2.5) + internal::PchipIntegral(x, y, 2.5, 4),
              1e-12);
}

TEST(RdCsv, ParsesHeaderCommentsAndRows) {
  std::istringstream in(
      "bitrate_kbps,psnr_y,psnr_cb,psnr_cr\n"
      "# anchor\n"
      "1000, 34.0, 40.0, 41.0\n"
      "\n"
      "2000,36,42,43\n");
  const std::vector<RdCsvRow> rows = ParseRdCsv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].bitrate_kbps, 2000);
  EXPECT_EQ(rows[0].psnr[2], 41.0);
  EXPECT_DOUBLE_EQ(rows[0].weighted_psnr(), (14 * 34.0 + 40 + 41) / 16);
}

TEST(RdCsv, ErrorsNameTheLine) {
  std::istringstream in("1000,34,40,41\n2000,abc,1,2\n");
  try {
    ParseRdCsv(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream short_row("1000,34,40\n");
  EXPECT_THROW(ParseRdCsv(short_row), Error);
}

TEST(RdCsv, SummaryUsesWeightedQuality) {
  std::vector<RdCsvRow> a = {{1000, {34, 40, 41}}, {1800, {36, 41, 42}},
                             {3100, {38, 42, 43}}, {5600, {40, 43, 44}}};
  std::vector<RdCsvRow> t = a;
  for (RdCsvRow& r : t) r.bitrate_kbps /= 2;
  const BdRateSummary s = BdRateFromRows(a, t);
  for (double v : s.planes) EXPECT_NEAR(v, -50.0, 1e-9);
  EXPECT_NEAR(s.ycbcr, -50.0, 1e-9);
  const BdRateSummary same = BdRateFromRows(a, a);
  EXPECT_EQ(same.ycbcr, 0.0);
}

}  // namespace
}  // namespace ccso
