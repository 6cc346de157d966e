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

#include <random>
#include <set>

#include "ccso/classifier.h"
#include "ccso/error.h"
#include "gtest/gtest.h"
#include "classifier_oracle.h"
#include "test_util.h"

namespace ccso {
namespace {

using testing::OracleClass;

void ExpectMatchesOracle(const Frame& f, PlaneId target, const ClassifierConfig& cfg) {
  const ClassMap map = ClassifyPlane(f, target, cfg);
  const Plane& p = f.plane(target);
  ASSERT_EQ(map.width(), p.width());
  ASSERT_EQ(map.height(), p.height());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      ASSERT_EQ(map.at(y, x), OracleClass(f, target, y, x, cfg))
          << "at (" << y << "," << x << ") shape " << cfg.shape_idx;
    }
  }
}

TEST(Classifier, ShapeTable) {
  for (const FilterShape& s : kFilterShapes) {
    EXPECT_EQ(s.p1(), -s.p0);
    EXPECT_LE(std::abs(s.p0.dy), 1);
    if (s.index < 4) {
      EXPECT_LE(std::abs(s.p0.dx), 1);
    } else {
      EXPECT_GT(std::abs(s.p0.dx), 1);
    }
  }
  EXPECT_THROW(GetFilterShape(6), Error);
}

TEST(Classifier, BoIndex) {
  EXPECT_EQ(BoIndex(200, 8, 3), 6);
  for (int v = 0; v < 256; ++v) EXPECT_EQ(BoIndex(v, 8, 0), 0);
  EXPECT_EQ(BoIndex(1023, 10, 7), 127);
}

TEST(Classifier, EoIndex) {
  EXPECT_EQ(EoIndex(-20, 16, EdgeClf::kThreeLevel), 0);
  EXPECT_EQ(EoIndex(16, 16, EdgeClf::kThreeLevel), 1);
  EXPECT_EQ(EoIndex(-16, 16, EdgeClf::kTwoLevel), 1);
  EXPECT_EQ(EoIndex(17, 16, EdgeClf::kThreeLevel), 2);
  EXPECT_EQ(EoIndex(-17, 16, EdgeClf::kTwoLevel), 0);
  EXPECT_EQ(EoIndex(500, 16, EdgeClf::kTwoLevel), 1);
}

TEST(Classifier, ThreeLevelPartitionsIntegers) {
  for (int t : {8, 16, 32, 64}) {
    for (int m = -1100; m <= 1100; ++m) {
      const int branches = (m < -t) + (m >= -t && m <= t) + (m > t);
      ASSERT_EQ(branches, 1);
      const int expect = m < -t ? 0 : (m <= t ? 1 : 2);
      ASSERT_EQ(EoIndex(m, t, EdgeClf::kThreeLevel), expect);
    }
  }
}

TEST(Classifier, QuantSteps) {
  EXPECT_EQ(QuantStepFromIndex(0), 8);
  EXPECT_EQ(QuantStepFromIndex(3), 64);
  EXPECT_THROW(QuantStepFromIndex(4), Error);
  EXPECT_EQ(IntervalCount(EdgeClf::kThreeLevel), 3);
  EXPECT_EQ(IntervalCount(EdgeClf::kTwoLevel), 2);
}

TEST(Classifier, PackClass) {
  EXPECT_EQ(PackClass(2, 1, 2), 38);
  EXPECT_EQ(PackClass(0, 0, 0), 0);
  EXPECT_EQ(PackClass(7, 2, 2), 122);
  std::set<int> seen;
  for (int b = 0; b < 128; ++b) {
    for (int e0 = 0; e0 < 3; ++e0) {
      for (int e1 = 0; e1 < 3; ++e1) ASSERT_TRUE(seen.insert(PackClass(b, e0, e1)).second);
    }
  }
}

TEST(Classifier, ConfigValidation) {
  ClassifierConfig cfg;
  cfg.Validate();
  cfg.max_band_log2 = 4;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.bo_only = true;
  cfg.Validate();
  cfg.max_band_log2 = 8;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.bit_depth = 12;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.shape_idx = 6;
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(Classifier, ConstantLumaLandsInMiddleInterval) {
  Frame f(20, 12, 8);
  for (uint16_t& v : f.plane(PlaneId::kY).samples()) v = 173;
  for (int shape = 0; shape < kNumFilterShapes; ++shape) {
    ClassifierConfig cfg;
    cfg.shape_idx = shape;
    cfg.max_band_log2 = 2;
    const int expect = (BoIndex(173, 8, 2) << 4) + (1 << 2) + 1;
    for (PlaneId id : kAllPlanes) {
      const ClassMap map = ClassifyPlane(f, id, cfg);
      for (uint16_t c : map.indices()) ASSERT_EQ(c, expect);
    }
  }
}

TEST(Classifier, SingleSampleFrame) {
  Frame f(1, 1, 10);
  f.plane(PlaneId::kY).set(0, 0, 700);
  for (int shape = 0; shape < kNumFilterShapes; ++shape) {
    ClassifierConfig cfg;
    cfg.bit_depth = 10;
    cfg.shape_idx = shape;
    cfg.max_band_log2 = 3;
    const ClassMap map = ClassifyPlane(f, PlaneId::kCb, cfg);
    ASSERT_EQ(map.width(), 1);
    EXPECT_EQ(map.at(0, 0), PackClass(700 >> 7, 1, 1));
  }
}

TEST(Classifier, SmallRandomPlaneMatchesOracle) {
  std::mt19937_64 rng(8);
  const Frame f = testing::RandomFrame(8, 8, 8, rng);
  ClassifierConfig cfg;
  cfg.max_band_log2 = 2;
  ExpectMatchesOracle(f, PlaneId::kY, cfg);
  ExpectMatchesOracle(f, PlaneId::kCb, cfg);
}

TEST(Classifier, AllConfigurationsMatchOracle) {
  std::mt19937_64 rng(21);
  for (int bd : {8, 10}) {
    const Frame noisy = testing::RandomFrame(23, 17, bd, rng);
    const Frame smooth = testing::TexturedFrame(30, 9, bd, rng);
    for (int shape = 0; shape < kNumFilterShapes; ++shape) {
      for (int q = 0; q < kNumQuantSteps; ++q) {
        for (int clf = 0; clf < 2; ++clf) {
          for (int bands = 0; bands <= kMaxBandLog2Combined; ++bands) {
            ClassifierConfig cfg{false, bands, q, shape, static_cast<EdgeClf>(clf), bd};
            for (PlaneId id : kAllPlanes) {
              ExpectMatchesOracle(noisy, id, cfg);
              ExpectMatchesOracle(smooth, id, cfg);
            }
          }
        }
      }
    }
    for (int bands = 0; bands <= kMaxBandLog2BoOnly; ++bands) {
      ClassifierConfig cfg;
      cfg.bo_only = true;
      cfg.max_band_log2 = bands;
      cfg.bit_depth = bd;
      ExpectMatchesOracle(noisy, PlaneId::kY, cfg);
      ExpectMatchesOracle(noisy, PlaneId::kCr, cfg);
    }
  }
}

TEST(Classifier, BandOnlyTakesTopBits) {
  std::mt19937_64 rng(3);
  const Frame f = testing::RandomFrame(16, 16, 10, rng);
  for (int k = 0; k <= kMaxBandLog2BoOnly; ++k) {
    ClassifierConfig cfg;
    cfg.bo_only = true;
    cfg.max_band_log2 = k;
    cfg.bit_depth = 10;
    const ClassMap map = ClassifyPlane(f, PlaneId::kY, cfg);
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        const int top = k == 0 ? 0 : f.plane(PlaneId::kY).at(y, x) >> (10 - k);
        ASSERT_EQ(map.at(y, x), top << 4);
      }
    }
  }
}

TEST(Classifier, InvariantToLumaDcShift) {
  std::mt19937_64 rng(4);
  Frame f(24, 24, 10);
  std::uniform_int_distribution<int> d(0, 500);
  for (uint16_t& v : f.plane(PlaneId::kY).samples()) v = static_cast<uint16_t>(d(rng));
  Frame shifted = f;
  for (uint16_t& v : shifted.plane(PlaneId::kY).samples()) v += 300;
  for (int shape = 0; shape < kNumFilterShapes; ++shape) {
    ClassifierConfig cfg;
    cfg.bit_depth = 10;
    cfg.shape_idx = shape;
    cfg.quant_step_idx = 1;
    EXPECT_EQ(ClassifyPlane(f, PlaneId::kCb, cfg), ClassifyPlane(shifted, PlaneId::kCb, cfg));
  }
}

TEST(Classifier, IndicesAreReachable) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    const ClassifierConfig cfg = testing::RandomConfig(8, rng);
    const Frame f = testing::RandomFrame(13, 11, 8, rng);
    for (PlaneId id : kAllPlanes) {
      const ClassMap map = ClassifyPlane(f, id, cfg);
      for (uint16_t c : map.indices()) ASSERT_TRUE(IsReachableClass(c, cfg));
    }
  }
}

}  // namespace
}  // namespace ccso
