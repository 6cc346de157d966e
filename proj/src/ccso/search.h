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

#ifndef CCSO_SEARCH_H_
#define CCSO_SEARCH_H_

#include <array>
#include <cstdint>
#include <vector>

#include "ccso/classifier.h"
#include "ccso/filter.h"
#include "ccso/frame.h"
#include "ccso/syntax.h"

namespace ccso {

// Error statistics of one class, with e = orig - recon.
struct ClassAccumulator {
  int64_t count = 0;
  int64_t err_sum = 0;
  int64_t err_sq_sum = 0;

  void Add(int64_t e) {
    ++count;
    err_sum += e;
    err_sq_sum += e * e;
  }
  ClassAccumulator& operator+=(const ClassAccumulator& o) {
    count += o.count;
    err_sum += o.err_sum;
    err_sq_sum += o.err_sq_sum;
    return *this;
  }
  // Sum of (e - offset)^2 over the accumulated samples.
  int64_t Sse(int64_t offset) const {
    return err_sq_sum - 2 * offset * err_sum + count * offset * offset;
  }

  bool operator==(const ClassAccumulator&) const = default;
};

struct ClassStats {
  std::vector<ClassAccumulator> classes;

  explicit ClassStats(int num_classes = 0) : classes(num_classes) {}
  int size() const { return static_cast<int>(classes.size()); }
  const ClassAccumulator& operator[](int i) const { return classes[i]; }
  ClassAccumulator& operator[](int i) { return classes[i]; }
};

// Accumulates orig - recon per class over the samples of enabled units.
ClassStats AccumulateStats(const Plane& orig, const Plane& recon,
                           const ClassMap& class_map,
                           const FilterUnitGrid& units, int num_classes);

// Alphabet value minimizing the closed-form SSE; the earlier alphabet
// position wins ties, and an empty class gets 0.
int BestOffset(const ClassAccumulator& stats);

OffsetLut DeriveLut(const ClassStats& stats, const ClassifierConfig& cfg);

struct RdConfig {
  double lambda = 0.0;  // squared error per bit
  int max_iterations = 15;

  void Validate() const;
};

// Rate of the per-unit flag. It is sent whether the unit is on or off.
inline constexpr int kUnitFlagBits = 1;

struct UnitRefinement {
  FilterUnitGrid units;
  std::vector<int64_t> d_on;
  std::vector<int64_t> d_off;
  std::vector<double> unit_cost;
  double total_cost = 0.0;
};

// Enables a unit iff filtering it with |lut| has strictly lower R-D cost.
UnitRefinement RefineUnits(const Plane& orig, const Plane& recon,
                           const ClassMap& class_map, const OffsetLut& lut,
                           const FilterUnitGrid& units, const RdConfig& rd,
                           int bit_depth);

struct IterationResult {
  OffsetLut lut;
  FilterUnitGrid units;
  double cost = 0.0;      // accumulated unit-level R-D cost
  int64_t post_sse = 0;   // SSE of |recon| filtered with lut/units
  int iterations = 0;     // LUT + unit-map rounds executed
  std::vector<double> cost_history;  // accepted costs, strictly decreasing
};

// Alternates LUT derivation and unit refinement starting from all units on,
// until the cost stops decreasing or rd.max_iterations rounds ran. Returns
// the lowest-cost state.
IterationResult IterateFrame(const Frame& orig, const Frame& recon,
                             const Frame& classification, PlaneId plane,
                             const ClassifierConfig& cfg, const RdConfig& rd);

// Combinations visited per plane. Combined mode iterates shape, quant step,
// band count and edge classifier (outer to inner); band-only mode iterates
// band count. Lists are visited in the given order.
struct SweepOptions {
  bool combined = true;
  bool bo_only = true;
  std::vector<int> shapes = {0, 1, 2, 3, 4, 5};
  std::vector<int> quant_steps = {0, 1, 2, 3};
  std::vector<int> combined_band_log2 = {0, 1, 2, 3};
  std::vector<EdgeClf> edge_clfs = {EdgeClf::kThreeLevel, EdgeClf::kTwoLevel};
  std::vector<int> bo_band_log2 = {0, 1, 2, 3, 4, 5, 6, 7};

  std::vector<ClassifierConfig> Combinations(int bit_depth) const;
};

struct SearchResult {
  CcsoFrameParams params;
  std::array<uint64_t, kNumPlanes> pre_sse{};
  std::array<uint64_t, kNumPlanes> post_sse{};
  std::array<int, kNumPlanes> iterations{};
  double total_cost = 0.0;  // sum of post SSE + lambda * ParamsBitCost
};

struct PlaneMask {
  std::array<bool, kNumPlanes> planes = {true, true, true};

  bool contains(PlaneId id) const { return planes[PlaneIndex(id)]; }
};

SearchResult SearchFrame(const Frame& orig, const Frame& recon,
                         const Frame& classification, PlaneMask planes,
                         const RdConfig& rd, const SweepOptions& sweep);

}  // namespace ccso

#endif  // CCSO_SEARCH_H_
