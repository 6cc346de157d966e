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

#include "ccso/search.h"

#include <cmath>
#include <limits>
#include <string>

#include "ccso/error.h"

namespace ccso {

namespace {

void CheckSameDims(const Plane& orig, const Plane& recon,
                   const ClassMap& class_map, const FilterUnitGrid& units) {
  if (orig.width() != recon.width() || orig.height() != recon.height() ||
      class_map.width() != orig.width() ||
      class_map.height() != orig.height() ||
      units.plane_width() != orig.width() ||
      units.plane_height() != orig.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "original, reconstruction, class map and unit grid must share "
                "dimensions");
  }
}

int64_t Square(int64_t v) { return v * v; }

}  // namespace

ClassStats AccumulateStats(const Plane& orig, const Plane& recon,
                           const ClassMap& class_map,
                           const FilterUnitGrid& units, int num_classes) {
  CheckSameDims(orig, recon, class_map, units);
  ClassStats stats(num_classes);
  for (int u = 0; u < units.count(); ++u) {
    if (!units.enabled(u)) continue;
    const UnitRect r = units.Bounds(u);
    for (int y = r.row_begin; y < r.row_end; ++y) {
      const auto o = orig.row(y);
      const auto s = recon.row(y);
      const auto c = class_map.row(y);
      for (int x = r.col_begin; x < r.col_end; ++x) {
        if (c[x] >= num_classes) {
          throw Error(ErrorCode::kInvalidArgument,
                      "class index exceeds the statistics table");
        }
        stats[c[x]].Add(static_cast<int64_t>(o[x]) - s[x]);
      }
    }
  }
  return stats;
}

int BestOffset(const ClassAccumulator& stats) {
  if (stats.count == 0) return 0;
  int best = kOffsetAlphabet[0];
  int64_t best_sse = stats.Sse(best);
  for (size_t i = 1; i < kOffsetAlphabet.size(); ++i) {
    const int64_t sse = stats.Sse(kOffsetAlphabet[i]);
    if (sse < best_sse) {
      best_sse = sse;
      best = kOffsetAlphabet[i];
    }
  }
  return best;
}

OffsetLut DeriveLut(const ClassStats& stats, const ClassifierConfig& cfg) {
  OffsetLut lut(cfg.max_band_log2);
  for (int i = 0; i < lut.size() && i < stats.size(); ++i) {
    if (IsReachableClass(i, cfg)) lut.set(i, BestOffset(stats[i]));
  }
  return lut;
}

void RdConfig::Validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
}

namespace {

// Enable decision and cost of one unit. Rates are equal on and off, so the
// rate term cancels in the comparison but still enters the cost.
struct UnitChoice {
  bool enable;
  double cost;
};

UnitChoice ChooseUnit(int64_t d_on, int64_t d_off, double lambda) {
  constexpr int kRateOn = kUnitFlagBits;
  constexpr int kRateOff = kUnitFlagBits;
  const double delta =
      static_cast<double>(d_on - d_off) + lambda * (kRateOn - kRateOff);
  const bool enable = delta < 0.0;
  const double cost = enable ? static_cast<double>(d_on) + lambda * kRateOn
                             : static_cast<double>(d_off) + lambda * kRateOff;
  return {enable, cost};
}

}  // namespace

UnitRefinement RefineUnits(const Plane& orig, const Plane& recon,
                           const ClassMap& class_map, const OffsetLut& lut,
                           const FilterUnitGrid& units, const RdConfig& rd,
                           int bit_depth) {
  CheckSameDims(orig, recon, class_map, units);
  rd.Validate();
  UnitRefinement out;
  out.units = units;
  out.d_on.resize(units.count());
  out.d_off.resize(units.count());
  out.unit_cost.resize(units.count());
  for (int u = 0; u < units.count(); ++u) {
    const UnitRect r = units.Bounds(u);
    int64_t d_on = 0;
    int64_t d_off = 0;
    for (int y = r.row_begin; y < r.row_end; ++y) {
      const auto o = orig.row(y);
      const auto s = recon.row(y);
      const auto c = class_map.row(y);
      for (int x = r.col_begin; x < r.col_end; ++x) {
        if (c[x] >= lut.size()) {
          throw Error(ErrorCode::kInvalidArgument, "class index exceeds LUT");
        }
        const int filtered = ClipPixel(s[x] + lut[c[x]], bit_depth);
        d_on += Square(static_cast<int64_t>(o[x]) - filtered);
        d_off += Square(static_cast<int64_t>(o[x]) - s[x]);
      }
    }
    const UnitChoice choice = ChooseUnit(d_on, d_off, rd.lambda);
    out.units.set(u, choice.enable);
    out.d_on[u] = d_on;
    out.d_off[u] = d_off;
    out.unit_cost[u] = choice.cost;
    out.total_cost += choice.cost;
  }
  return out;
}

namespace {

// Per-unit class statistics of one (plane, classifier) combination. Unit
// distortion for any LUT follows from these without rescanning samples:
// the closed form is exact unless the offset clips, and samples close enough
// to the range limits to clip carry an exact per-candidate correction.
class UnitStatsTable {
 public:
  UnitStatsTable(const Plane& orig, const Plane& recon,
                 const ClassMap& class_map, const FilterUnitGrid& units,
                 int num_classes, int bit_depth);

  int unit_count() const { return static_cast<int>(units_.size()); }
  int64_t d_off(int u) const { return units_[u].d_off; }

  // Stats over the enabled units of |grid|.
  ClassStats Merge(const FilterUnitGrid& grid) const;
  int64_t DistortionOn(int u, const OffsetLut& lut) const;

 private:
  struct Correction {
    int cls;
    std::array<int64_t, kOffsetAlphabet.size()> delta{};
  };
  struct Unit {
    std::vector<ClassAccumulator> classes;
    std::vector<int> active;  // classes with count > 0
    std::vector<Correction> corrections;
    int64_t d_off = 0;
  };

  int num_classes_;
  std::vector<Unit> units_;
};

UnitStatsTable::UnitStatsTable(const Plane& orig, const Plane& recon,
                               const ClassMap& class_map,
                               const FilterUnitGrid& units, int num_classes,
                               int bit_depth)
    : num_classes_(num_classes), units_(units.count()) {
  CheckSameDims(orig, recon, class_map, units);
  const int max_value = MaxSampleValue(bit_depth);
  // recon in [low, high] cannot clip for any alphabet offset.
  const int low = kMaxOffsetMagnitude;
  const int high = max_value - 7;
  std::vector<int> slot(num_classes, -1);
  for (int u = 0; u < units.count(); ++u) {
    Unit& unit = units_[u];
    unit.classes.assign(num_classes, {});
    const UnitRect r = units.Bounds(u);
    for (int y = r.row_begin; y < r.row_end; ++y) {
      const auto o = orig.row(y);
      const auto s = recon.row(y);
      const auto c = class_map.row(y);
      for (int x = r.col_begin; x < r.col_end; ++x) {
        const int cls = c[x];
        if (cls >= num_classes) {
          throw Error(ErrorCode::kInvalidArgument,
                      "class index exceeds the statistics table");
        }
        const int64_t e = static_cast<int64_t>(o[x]) - s[x];
        unit.classes[cls].Add(e);
        if (s[x] >= low && s[x] <= high) continue;
        if (slot[cls] < 0) {
          slot[cls] = static_cast<int>(unit.corrections.size());
          unit.corrections.push_back({cls, {}});
        }
        auto& delta = unit.corrections[slot[cls]].delta;
        for (size_t k = 0; k < kOffsetAlphabet.size(); ++k) {
          const int off = kOffsetAlphabet[k];
          delta[k] += Square(o[x] - static_cast<int64_t>(
                                        ClipPixel(s[x] + off, bit_depth))) -
                      Square(e - off);
        }
      }
    }
    for (const Correction& corr : unit.corrections) slot[corr.cls] = -1;
    for (int cls = 0; cls < num_classes; ++cls) {
      if (unit.classes[cls].count == 0) continue;
      unit.active.push_back(cls);
      unit.d_off += unit.classes[cls].err_sq_sum;
    }
  }
}

ClassStats UnitStatsTable::Merge(const FilterUnitGrid& grid) const {
  ClassStats stats(num_classes_);
  for (int u = 0; u < unit_count(); ++u) {
    if (!grid.enabled(u)) continue;
    for (int cls : units_[u].active) stats[cls] += units_[u].classes[cls];
  }
  return stats;
}

int64_t UnitStatsTable::DistortionOn(int u, const OffsetLut& lut) const {
  const Unit& unit = units_[u];
  int64_t d = 0;
  for (int cls : unit.active) d += unit.classes[cls].Sse(lut[cls]);
  for (const Correction& corr : unit.corrections) {
    d += corr.delta[AlphabetIndex(lut[corr.cls])];
  }
  return d;
}

IterationResult IterateOnTable(const UnitStatsTable& table,
                               FilterUnitGrid units,
                               const ClassifierConfig& cfg,
                               const RdConfig& rd) {
  units.SetAll(true);
  IterationResult best;
  bool have_best = false;
  for (int it = 1; it <= rd.max_iterations; ++it) {
    // LUT from the currently enabled units.
    const OffsetLut lut = DeriveLut(table.Merge(units), cfg);
    // Per-unit on/off against that LUT.
    double cost = 0.0;
    int64_t sse = 0;
    for (int u = 0; u < table.unit_count(); ++u) {
      const int64_t d_on = table.DistortionOn(u, lut);
      const UnitChoice choice = ChooseUnit(d_on, table.d_off(u), rd.lambda);
      units.set(u, choice.enable);
      cost += choice.cost;
      sse += choice.enable ? d_on : table.d_off(u);
    }
    best.iterations = it;
    if (have_best && !(cost < best.cost)) break;
    have_best = true;
    best.lut = lut;
    best.units = units;
    best.cost = cost;
    best.post_sse = sse;
    best.cost_history.push_back(cost);
  }
  return best;
}

void CheckFrames(const Frame& orig, const Frame& recon,
                 const Frame& classification) {
  if (!orig.SameGeometry(recon) || !orig.SameGeometry(classification)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "original, reconstruction and classification frames must "
                "share geometry and bit depth");
  }
}

}  // namespace

IterationResult IterateFrame(const Frame& orig, const Frame& recon,
                             const Frame& classification, PlaneId plane,
                             const ClassifierConfig& cfg, const RdConfig& rd) {
  CheckFrames(orig, recon, classification);
  rd.Validate();
  const ClassMap map = ClassifyPlane(classification, plane, cfg);
  const FilterUnitGrid units(orig.width(), orig.height(), plane);
  const UnitStatsTable table(orig.plane(plane), recon.plane(plane), map, units,
                             cfg.lut_size(), orig.bit_depth());
  return IterateOnTable(table, units, cfg, rd);
}

std::vector<ClassifierConfig> SweepOptions::Combinations(int bit_depth) const {
  std::vector<ClassifierConfig> out;
  if (combined) {
    for (int shape : shapes) {
      for (int quant : quant_steps) {
        for (int bands : combined_band_log2) {
          for (EdgeClf clf : edge_clfs) {
            ClassifierConfig cfg;
            cfg.bo_only = false;
            cfg.shape_idx = shape;
            cfg.quant_step_idx = quant;
            cfg.max_band_log2 = bands;
            cfg.edge_clf = clf;
            cfg.bit_depth = bit_depth;
            cfg.Validate();
            out.push_back(cfg);
          }
        }
      }
    }
  }
  if (bo_only) {
    for (int bands : bo_band_log2) {
      ClassifierConfig cfg;
      cfg.bo_only = true;
      cfg.max_band_log2 = bands;
      cfg.bit_depth = bit_depth;
      cfg.Validate();
      out.push_back(cfg);
    }
  }
  return out;
}

SearchResult SearchFrame(const Frame& orig, const Frame& recon,
                         const Frame& classification, PlaneMask planes,
                         const RdConfig& rd, const SweepOptions& sweep) {
  CheckFrames(orig, recon, classification);
  rd.Validate();
  const FrameGeometry geometry{orig.width(), orig.height()};
  const std::vector<ClassifierConfig> combos =
      sweep.Combinations(orig.bit_depth());

  SearchResult result;
  for (PlaneId id : kAllPlanes) {
    const int p = PlaneIndex(id);
    result.pre_sse[p] = PlaneSse(orig.plane(id), recon.plane(id));
    result.post_sse[p] = result.pre_sse[p];
    if (!planes.contains(id)) continue;

    const CcsoPlaneParams disabled;
    double best_cost = static_cast<double>(result.pre_sse[p]) +
                       rd.lambda * PlaneParamsBitCost(disabled, geometry);
    const FilterUnitGrid grid(orig.width(), orig.height(), id);
    for (const ClassifierConfig& cfg : combos) {
      const ClassMap map = ClassifyPlane(classification, id, cfg);
      const UnitStatsTable table(orig.plane(id), recon.plane(id), map, grid,
                                 cfg.lut_size(), orig.bit_depth());
      const IterationResult it = IterateOnTable(table, grid, cfg, rd);
      result.iterations[p] += it.iterations;
      if (it.units.enabled_count() == 0) continue;
      CcsoPlaneParams candidate = MakePlaneParams(cfg, it.lut, it.units);
      const double cost =
          static_cast<double>(it.post_sse) +
          rd.lambda * PlaneParamsBitCost(candidate, geometry);
      if (cost < best_cost) {
        best_cost = cost;
        result.params.plane(id) = std::move(candidate);
        result.post_sse[p] = static_cast<uint64_t>(it.post_sse);
      }
    }
  }
  result.params.UpdateFrameFlag();
  double distortion = 0.0;
  for (uint64_t sse : result.post_sse) distortion += static_cast<double>(sse);
  result.total_cost =
      distortion + rd.lambda * ParamsBitCost(result.params, geometry);
  return result;
}

}  // namespace ccso
