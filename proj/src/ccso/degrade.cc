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

#include "ccso/degrade.h"

#include <algorithm>
#include <charconv>
#include <random>

#include "ccso/error.h"

namespace ccso {

namespace {

[[noreturn]] void BadProfile(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kInvalidArgument,
              "invalid degradation profile '" + std::string(text) + "': " + why);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

constexpr std::string_view KindName(DegradationStep::Kind kind) {
  switch (kind) {
    case DegradationStep::Kind::kBias:
      return "bias";
    case DegradationStep::Kind::kNoise:
      return "noise";
    case DegradationStep::Kind::kBlockMean:
      return "blockmean";
  }
  return "";
}

void AddBias(Plane& plane, int bias, int bit_depth) {
  for (uint16_t& v : plane.samples()) v = ClipPixel(v + bias, bit_depth);
}

void AddNoise(Plane& plane, int amplitude, int bit_depth, std::mt19937_64& rng) {
  if (amplitude == 0) return;
  const uint64_t span = 2 * static_cast<uint64_t>(amplitude) + 1;
  for (uint16_t& v : plane.samples()) {
    const int noise = static_cast<int>(rng() % span) - amplitude;
    v = ClipPixel(v + noise, bit_depth);
  }
}

void FlattenBlocks(Plane& plane, int block) {
  for (int by = 0; by < plane.height(); by += block) {
    for (int bx = 0; bx < plane.width(); bx += block) {
      const int ye = std::min(by + block, plane.height());
      const int xe = std::min(bx + block, plane.width());
      int64_t sum = 0;
      for (int y = by; y < ye; ++y) {
        for (int x = bx; x < xe; ++x) sum += plane.at(y, x);
      }
      const int64_t n = static_cast<int64_t>(ye - by) * (xe - bx);
      const auto mean = static_cast<uint16_t>((sum + n / 2) / n);
      for (int y = by; y < ye; ++y) {
        for (int x = bx; x < xe; ++x) plane.set(y, x, mean);
      }
    }
  }
}

}  // namespace

DegradationProfile DegradationProfile::Parse(std::string_view text) {
  DegradationProfile profile;
  if (text.empty()) BadProfile(text, "empty");
  for (std::string_view step_text : Split(text, ';')) {
    DegradationStep step;
    const size_t eq = step_text.find('=');
    if (eq == std::string_view::npos) BadProfile(text, "missing '='");
    const std::string_view kind = step_text.substr(0, eq);
    std::string_view rest = step_text.substr(eq + 1);
    if (kind == "bias") {
      step.kind = DegradationStep::Kind::kBias;
    } else if (kind == "noise") {
      step.kind = DegradationStep::Kind::kNoise;
    } else if (kind == "blockmean") {
      step.kind = DegradationStep::Kind::kBlockMean;
    } else {
      BadProfile(text, "unknown step '" + std::string(kind) + "'");
    }
    std::string_view planes_text;
    const size_t at = rest.find('@');
    if (at != std::string_view::npos) {
      planes_text = rest.substr(at + 1);
      rest = rest.substr(0, at);
    }
    const char* end = rest.data() + rest.size();
    const auto [ptr, ec] = std::from_chars(rest.data(), end, step.amount);
    if (ec != std::errc() || ptr != end || rest.empty()) {
      BadProfile(text, "bad amount '" + std::string(rest) + "'");
    }
    if (step.kind == DegradationStep::Kind::kNoise && step.amount < 0) {
      BadProfile(text, "noise amplitude must be >= 0");
    }
    if (step.kind == DegradationStep::Kind::kBlockMean && step.amount < 1) {
      BadProfile(text, "block size must be >= 1");
    }
    if (at != std::string_view::npos) {
      step.planes = {false, false, false};
      for (std::string_view name : Split(planes_text, ',')) {
        if (name == "y") {
          step.planes[0] = true;
        } else if (name == "cb") {
          step.planes[1] = true;
        } else if (name == "cr") {
          step.planes[2] = true;
        } else {
          BadProfile(text, "unknown plane '" + std::string(name) + "'");
        }
      }
    }
    profile.steps.push_back(step);
  }
  return profile;
}

std::string DegradationProfile::ToString() const {
  static constexpr std::array<std::string_view, kNumPlanes> kNames = {"y", "cb",
                                                                      "cr"};
  std::string out;
  for (const DegradationStep& step : steps) {
    if (!out.empty()) out += ';';
    out += KindName(step.kind);
    out += '=';
    out += std::to_string(step.amount);
    std::string planes;
    for (int p = 0; p < kNumPlanes; ++p) {
      if (!step.planes[p]) continue;
      if (!planes.empty()) planes += ',';
      planes += kNames[p];
    }
    out += '@';
    out += planes;
  }
  return out;
}

Frame Degrade(const Frame& orig, const DegradationProfile& profile,
              uint64_t seed) {
  Frame out = orig;
  std::mt19937_64 rng(seed);
  for (const DegradationStep& step : profile.steps) {
    for (PlaneId id : kAllPlanes) {
      if (!step.planes[PlaneIndex(id)]) continue;
      Plane& plane = out.plane(id);
      switch (step.kind) {
        case DegradationStep::Kind::kBias:
          AddBias(plane, step.amount, orig.bit_depth());
          break;
        case DegradationStep::Kind::kNoise:
          if (step.amount < 0) {
            throw Error(ErrorCode::kInvalidArgument, "negative noise amplitude");
          }
          AddNoise(plane, step.amount, orig.bit_depth(), rng);
          break;
        case DegradationStep::Kind::kBlockMean:
          if (step.amount < 1) {
            throw Error(ErrorCode::kInvalidArgument, "block size must be >= 1");
          }
          FlattenBlocks(plane, step.amount);
          break;
      }
    }
  }
  return out;
}

}  // namespace ccso
