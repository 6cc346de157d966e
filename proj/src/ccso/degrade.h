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

#ifndef CCSO_DEGRADE_H_
#define CCSO_DEGRADE_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccso/frame.h"

namespace ccso {

// Deterministic stand-ins for codec reconstruction error.
struct DegradationStep {
  enum class Kind { kBias, kNoise, kBlockMean };

  Kind kind = Kind::kBias;
  // kBias: signed offset; kNoise: amplitude a (uniform in [-a, a]);
  // kBlockMean: block size.
  int amount = 0;
  std::array<bool, kNumPlanes> planes = {true, true, true};

  bool operator==(const DegradationStep&) const = default;
};

struct DegradationProfile {
  std::vector<DegradationStep> steps;

  // Grammar: step (';' step)*, step = kind '=' int ['@' plane (',' plane)*],
  // kind in {bias, noise, blockmean}, plane in {y, cb, cr}. Steps run in
  // order. Example: "blockmean=8@cb,cr;noise=4@cb,cr".
  static DegradationProfile Parse(std::string_view text);
  std::string ToString() const;

  bool operator==(const DegradationProfile&) const = default;
};

Frame Degrade(const Frame& orig, const DegradationProfile& profile,
              uint64_t seed);

}  // namespace ccso

#endif  // CCSO_DEGRADE_H_
