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

#ifndef CCSO_PIPELINE_H_
#define CCSO_PIPELINE_H_

#include "ccso/frame.h"
#include "ccso/syntax.h"

namespace ccso {

enum class FilterPath { kScalar, kBatch };

// Decoder-side filtering: classifies from |classification| (luma only) and
// adds offsets to the enabled planes of |target|. The two frames may be the
// same object.
Frame ApplyParams(const Frame& target, const Frame& classification,
                  const CcsoFrameParams& params,
                  FilterPath path = FilterPath::kBatch);

}  // namespace ccso

#endif  // CCSO_PIPELINE_H_
