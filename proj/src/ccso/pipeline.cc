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

#include "ccso/pipeline.h"

#include "ccso/classifier.h"
#include "ccso/error.h"
#include "ccso/filter.h"

namespace ccso {

Frame ApplyParams(const Frame& target, const Frame& classification,
                  const CcsoFrameParams& params, FilterPath path) {
  if (!target.SameGeometry(classification)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "classification frame differs from the target frame");
  }
  const FrameGeometry geometry{target.width(), target.height()};
  ValidateParams(params, geometry);
  Frame out = target;
  if (!params.frame_flag) return out;
  for (PlaneId id : kAllPlanes) {
    const CcsoPlaneParams& p = params.plane(id);
    if (!p.enable) continue;
    const ClassifierConfig cfg = p.ToClassifierConfig(target.bit_depth());
    const ClassMap map = ClassifyPlane(classification, id, cfg);
    const FilterUnitGrid units = p.ToUnitGrid(geometry, id);
    out.plane(id) =
        path == FilterPath::kScalar
            ? ApplyCcso(target.plane(id), map, p.lut, units, target.bit_depth())
            : ApplyCcsoBatch(target.plane(id), map, p.lut, units,
                             target.bit_depth());
  }
  return out;
}

}  // namespace ccso
