# Copyright 2026 The CCSO Filter Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Reference BD-rate values for metrics_test.cc, computed with scipy's PCHIP
# interpolant (log10 rate as a function of quality) and its exact integral.

import numpy as np
from scipy.interpolate import PchipInterpolator


def bd_rate(anchor, test):
    def curve(points):
        points = sorted(points)
        q = np.array([p[1] for p in points], dtype=float)
        r = np.log10(np.array([p[0] for p in points], dtype=float))
        return q, r
    qa, ra = curve(anchor)
    qt, rt = curve(test)
    lo, hi = max(qa[0], qt[0]), min(qa[-1], qt[-1])
    ia = PchipInterpolator(qa, ra).integrate(lo, hi)
    it = PchipInterpolator(qt, rt).integrate(lo, hi)
    return 100.0 * (10 ** ((it - ia) / (hi - lo)) - 1.0)


CASES = {
    "typical": ([(1000, 34.1), (1800, 36.4), (3100, 38.2), (5600, 40.3)],
                [(950, 34.3), (1700, 36.5), (3000, 38.4), (5300, 40.35)]),
    "uneven": ([(120, 28.0), (300, 31.5), (900, 33.0), (2500, 37.9), (7000, 38.6)],
               [(100, 27.4), (290, 31.7), (800, 33.9), (2600, 37.2), (6400, 39.0)]),
    "flat_segment": ([(200, 30.0), (400, 30.01), (800, 35.0), (1600, 35.02)],
                     [(190, 29.5), (410, 31.0), (760, 33.0), (1500, 36.0)]),
}

if __name__ == "__main__":
    for name, (a, t) in CASES.items():
        print(name, "%.12f" % bd_rate(a, t), "%.12f" % bd_rate(t, a))
