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

# Standalone bit-string writer for the frame parameter syntax. Produces the
# frozen byte vectors in syntax_test.cc; shares no code with the library.

ALPHABET = [0, 1, -1, 3, -3, 7, -7, -10]


def units(w, h):
    return ((w + 255) // 256) * ((h + 255) // 256)


def u(v, n):
    return format(v, "0%db" % n)


def tu(i):
    return "1" * i + ("0" if i < 7 else "")


def plane_bits(p, n_units):
    if p is None:
        return "0"
    s = "1" + ("1" if p["bo_only"] else "0")
    if p["bo_only"]:
        s += u(p["log2"], 3)
        intervals = 1
    else:
        s += u(p["log2"], 2) + u(p["quant"], 2) + u(p["shape"], 3) + u(p["clf"], 1)
        intervals = 3 if p["clf"] == 0 else 2
    k = 0
    for d0 in range(intervals):
        for d1 in range(intervals):
            for band in range(1 << p["log2"]):
                s += tu(p["symbol"](k, band, d0, d1))
                k += 1
    assert len(p["flags"]) == n_units
    s += "".join(str(f) for f in p["flags"])
    return s


def frame_bits(planes, w, h):
    if all(p is None for p in planes):
        return "0"
    return "1" + "".join(plane_bits(p, units(w, h)) for p in planes)


def to_hex(bits):
    bits += "0" * (-len(bits) % 8)
    return "".join("%02x" % int(bits[i:i + 8], 2) for i in range(0, len(bits), 8))


CASES = {
    "frame_off": ((None, None, None), 64, 64),
    "bo_only_128_bands": ((None,
                           dict(bo_only=1, log2=7, symbol=lambda k, b, d0, d1: (3 * b) % 8,
                                flags=[1, 0]),
                           None), 300, 200),
    "combined_clf0_72": ((dict(bo_only=0, log2=3, quant=2, shape=4, clf=0,
                               symbol=lambda k, b, d0, d1: (5 * k + 1) % 8, flags=[1]),
                          None, None), 256, 256),
    "combined_clf1": ((None, None,
                       dict(bo_only=0, log2=1, quant=1, shape=5, clf=1,
                            symbol=lambda k, b, d0, d1: (k + d0) % 8,
                            flags=[1, 0, 1, 1, 0, 1])), 600, 300),
    "multi_plane": ((dict(bo_only=1, log2=0, symbol=lambda k, b, d0, d1: 7,
                          flags=[1, 1, 0, 0, 1, 0]),
                     dict(bo_only=0, log2=0, quant=0, shape=2, clf=0,
                          symbol=lambda k, b, d0, d1: (2 * k) % 8,
                          flags=[0, 1, 0, 1, 0, 1]),
                     dict(bo_only=0, log2=2, quant=3, shape=3, clf=1,
                          symbol=lambda k, b, d0, d1: (b + 2 * d0 + 3 * d1) % 8,
                          flags=[1, 1, 1, 1, 1, 1])), 520, 260),
}

if __name__ == "__main__":
    for name, (planes, w, h) in CASES.items():
        bits = frame_bits(planes, w, h)
        print(name, len(bits), to_hex(bits))
