#!/usr/bin/env python3
# Copyright 2026 The UniFormer Attention Authors
# SPDX-License-Identifier: Apache-2.0
"""Generates the golden fixtures under tests/fixtures/.

Independent of the C++ code: MT19937-64 is re-implemented from its published
definition and all attention arithmetic runs in 60-digit mpmath.

    python3 tests/oracles/gen_fixtures.py tests/fixtures
"""

import sys
from pathlib import Path

import mpmath

mpmath.mp.dps = 60
MASK64 = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK64
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK64
        self.index = 312

    def _twist(self):
        upper, lower = 0xFFFFFFFF80000000, 0x7FFFFFFF
        for i in range(312):
            x = (self.mt[i] & upper) | (self.mt[(i + 1) % 312] & lower)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            self.mt[i] = self.mt[(i + 156) % 312] ^ xa
        self.index = 0

    def next(self):
        if self.index >= 312:
            self._twist()
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK64


def uniform(gen):
    # 2 * (x >> 11) * 2^-53 - 1, exact in binary64.
    return 2.0 * ((gen.next() >> 11) * 2.0**-53) - 1.0


def seeded_qkv(b, n, d, seed):
    gen = MT19937_64(seed)
    tensors = []
    for _ in range(3):
        tensors.append([[[uniform(gen) for _ in range(d)] for _ in range(n)] for _ in range(b)])
    return tensors


def softmax(xs):
    m = max(xs)
    es = [mpmath.exp(mpmath.mpf(x) - m) for x in xs]
    s = mpmath.fsum(es)
    return [e / s for e in es]


def vanilla(q, k, v):
    d = len(q[0])
    scale = mpmath.sqrt(d)
    out = []
    for qr in q:
        scores = [mpmath.fsum(mpmath.mpf(a) * b for a, b in zip(qr, kr)) / scale for kr in k]
        w = softmax(scores)
        out.append([mpmath.fsum(w[j] * v[j][c] for j in range(len(v))) for c in range(d)])
    return out


def content_matrix(k, v):
    n, d = len(k), len(k[0])
    cols = [softmax([k[i][f] for i in range(n)]) for f in range(d)]
    return [[mpmath.fsum(cols[f][i] * v[i][c] for i in range(n)) for c in range(d)] for f in range(d)]


def linear(q, k, v):
    c = content_matrix(k, v)
    d = len(q[0])
    out = []
    for qr in q:
        w = softmax(qr)
        out.append([mpmath.fsum(w[f] * c[f][col] for f in range(d)) for col in range(d)])
    return out


def write_fixture(path, t):
    b, n, d = len(t), len(t[0]), len(t[0][0])
    with open(path, "w", newline="\n") as f:
        f.write(f"{b} {n} {d}\n")
        for batch in t:
            for row in batch:
                f.write(" ".join(mpmath.nstr(mpmath.mpf(x), 25, strip_zeros=False) for x in row) + "\n")


def write_inputs(out_dir, stem, qkv):
    for name, t in zip("qkv", qkv):
        with open(out_dir / f"{stem}_{name}.txt", "w", newline="\n") as f:
            f.write(f"{len(t)} {len(t[0])} {len(t[0][0])}\n")
            for batch in t:
                for row in batch:
                    f.write(" ".join(repr(x) for x in row) + "\n")


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
    out_dir.mkdir(parents=True, exist_ok=True)

    q, k, v = seeded_qkv(1, 3, 2, 42)
    write_inputs(out_dir, "vanilla_seed42", (q, k, v))
    write_fixture(out_dir / "vanilla_seed42_out.txt", [vanilla(q[0], k[0], v[0])])

    q, k, v = seeded_qkv(1, 4, 3, 7)
    write_inputs(out_dir, "linear_seed7", (q, k, v))
    write_fixture(out_dir / "linear_seed7_out.txt", [linear(q[0], k[0], v[0])])

    q, k, v = seeded_qkv(1, 6, 3, 19)
    write_inputs(out_dir, "content_seed19", (q, k, v))
    write_fixture(out_dir / "content_seed19_out.txt", [content_matrix(k[0], v[0])])

    # Windowed attention, (B=1, N=8, D=4), windows of 4.
    q, k, v = seeded_qkv(1, 8, 4, 11)
    write_inputs(out_dir, "local_seed11", (q, k, v))
    out = []
    for w in range(2):
        rows = slice(4 * w, 4 * w + 4)
        out.extend(vanilla(q[0][rows], k[0][rows], v[0][rows]))
    write_fixture(out_dir / "local_seed11_out.txt", [out])


if __name__ == "__main__":
    main()
