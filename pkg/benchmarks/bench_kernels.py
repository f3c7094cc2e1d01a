"""Compiled vs numpy kernels on the same candidate scans.

    python benchmarks/bench_kernels.py [--repeat N] [--limit N]

Both backends must return the same list of valid indices; the script exits
with status 1 if they differ or if the compiled extension is missing.
"""
from __future__ import annotations

import argparse
import sys
import time

from lrtwist import kernels
from lrtwist.catalog import group_algebra, truncated_poly
from lrtwist.exactfield import GF
from lrtwist.search import _arrays, candidate_space

CASES = [
    ("kC2 ⊗ kC2 over F2, R", lambda f: (group_algebra(2, f).alg, group_algebra(2, f).alg), 2, "R"),
    ("kC3 ⊗ k[x]/(x²) over F3, R", lambda f: (group_algebra(3, f).alg, truncated_poly(2, f)), 3, "R"),
    ("kC3 ⊗ k[x]/(x²) over F3, Q", lambda f: (group_algebra(3, f).alg, truncated_poly(2, f)), 3, "Q"),
    ("k[x]/(x³) ⊗ k[y]/(y²) over F2, R", lambda f: (truncated_poly(3, f), truncated_poly(2, f)), 2, "R"),
]


def _time(fn, repeat: int) -> tuple[float, list[int]]:
    best, out = float("inf"), []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--limit", type=int, default=20000, help="candidates per numpy scan")
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not built; run `python setup.py build_ext --inplace`")
        return 1
    print(f"{'case':<36}{'candidates':>11}{'valid':>7}{'cython s':>10}{'numpy s':>10}{'speedup':>9}")
    ok = True
    for name, make, p, kind in CASES:
        a, b = make(GF(p))
        space = candidate_space(a, b, kind)
        ca, ua = _arrays(a)
        cb, ub = _arrays(b)
        stop = min(space.size, args.limit)
        code = 0 if kind == "R" else 1

        def run(mod):
            return lambda: mod.scan(ca, cb, ua, ub, space.base, space.rows, space.cols, p, 0, stop, code)

        tc, vc = _time(run(kernels.compiled), args.repeat)
        tp, vp = _time(run(kernels.pure), 1)
        same = vc == vp
        ok &= same
        print(f"{name:<36}{stop:>11}{len(vc):>7}{tc:>10.4f}{tp:>10.4f}{tp / max(tc, 1e-9):>8.0f}x"
              + ("" if same else "  MISMATCH"))
    full = candidate_space(group_algebra(3, GF(3)).alg, truncated_poly(2, GF(3)), "R")
    ca, ua = _arrays(group_algebra(3, GF(3)).alg)
    cb, ub = _arrays(truncated_poly(2, GF(3)))
    t, v = _time(lambda: kernels.compiled.scan(ca, cb, ua, ub, full.base, full.rows, full.cols, 3, 0,
                                               full.size, 0), 1)
    print(f"full compiled scan kC3 ⊗ k[x]/(x²) over F3: {full.size} candidates, {len(v)} valid, {t:.2f} s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
