#!/usr/bin/env python3
"""Compare the batch multiplication kernels on identical inputs.

Times three ways of computing N products in F_{p^n}, with the elements
held as rows of an (N, n) coefficient matrix:

  scalar   one FqElem.__mul__ call per pair (the non-batch baseline)
  numpy    vectorized shift-and-accumulate convolution + table reduction
  numba    jitted row loops over the same table (skipped if unavailable)

It also times a whole-field perfectness check through each batch backend,
since that sweep is what the kernels exist for.

Run:  python3 benchmarks/bench_backends.py [--rows 40000] [--reps 5]
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from perffield import _accel
from perffield.fqtower import check_perfect, make_field

FIELDS = ((2, 8), (3, 5), (13, 4))


def best_of(fn, reps: int) -> float:
    out = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out


def bench_mul(p: int, n: int, rows: int, reps: int) -> dict[str, float]:
    field = make_field(p, n)
    red = _accel.reduction_table(field.modulus, p)
    rng = np.random.default_rng(20260817)
    A = rng.integers(0, p, size=(rows, n), dtype=np.int64)
    B = rng.integers(0, p, size=(rows, n), dtype=np.int64)

    xs = [field.elem(row) for row in A.tolist()]
    ys = [field.elem(row) for row in B.tolist()]

    times = {
        "scalar": best_of(lambda: [x * y for x, y in zip(xs, ys)], reps),
        "numpy": best_of(lambda: _accel.numpy_batch_mulmod(A, B, red, p), reps),
    }
    if _accel.HAVE_NUMBA:
        _accel.numba_batch_mulmod(A[:2], B[:2], red, p)  # trigger the JIT
        times["numba"] = best_of(
            lambda: _accel.numba_batch_mulmod(A, B, red, p), reps
        )

    got = _accel.numpy_batch_mulmod(A, B, red, p)
    expect = np.array([(x * y).coeffs for x, y in zip(xs, ys)], dtype=np.int64)
    assert np.array_equal(got, expect), "numpy kernel disagrees with FqElem"
    if _accel.HAVE_NUMBA:
        assert np.array_equal(_accel.numba_batch_mulmod(A, B, red, p), expect)
    return times


def bench_sweep(p: int, n: int, reps: int) -> dict[str, float]:
    field = make_field(p, n)
    times = {}
    for backend in ("numpy", "numba"):
        if backend == "numba" and not _accel.HAVE_NUMBA:
            continue
        os.environ["PERFFIELD_BACKEND"] = backend
        check_perfect(field)  # warm the JIT / page in tables
        times[backend] = best_of(lambda: check_perfect(field), reps)
    os.environ.pop("PERFFIELD_BACKEND", None)
    return times


def fmt(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.3f} s "


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=40000, help="pairs per product batch")
    ap.add_argument("--reps", type=int, default=5, help="repetitions, best kept")
    args = ap.parse_args()

    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"\nbatch multiply, {args.rows} products per call (best of {args.reps})")
    header = f"{'field':>10} {'scalar':>12} {'numpy':>12} {'numba':>12} {'numpy/numba':>12}"
    print(header)
    print("-" * len(header))
    for p, n in FIELDS:
        t = bench_mul(p, n, args.rows, args.reps)
        nb = fmt(t["numba"]) if "numba" in t else "        n/a"
        ratio = f"{t['numpy'] / t['numba']:11.1f}x" if "numba" in t else "         n/a"
        print(f"{f'F_{p}^{n}':>10} {fmt(t['scalar']):>12} {fmt(t['numpy']):>12} {nb:>12} {ratio:>12}")

    print(f"\nfull perfectness check, every element once (best of {args.reps})")
    header = f"{'field':>10} {'numpy':>12} {'numba':>12}"
    print(header)
    print("-" * len(header))
    for p, n in ((2, 16), (3, 10), (13, 4)):
        t = bench_sweep(p, n, args.reps)
        nb = fmt(t["numba"]) if "numba" in t else "        n/a"
        print(f"{f'F_{p}^{n}':>10} {fmt(t['numpy']):>12} {nb:>12}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
