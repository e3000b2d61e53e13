"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeat 5]

Each kernel runs on the same random input under both backends; results are
checked for equality before timings are reported.  A final end-to-end run
of ``redukt bench`` is timed in subprocesses with and without
``REDUKT_DISABLE_NUMBA=1``.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from redukt import _kernels


def random_graph(rng, n, degree=3):
    dst = rng.integers(0, n, size=n * degree)
    indptr = np.arange(0, n * degree + 1, degree, dtype=np.int64)
    return indptr, dst.astype(np.int64)


def random_net(rng, places, transitions):
    pre = (rng.random((transitions, places)) < 0.05).astype(np.int64)
    post = (rng.random((transitions, places)) < 0.05).astype(np.int64)
    m = rng.integers(0, 3, size=places).astype(np.int64)
    return m, pre, post


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best * 1000.0


def kernel_rows(sizes, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        indptr, indices = random_graph(rng, n)
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        marks = rng.integers(0, 4, size=len(indices)).astype(np.int64)
        ncomp, comp = _kernels.scc_python(indptr, indices)
        ncomp_j, comp_j = _kernels.scc_numba(indptr, indices)
        assert ncomp == ncomp_j and np.array_equal(comp, comp_j)
        a = _kernels.component_marks_numpy(src, indices, marks, comp, ncomp)
        b = _kernels.component_marks_numba(src, indices, marks, comp, ncomp)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        m, pre, post = random_net(rng, max(8, n // 100), max(8, n // 10))
        fa, fb = _kernels.fire_numpy(m, pre, post), _kernels.fire_numba(m, pre, post)
        assert all(np.array_equal(x, y) for x, y in zip(fa, fb))
        for name, py, jit, args in (
            ("scc", _kernels.scc_python, _kernels.scc_numba, (indptr, indices)),
            ("component_marks", _kernels.component_marks_numpy, _kernels.component_marks_numba,
             (src, indices, marks, comp, ncomp)),
            ("fire", _kernels.fire_numpy, _kernels.fire_numba, (m, pre, post)),
        ):
            tp = best_of(lambda: py(*args), repeat)
            tj = best_of(lambda: jit(*args), repeat)
            rows.append((name, n, tp, tj))
    return rows


def end_to_end():
    out = {}
    for label, flag in (("numba", "0"), ("python", "1")):
        env = dict(os.environ, REDUKT_DISABLE_NUMBA=flag)
        t = time.perf_counter()
        subprocess.run([sys.executable, "-m", "redukt.cli", "bench"], env=env, check=True,
                       stdout=subprocess.DEVNULL)
        out[label] = time.perf_counter() - t
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        sys.exit("numba backend unavailable (is REDUKT_DISABLE_NUMBA set?)")
    _kernels.warmup()
    print(f"{'kernel':16s} {'n':>8s} {'python ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, n, tp, tj in kernel_rows(args.sizes, args.repeat):
        print(f"{name:16s} {n:8d} {tp:10.3f} {tj:10.3f} {tp / tj if tj else float('inf'):8.1f}x")
    if not args.skip_end_to_end:
        for label, sec in end_to_end().items():
            print(f"redukt bench ({label}): {sec:.1f} s")


if __name__ == "__main__":
    main()
