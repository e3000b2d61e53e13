"""Hot inner loops, compiled with numba when available.

Set ``REDUKT_DISABLE_NUMBA=1`` to force the pure Python / numpy path.  Both
paths are always importable so benchmarks and tests can compare them; the
module-level names ``scc``, ``component_marks`` and ``fire`` point at the
selected backend.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("REDUKT_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by REDUKT_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None
BACKEND = "numba" if HAVE_NUMBA else "python"


def _tarjan(indptr, indices, n, index, low, comp, onstack, stack, call_v, call_e):
    # Iterative Tarjan; work buffers have length n.  Components are numbered
    # in reverse topological order.  Runs unchanged on lists or int arrays.
    counter = 0
    ncomp = 0
    sp = 0
    for i in range(n):
        index[i] = -1
        onstack[i] = 0
    for root in range(n):
        if index[root] != -1:
            continue
        cp = 0
        call_v[0] = root
        call_e[0] = indptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        onstack[root] = 1
        while cp >= 0:
            v = call_v[cp]
            e = call_e[cp]
            if e < indptr[v + 1]:
                call_e[cp] = e + 1
                w = indices[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = 1
                    cp += 1
                    call_v[cp] = w
                    call_e[cp] = indptr[w]
                elif onstack[w] == 1 and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                cp -= 1
                if cp >= 0:
                    u = call_v[cp]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return ncomp


def _component_marks_loop(src, dst, marks, comp, ncomp, acc, internal):
    for k in range(src.shape[0]):
        c = comp[src[k]]
        if comp[dst[k]] == c:
            acc[c] |= marks[k]
            internal[c] = 1


def _fire_loop(m, pre, post, out_idx, out_m):
    # out_idx / out_m are preallocated for every transition; returns count
    count = 0
    nt, npl = pre.shape
    for t in range(nt):
        ok = True
        for p in range(npl):
            if m[p] < pre[t, p]:
                ok = False
                break
        if ok:
            out_idx[count] = t
            for p in range(npl):
                out_m[count, p] = m[p] - pre[t, p] + post[t, p]
            count += 1
    return count


def scc_python(indptr: np.ndarray, indices: np.ndarray) -> tuple[int, np.ndarray]:
    n = len(indptr) - 1
    bufs = [[0] * n for _ in range(7)]
    ncomp = _tarjan(list(map(int, indptr)), list(map(int, indices)), n, *bufs)
    return ncomp, np.asarray(bufs[2], dtype=np.int64)


def component_marks_numpy(src, dst, marks, comp, ncomp):
    """Per component: union of marks on internal edges, and whether any exist."""
    acc = np.zeros(ncomp, dtype=np.int64)
    internal = np.zeros(ncomp, dtype=np.bool_)
    if len(src):
        same = comp[src] == comp[dst]
        cs = comp[src[same]]
        np.bitwise_or.at(acc, cs, marks[same])
        internal[cs] = True
    return acc, internal


def fire_numpy(m: np.ndarray, pre: np.ndarray, post: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Enabled transition indices and their successor markings."""
    enabled = np.flatnonzero(np.all(pre <= m, axis=1))
    return enabled, m - pre[enabled] + post[enabled]


if HAVE_NUMBA:
    _tarjan_jit = njit(cache=True)(_tarjan)
    _component_marks_jit = njit(cache=True)(_component_marks_loop)
    _fire_jit = njit(cache=True)(_fire_loop)

    def scc_numba(indptr: np.ndarray, indices: np.ndarray) -> tuple[int, np.ndarray]:
        n = len(indptr) - 1
        bufs = [np.empty(n, dtype=np.int64) for _ in range(7)]
        ncomp = _tarjan_jit(np.ascontiguousarray(indptr, dtype=np.int64),
                            np.ascontiguousarray(indices, dtype=np.int64), n, *bufs)
        return int(ncomp), bufs[2]

    def component_marks_numba(src, dst, marks, comp, ncomp):
        acc = np.zeros(ncomp, dtype=np.int64)
        internal = np.zeros(ncomp, dtype=np.uint8)
        _component_marks_jit(src, dst, marks, comp, ncomp, acc, internal)
        return acc, internal.astype(np.bool_)

    def fire_numba(m: np.ndarray, pre: np.ndarray, post: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        nt = pre.shape[0]
        idx = np.empty(nt, dtype=np.int64)
        out = np.empty(pre.shape, dtype=np.int64)
        k = _fire_jit(m, pre, post, idx, out)
        return idx[:k], out[:k]

    scc = scc_numba
    component_marks = component_marks_numba
    fire = fire_numba
else:
    scc = scc_python
    component_marks = component_marks_numpy
    fire = fire_numpy


def warmup() -> None:
    """Trigger JIT compilation so later timings exclude it."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    ncomp, comp = scc(indptr, indices)
    component_marks(indices, indices, indices, comp, ncomp)
    fire(np.zeros(1, dtype=np.int64), np.zeros((1, 1), dtype=np.int64), np.zeros((1, 1), dtype=np.int64))
