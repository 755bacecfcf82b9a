"""Integer kernels with a numba path and a pure-numpy path.

Two hot spots live here: counting lattice points of generalized
Gelfand-Tsetlin polytopes (Ehrhart interpolation calls this on many
dilates) and the integer Ryser permanent.  Both backends return identical
Python ints; :mod:`schubdeg._accel` picks one.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ._accel import HAVE_NUMBA, resolve

INT64_SAFE = 2**62

if HAVE_NUMBA:
    from numba import njit
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------------------
# Gelfand-Tsetlin lattice points


@njit(cache=True)
def _gt_count_numba(lam, b):
    n = lam.shape[0]
    npos = n * (n - 1) // 2
    P = np.zeros((n + 2, n + 2), np.int64)
    for j in range(1, n + 1):
        P[n, j] = lam[j - 1]
    rows = np.empty(npos, np.int64)
    cols = np.empty(npos, np.int64)
    t = 0
    for i in range(n - 1, 0, -1):
        for j in range(1, i + 1):
            rows[t] = i
            cols[t] = j
            t += 1
    cur = np.empty(npos, np.int64)
    top = np.empty(npos, np.int64)
    count = 0
    k = 0
    entering = True
    while True:
        if entering:
            if k == npos:
                count += 1
                entering = False
                k -= 1
                continue
            i = rows[k]
            j = cols[k]
            hi = P[i + 1, j]
            lo = P[i + 1, j + 1]
            if i >= b[j - 1]:
                v = lam[j - 1]
                if v < lo or v > hi:
                    entering = False
                    k -= 1
                    continue
                lo = v
                hi = v
            if lo > hi:
                entering = False
                k -= 1
                continue
            cur[k] = lo
            top[k] = hi
            P[i, j] = lo
            k += 1
        else:
            if k < 0:
                break
            if cur[k] < top[k]:
                cur[k] += 1
                P[rows[k], cols[k]] = cur[k]
                k += 1
                entering = True
            else:
                k -= 1
    return count


def _gt_count_numpy(lam: np.ndarray, b: np.ndarray) -> int:
    n = lam.shape[0]
    states = lam.reshape(1, n).astype(np.int64)
    counts = np.ones(1, dtype=object)
    for i in range(n - 1, 0, -1):
        # build row i (i entries) from row i+1, one entry at a time
        new = np.empty((states.shape[0], 0), dtype=np.int64)
        parent = np.arange(states.shape[0])
        for j in range(1, i + 1):
            hi = states[parent, j - 1]
            lo = states[parent, j]
            if i >= b[j - 1]:
                v = lam[j - 1]
                keep = (lo <= v) & (v <= hi)
                parent, new = parent[keep], new[keep]
                new = np.column_stack([new, np.full(parent.shape[0], v, dtype=np.int64)])
                continue
            width = np.maximum(hi - lo + 1, 0)
            rep = np.repeat(np.arange(parent.shape[0]), width)
            starts = np.cumsum(width) - width
            offs = np.arange(rep.shape[0]) - np.repeat(starts, width)
            vals = lo[rep] + offs
            parent = parent[rep]
            new = np.column_stack([new[rep], vals])
        if new.shape[0] == 0:
            return 0
        uniq, inv = np.unique(new, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        agg = np.zeros(uniq.shape[0], dtype=object)
        np.add.at(agg, inv, counts[parent])
        states, counts = uniq, agg
    return int(counts.sum())


def gt_count(lam: Sequence[int], b: Sequence[int], backend: str = "auto") -> int:
    """Number of integer GT patterns with top row ``lam`` frozen along the flag ``b``."""
    lam_a = np.asarray(lam, dtype=np.int64)
    b_a = np.asarray(b, dtype=np.int64)
    if lam_a.shape != b_a.shape:
        raise ValueError("shape and flag must have equal length")
    if lam_a.size and (np.diff(lam_a) > 0).any():
        raise ValueError("top row must be weakly decreasing")
    if lam_a.size == 0:
        return 1
    if resolve(backend) == "numba":
        return int(_gt_count_numba(lam_a, b_a))
    return _gt_count_numpy(lam_a, b_a)


# ---------------------------------------------------------------------------
# integer permanent


@njit(cache=True)
def _ryser_numba(m):
    n = m.shape[0]
    rowsum = np.zeros(n, np.int64)
    total = 0
    gray_prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ gray_prev
        col = 0
        while not (diff >> col) & 1:
            col += 1
        if gray & diff:
            for i in range(n):
                rowsum[i] += m[i, col]
        else:
            for i in range(n):
                rowsum[i] -= m[i, col]
        gray_prev = gray
        prod = 1
        for i in range(n):
            prod *= rowsum[i]
        bits = 0
        g = gray
        while g:
            bits += g & 1
            g >>= 1
        if (n - bits) % 2:
            total -= prod
        else:
            total += prod
    return total


def _ryser_numpy(m: np.ndarray) -> int:
    n = m.shape[0]
    subsets = ((np.arange(1, 1 << n)[:, None] >> np.arange(n)) & 1).astype(np.int64)
    sums = subsets @ m.T
    prods = np.prod(sums, axis=1)
    signs = np.where((n - subsets.sum(axis=1)) % 2 == 1, -1, 1)
    return int((signs * prods).sum())


def int64_safe(m: np.ndarray) -> bool:
    """Every intermediate of Ryser's formula fits in a signed 64-bit int."""
    n = m.shape[0]
    bound = 1 << n
    for row in np.abs(m).sum(axis=1).tolist():
        bound *= max(int(row), 1)
    return bound < INT64_SAFE


def permanent_int(matrix, backend: str = "auto") -> int:
    """Ryser permanent of a small integer matrix; raises ``OverflowError`` when unsafe."""
    m = np.asarray(matrix, dtype=np.int64)
    if m.ndim in (1, 2) and m.shape[0] == 0:
        return 1
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("permanent needs a square matrix")
    if not int64_safe(m):
        raise OverflowError("entries too large for the 64-bit kernel")
    if resolve(backend) == "numba":
        return int(_ryser_numba(m))
    return _ryser_numpy(m)
