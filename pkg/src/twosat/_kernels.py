"""Exhaustive bitmask sweeps over small digraph families.

Each *item* (a clause, or a single arc) switches on one or two arcs of a
digraph on ``V <= 16`` vertices. A sweep visits every item subset in a mask
range, takes the transitive closure of the resulting digraph and tallies
masks by popcount for one of three predicates:

``MODE_SAT``      no variable ``x`` with paths ``x -> ~x`` and ``~x -> x``
``MODE_CSCC``     one SCC spans all vertices and some variable is contradictory
``MODE_STRONG``   the digraph is strongly connected

Two interchangeable back ends exist: numba-compiled loops over bitset rows,
and a numpy path that batches masks and closes adjacency tensors by repeated
boolean squaring. Set ``TWOSAT_DISABLE_NUMBA=1`` to force the numpy path.
"""
from __future__ import annotations

import os

import numpy as np

MODE_SAT = 0
MODE_CSCC = 1
MODE_STRONG = 2

# the TBB layer warns about version mismatches on some installs; workqueue
# is always available and the sweeps never call the kernels concurrently
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    if os.environ.get("TWOSAT_DISABLE_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("numba disabled by TWOSAT_DISABLE_NUMBA")
    from numba import njit, prange
except ImportError:
    njit = None
    HAVE_NUMBA = False
else:
    HAVE_NUMBA = True


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


def set_threads(jobs):
    """Cap the numba worker threads (no-op on the numpy path)."""
    if not HAVE_NUMBA or not jobs:
        return
    import numba
    numba.set_num_threads(max(1, min(int(jobs), numba.config.NUMBA_NUM_THREADS)))


# ---------------------------------------------------------------------------
# numpy back end

_BATCH = 1 << 15


def _tally_numpy(src, dst, n_vertices, n_vars, mode, lo, hi):
    n_items = src.shape[0]
    counts = np.zeros(n_items + 1, dtype=np.int64)
    eye = np.eye(n_vertices, dtype=bool)
    steps = max(1, int(np.ceil(np.log2(max(n_vertices, 2)))))
    shifts = np.arange(n_items, dtype=np.int64)
    for start in range(lo, hi, _BATCH):
        masks = np.arange(start, min(hi, start + _BATCH), dtype=np.int64)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(bool)
        adj = np.zeros((masks.size, n_vertices, n_vertices), dtype=bool)
        for item in range(n_items):
            for a in range(src.shape[1]):
                if src[item, a] >= 0:
                    adj[:, src[item, a], dst[item, a]] |= bits[:, item]
        reach = adj.copy()
        for _ in range(steps):
            r8 = reach.astype(np.uint8)
            reach = reach | (np.matmul(r8, r8) > 0)
        popcount = bits.sum(axis=1)
        if mode == MODE_STRONG:
            keep = (reach | eye).all(axis=(1, 2))
        else:
            pos = np.arange(0, 2 * n_vars, 2)
            contra = (reach[:, pos, pos + 1] & reach[:, pos + 1, pos]).any(axis=1)
            if mode == MODE_SAT:
                keep = ~contra
            else:
                keep = contra & (reach | eye).all(axis=(1, 2))
        counts += np.bincount(popcount[keep], minlength=n_items + 1)
    return counts


# ---------------------------------------------------------------------------
# numba back end

if HAVE_NUMBA:

    @njit(cache=True)
    def _close(reach, n_vertices):
        for k in range(n_vertices):
            bit = np.uint32(1) << np.uint32(k)
            row = reach[k]
            for i in range(n_vertices):
                if reach[i] & bit:
                    reach[i] |= row

    @njit(cache=True)
    def _tally_range(src, dst, n_vertices, n_vars, mode, lo, hi, counts):
        n_items = src.shape[0]
        width = src.shape[1]
        full = (np.uint32(1) << np.uint32(n_vertices)) - np.uint32(1)
        reach = np.zeros(n_vertices, dtype=np.uint32)
        for mask in range(lo, hi):
            reach[:] = 0
            pc = 0
            for item in range(n_items):
                if (mask >> item) & 1:
                    pc += 1
                    for a in range(width):
                        s = src[item, a]
                        if s >= 0:
                            reach[s] |= np.uint32(1) << np.uint32(dst[item, a])
            _close(reach, n_vertices)
            strong = True
            if mode != MODE_SAT:
                for i in range(n_vertices):
                    if (reach[i] | (np.uint32(1) << np.uint32(i))) != full:
                        strong = False
                        break
            contra = False
            if mode != MODE_STRONG:
                for x in range(n_vars):
                    p = 2 * x
                    if (reach[p] >> np.uint32(p + 1)) & 1 and (reach[p + 1] >> np.uint32(p)) & 1:
                        contra = True
                        break
            if mode == MODE_SAT:
                keep = not contra
            elif mode == MODE_CSCC:
                keep = contra and strong
            else:
                keep = strong
            if keep:
                counts[pc] += 1

    @njit(parallel=True, cache=True)
    def _tally_numba(src, dst, n_vertices, n_vars, mode, lo, hi, n_chunks):
        n_items = src.shape[0]
        partial = np.zeros((n_chunks, n_items + 1), dtype=np.int64)
        total = hi - lo
        for ch in prange(n_chunks):
            start = lo + total * ch // n_chunks
            stop = lo + total * (ch + 1) // n_chunks
            _tally_range(src, dst, n_vertices, n_vars, mode, start, stop, partial[ch])
        return partial.sum(axis=0)


def tally(src, dst, n_vertices, n_vars, mode, lo, hi):
    """Popcount histogram of the masks in ``[lo, hi)`` satisfying ``mode``.

    ``src[i, a] -> dst[i, a]`` is arc ``a`` switched on by item ``i``; unused
    arc slots hold ``-1``.
    """
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    if n_vertices > 16:
        raise ValueError("bitset kernels support at most 16 vertices")
    if HAVE_NUMBA:
        n_chunks = max(1, min(64, (hi - lo) >> 12))
        return _tally_numba(src, dst, n_vertices, n_vars, mode, lo, hi, n_chunks)
    return _tally_numpy(src, dst, n_vertices, n_vars, mode, lo, hi)


def tally_numpy(src, dst, n_vertices, n_vars, mode, lo, hi):
    """The numpy path regardless of the environment flag (used for cross-checks)."""
    return _tally_numpy(np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64),
                        n_vertices, n_vars, mode, lo, hi)
