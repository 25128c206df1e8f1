"""
Compiled row kernels for the Fejér displacement.

Rows are grouped into fixed chunks of ``CHUNK_ROWS``. Every chunk's partial
sum is accumulated in row order, and chunk partials are combined in chunk
order, so the result does not depend on how chunks are assigned to threads.
The kernels release the GIL.
"""
import numpy as np
from numba import njit

CHUNK_ROWS = 256


def n_chunks(m):
    return (m + CHUNK_ROWS - 1) // CHUNK_ROWS


@njit(nogil=True, cache=True)
def chunk_partials(A, b, nsq, x, k_lo, k_hi, partials, counts):
    m, n = A.shape
    for k in range(k_lo, k_hi):
        acc = partials[k]
        for j in range(n):
            acc[j] = 0.0
        cnt = 0
        lo = k * CHUNK_ROWS
        hi = min(lo + CHUNK_ROWS, m)
        for i in range(lo, hi):
            dot = 0.0
            for j in range(n):
                dot += A[i, j] * x[j]
            r = dot - b[i]
            if r > 0.0:
                cnt += 1
                f = r / nsq[i]
                for j in range(n):
                    acc[j] += f * A[i, j]
        counts[k] = cnt


@njit(nogil=True, cache=True)
def combine(partials, counts, out):
    n = out.shape[0]
    for j in range(n):
        out[j] = 0.0
    h = 0
    for k in range(partials.shape[0]):
        if counts[k] == 0:
            continue
        h += counts[k]
        acc = partials[k]
        for j in range(n):
            out[j] += acc[j]
    if h > 0:
        for j in range(n):
            out[j] /= h
    return h


def empty_workspace(m, n):
    k = n_chunks(m)
    return np.empty((k, n)), np.empty(k, dtype=np.int64)
