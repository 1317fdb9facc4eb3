# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Signatures mirror ``_pykernels`` exactly."""

import numpy as np

from libc.stdlib cimport malloc, free, calloc

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


def coverage_extremes(const int[:, ::1] entries, const long long[:, ::1] cols, int v):
    """Per anti-ideal minimum and maximum tuple multiplicity."""
    cdef Py_ssize_t N = entries.shape[0]
    cdef Py_ssize_t K = cols.shape[0]
    cdef Py_ssize_t t = cols.shape[1]
    cdef Py_ssize_t size = 1
    cdef Py_ssize_t a, r, k, idx, i
    cdef long long lo, hi
    for k in range(t):
        size *= v
    mins = np.zeros(K, dtype=np.int64)
    maxs = np.zeros(K, dtype=np.int64)
    cdef long long[::1] mn = mins
    cdef long long[::1] mx = maxs
    cdef long long *counts = <long long *> malloc(size * sizeof(long long))
    if counts == NULL:
        raise MemoryError()
    try:
        with nogil:
            for a in range(K):
                for i in range(size):
                    counts[i] = 0
                for r in range(N):
                    idx = 0
                    for k in range(t):
                        idx = idx * v + entries[r, cols[a, k]]
                    counts[idx] += 1
                lo = counts[0]
                hi = counts[0]
                for i in range(1, size):
                    if counts[i] < lo:
                        lo = counts[i]
                    if counts[i] > hi:
                        hi = counts[i]
                mn[a] = lo
                mx[a] = hi
    finally:
        free(counts)
    return mins, maxs


def uncovered_words(const int[:, ::1] code, int q, int m, int s, int R,
                    long long start, long long stop, long long limit):
    """Scan word indices ``start..stop-1``; return (uncovered count, first ``limit`` indices).

    Word index ``sum x[k] * q**(n-1-k)``: the last coordinate varies fastest.
    """
    cdef Py_ssize_t K = code.shape[0]
    cdef int n = m * s
    cdef long long idx, rest, count = 0, j
    cdef int b, h, d, k, c, last = 0, cc, hit
    if limit < 0:
        limit = 0
    cdef int *x = <int *> calloc(n if n > 0 else 1, sizeof(int))
    cdef long long *buf = <long long *> malloc((limit if limit > 0 else 1) * sizeof(long long))
    if x == NULL or buf == NULL:
        free(x); free(buf)
        raise MemoryError()
    try:
        rest = start
        for k in range(n - 1, -1, -1):
            x[k] = rest % q
            rest //= q
        with nogil:
            idx = start
            while idx < stop:
                hit = 0
                for cc in range(K):
                    # the codeword that covered the previous word goes first
                    c = (last + cc) % K
                    d = 0
                    for b in range(m):
                        for h in range(s - 1, -1, -1):
                            if x[b * s + h] != code[c, b * s + h]:
                                d = d + h + 1
                                break
                        if d > R:
                            break
                    if d <= R:
                        hit = 1
                        last = c
                        break
                if not hit:
                    if count < limit:
                        buf[count] = idx
                    count += 1
                k = n - 1
                while k >= 0:
                    x[k] += 1
                    if x[k] < q:
                        break
                    x[k] = 0
                    k -= 1
                idx += 1
        return count, [buf[j] for j in range(min(count, limit))]
    finally:
        free(x)
        free(buf)


def search_cover(const unsigned long long[::1] masks, unsigned long long full, int k, int maxball):
    """Find ``k`` centers (center 0 always included) whose masks union to ``full``.

    Lexicographic depth-first search with the bound
    ``uncovered > remaining * maxball`` => prune.  Returns ``(witness or None, nodes)``.
    """
    cdef Py_ssize_t n = masks.shape[0]
    cdef long long nodes = 0
    cdef int d, i, rem, unc
    cdef unsigned long long c
    if k <= 0 or n == 0:
        return None, 0
    if masks[0] & full == full:
        return [0], 1
    if k == 1:
        return None, 1
    cdef int *pos = <int *> malloc((k + 1) * sizeof(int))
    cdef int *chosen = <int *> malloc((k + 1) * sizeof(int))
    cdef unsigned long long *cov = <unsigned long long *> malloc((k + 1) * sizeof(unsigned long long))
    cdef int found = 0, depth_found = 0
    if pos == NULL or chosen == NULL or cov == NULL:
        free(pos); free(chosen); free(cov)
        raise MemoryError()
    try:
        with nogil:
            chosen[0] = 0
            cov[0] = masks[0] & full
            d = 1
            pos[1] = 1
            while d >= 1:
                i = pos[d]
                if i > n - k + d:
                    d -= 1
                    if d >= 1:
                        pos[d] += 1
                    continue
                c = cov[d - 1] | (masks[i] & full)
                nodes += 1
                unc = popcount64(full & ~c)
                if unc == 0:
                    chosen[d] = i
                    found = 1
                    depth_found = d
                    break
                rem = k - d - 1
                if rem == 0 or unc > rem * maxball:
                    pos[d] += 1
                    continue
                chosen[d] = i
                cov[d] = c
                d += 1
                pos[d] = i + 1
        if found:
            return [chosen[j] for j in range(depth_found + 1)], nodes
        return None, nodes
    finally:
        free(pos)
        free(chosen)
        free(cov)
