"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

from __future__ import annotations

import numpy as np


def coverage_extremes(entries: np.ndarray, cols: np.ndarray, v: int) -> tuple[np.ndarray, np.ndarray]:
    K, t = cols.shape
    size = v**t
    weights = v ** np.arange(t - 1, -1, -1, dtype=np.int64)
    mins = np.zeros(K, dtype=np.int64)
    maxs = np.zeros(K, dtype=np.int64)
    for a in range(K):
        idx = entries[:, cols[a]].astype(np.int64) @ weights
        counts = np.bincount(idx, minlength=size)
        mins[a] = counts.min()
        maxs[a] = counts.max()
    return mins, maxs


def _block_distance(words: np.ndarray, center: np.ndarray, s: int) -> np.ndarray:
    """Height of the topmost disagreement per row of ``words`` (shape (W, s))."""
    diff = words != center
    # argmax over reversed heights finds the topmost True
    top = s - np.argmax(diff[:, ::-1], axis=1)
    return np.where(diff.any(axis=1), top, 0)


def uncovered_words(code: np.ndarray, q: int, m: int, s: int, R: int,
                    start: int, stop: int, limit: int) -> tuple[int, list[int]]:
    n = m * s
    if stop <= start:
        return 0, []
    block_vals = np.array(np.unravel_index(np.arange(q**s), (q,) * s)).T  # (q^s, s)
    covered = np.zeros((q**s,) * m, dtype=bool)
    for c in code:
        total = np.zeros((1,) * m, dtype=np.int64)
        for b in range(m):
            d = _block_distance(block_vals, c[b * s:(b + 1) * s], s)
            shape = [1] * m
            shape[b] = q**s
            total = total + d.reshape(shape)
        covered |= total <= R
    # the block-major index coincides with the word index (last coordinate fastest)
    flat = covered.reshape(-1)[start:stop]
    miss = np.flatnonzero(~flat)
    return int(miss.size), [int(start + i) for i in miss[:limit]]


def search_cover(masks: np.ndarray, full: int, k: int, maxball: int) -> tuple[list[int] | None, int]:
    masks = [int(x) & full for x in masks]
    n = len(masks)
    if k <= 0 or n == 0:
        return None, 0
    if masks[0] == full:
        return [0], 1
    if k == 1:
        return None, 1
    nodes = 0
    chosen = [0] * (k + 1)
    cov = [0] * (k + 1)
    pos = [0] * (k + 1)
    cov[0] = masks[0]
    d = 1
    pos[1] = 1
    while d >= 1:
        i = pos[d]
        if i > n - k + d:
            d -= 1
            if d >= 1:
                pos[d] += 1
            continue
        c = cov[d - 1] | masks[i]
        nodes += 1
        unc = (full & ~c).bit_count()
        if unc == 0:
            chosen[d] = i
            return chosen[: d + 1], nodes
        rem = k - d - 1
        if rem == 0 or unc > rem * maxball:
            pos[d] += 1
            continue
        chosen[d] = i
        cov[d] = c
        d += 1
        pos[d] = i + 1
    return None, nodes
