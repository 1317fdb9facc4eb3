"""Brute-force ground truth for tiny instances."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import ceil

import numpy as np

from . import kernels
from .codes import CoveringCode, word_of_index
from .poset import NrtPoset

EXACT_SPACE_CAP = 64
EXACT_SIZE_CAP = 7
GREEDY_SPACE_CAP = 2**20
IDEAL_CAP = 12


def _space(q: int, m: int, s: int) -> np.ndarray:
    n = m * s
    return np.array(np.unravel_index(np.arange(q**n), (q,) * n), dtype=np.intc).T.reshape(q**n, n)


def distance_matrix(words: np.ndarray, m: int, s: int) -> np.ndarray:
    """Pairwise NRT distances between the rows of ``words``."""
    W = len(words)
    out = np.zeros((W, W), dtype=np.int64)
    for b in range(m):
        blk = words[:, b * s:(b + 1) * s]
        diff = blk[:, None, :] != blk[None, :, :]
        top = s - np.argmax(diff[:, :, ::-1], axis=2)
        out += np.where(diff.any(axis=2), top, 0)
    return out


@dataclass
class ExactResult:
    """``value`` is the exact minimum, or ``None`` when no code of size <= cap exists."""
    value: int | None
    lower_bound: int
    witness: CoveringCode | None
    nodes: int

    def describe(self) -> str:
        if self.value is None:
            return f">= {self.lower_bound}"
        return str(self.value)


def exact_min_covering(q: int, m: int, s: int, R: int, size_cap: int = EXACT_SIZE_CAP) -> ExactResult:
    """Least size of a radius-R covering code of Z_q^(ms), by exhaustive subset search.

    Translation invariance lets the first center be the zero word.  Sizes
    below the sphere-covering bound are skipped without search.
    """
    total = q ** (m * s)
    if total > EXACT_SPACE_CAP:
        raise ValueError(f"space of {total} words exceeds {EXACT_SPACE_CAP}")
    if not 1 <= size_cap <= EXACT_SIZE_CAP:
        raise ValueError(f"size cap must be in 1..{EXACT_SIZE_CAP}")
    words = _space(q, m, s)
    within = distance_matrix(words, m, s) <= R
    weights = np.left_shift(np.uint64(1), np.arange(total, dtype=np.uint64))
    masks = np.ascontiguousarray((within * weights).sum(axis=1, dtype=np.uint64))
    full = (1 << total) - 1
    ball = int(within[0].sum())
    start = max(1, ceil(total / ball))
    nodes = 0
    for k in range(start, size_cap + 1):
        found, used = kernels.search_cover(masks, full, k, ball)
        nodes += used
        if found is not None:
            code = CoveringCode(q, m, s, R, words[found], note="exact search")
            return ExactResult(len(found), len(found), code, nodes)
    return ExactResult(None, max(start, size_cap + 1), None, nodes)


def greedy_covering(q: int, m: int, s: int, R: int, seed: int = 0) -> CoveringCode:
    """Repeatedly add the center covering most uncovered words.

    Gains for all centers at once come from a group convolution of the
    uncovered indicator with the ball around 0.  Seed 0 breaks ties by the
    least word index; other seeds break ties at random.
    """
    n = m * s
    total = q**n
    if total > GREEDY_SPACE_CAP:
        raise ValueError(f"space of {total} words exceeds {GREEDY_SPACE_CAP}")
    shape = (q,) * n
    words = _space(q, m, s)
    dist0 = np.zeros(total, dtype=np.int64)
    for b in range(m):
        blk = words[:, b * s:(b + 1) * s] != 0
        top = s - np.argmax(blk[:, ::-1], axis=1)
        dist0 += np.where(blk.any(axis=1), top, 0)
    ball = (dist0 <= R).reshape(shape).astype(float)
    ball_hat = np.fft.fftn(ball)
    uncovered = np.ones(shape, dtype=float)
    rng = np.random.default_rng(seed) if seed else None
    chosen: list[int] = []
    while uncovered.any():
        gain = np.rint(np.fft.ifftn(np.fft.fftn(uncovered) * ball_hat).real).reshape(-1)
        best = np.flatnonzero(gain == gain.max())
        c = int(best[0]) if rng is None else int(rng.choice(best))
        chosen.append(c)
        # ball(c) = c + ball(0) componentwise mod q
        shifted = (words[dist0 <= R] + words[c]) % q
        uncovered[tuple(shifted.T)] = 0
    return CoveringCode(q, m, s, R, words[chosen], note="greedy")


@dataclass
class IdealCensus:
    ideals: list[tuple[int, ...]]
    histogram: dict[tuple[int, int], int]


def brute_ideals(poset: NrtPoset) -> IdealCensus:
    """Every down-closed label subset, found by testing all 2^(ms) subsets."""
    m, s = poset.m, poset.s
    n = m * s
    if n > IDEAL_CAP:
        raise ValueError(f"poset has {n} elements, cap is {IDEAL_CAP}")
    ideals = []
    for subset in range(1 << n):
        closed = True
        for label in range(n):
            if subset >> label & 1 and label % s and not subset >> (label - 1) & 1:
                closed = False
                break
        if closed:
            ideals.append(tuple(sum(subset >> (b * s + h) & 1 for h in range(s)) for b in range(m)))
    hist = Counter((sum(h), sum(1 for x in h if x)) for h in ideals)
    return IdealCensus(sorted(ideals), dict(hist))


def ball_size(q: int, m: int, s: int, R: int, center: int = 0) -> int:
    """Count words within radius R of the word with index ``center``, by enumeration."""
    words = _space(q, m, s)
    c = words[center]
    d = np.zeros(len(words), dtype=np.int64)
    for b in range(m):
        blk = words[:, b * s:(b + 1) * s] != c[b * s:(b + 1) * s]
        d += np.where(blk.any(axis=1), s - np.argmax(blk[:, ::-1], axis=1), 0)
    return int((d <= R).sum())


__all__ = ["ExactResult", "IdealCensus", "ball_size", "brute_ideals", "distance_matrix",
           "exact_min_covering", "greedy_covering", "word_of_index"]
