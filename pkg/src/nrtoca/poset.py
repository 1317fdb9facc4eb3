"""The NRT poset [m*s]: m disjoint chains of length s.

Columns are labelled 1..m*s.  Block ``i`` (0-based) holds labels
``i*s + 1 .. (i+1)*s``; label ``i*s + h`` sits at height ``h`` in its chain
(1 is the bottom, ``s`` the top).  Ideals are stored as height vectors,
anti-ideals as top-count vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class NrtPoset:
    m: int
    s: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.s < 1:
            raise ValueError(f"poset needs m >= 1 and s >= 1, got m={self.m}, s={self.s}")

    @property
    def size(self) -> int:
        return self.m * self.s

    def block(self, i: int) -> range:
        """Labels of block ``i``, bottom first."""
        return range(i * self.s + 1, (i + 1) * self.s + 1)

    def height(self, label: int) -> int:
        return (label - 1) % self.s + 1

    def block_of(self, label: int) -> int:
        return (label - 1) // self.s


@dataclass(frozen=True)
class AntiIdeal:
    """Top-justified selection: ``counts[i]`` top elements of block ``i``."""

    counts: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.counts)


def _compositions(total: int, parts: int, cap: int) -> list[tuple[int, ...]]:
    # lexicographic order of the count vector
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(min(cap, total) + 1):
        rest_max = cap * (parts - 1)
        if total - first > rest_max:
            continue
        for tail in _compositions(total - first, parts - 1, cap):
            out.append((first,) + tail)
    return out


def enumerate_anti_ideals(poset: NrtPoset, t: int) -> list[AntiIdeal]:
    if not 0 <= t <= poset.size:
        raise ValueError(f"anti-ideal size {t} outside 0..{poset.size}")
    return [AntiIdeal(c) for c in _compositions(t, poset.m, poset.s)]


def anti_ideal_columns(poset: NrtPoset, a: AntiIdeal | Sequence[int]) -> list[int]:
    """1-based column labels of an anti-ideal, blocks ascending, bottom to top."""
    counts = a.counts if isinstance(a, AntiIdeal) else tuple(a)
    if len(counts) != poset.m:
        raise ValueError(f"count vector has length {len(counts)}, poset has {poset.m} blocks")
    cols = []
    for i, j in enumerate(counts):
        if not 0 <= j <= poset.s:
            raise ValueError(f"block {i} count {j} outside 0..{poset.s}")
        top = (i + 1) * poset.s
        cols.extend(range(top - j + 1, top + 1))
    return cols


def column_indices(poset: NrtPoset, a: AntiIdeal | Sequence[int]) -> list[int]:
    """0-based array column indices of an anti-ideal."""
    return [c - 1 for c in anti_ideal_columns(poset, a)]


def is_anti_ideal(poset: NrtPoset, labels: Sequence[int]) -> bool:
    """Check up-closure of an arbitrary label set directly."""
    chosen = set(labels)
    for c in chosen:
        b, h = poset.block_of(c), poset.height(c)
        for hh in range(h + 1, poset.s + 1):
            if b * poset.s + hh not in chosen:
                return False
    return True


def block_heights(poset: NrtPoset, diff_support: Sequence[bool]) -> list[int]:
    """Per-block height of the topmost ``True`` position (0 when none)."""
    s = poset.s
    heights = []
    for i in range(poset.m):
        h = 0
        for k in range(s - 1, -1, -1):
            if diff_support[i * s + k]:
                h = k + 1
                break
        heights.append(h)
    return heights


def nrt_distance(poset: NrtPoset, x: Sequence[int], y: Sequence[int]) -> int:
    """Size of the ideal generated by the support of ``x - y``."""
    n = poset.size
    if len(x) != n or len(y) != n:
        raise ValueError(f"words must have length {n}, got {len(x)} and {len(y)}")
    return sum(block_heights(poset, [a != b for a, b in zip(x, y)]))


@dataclass(frozen=True)
class SphereProfile:
    q: int
    m: int
    s: int
    R: int
    omega: dict[tuple[int, int], int]  # (i, j) -> number of ideals of size i with j maximal elements
    volume: int


def omega_table(m: int, s: int) -> np.ndarray:
    """``table[i, j]`` counts height vectors with sum ``i`` and ``j`` nonzero entries.

    Product over blocks of ``1 + y*(x + x^2 + ... + x^s)``.
    """
    table = np.zeros((m * s + 1, m + 1), dtype=object)
    table[0, 0] = 1
    for _ in range(m):
        nxt = np.zeros_like(table)
        for i in range(m * s + 1):
            for j in range(m + 1):
                c = table[i, j]
                if not c:
                    continue
                nxt[i, j] += c
                if j + 1 <= m:
                    for h in range(1, s + 1):
                        if i + h <= m * s:
                            nxt[i + h, j + 1] += c
        table = nxt
    return table


def sphere_profile(q: int, m: int, s: int, R: int) -> SphereProfile:
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if m < 1 or s < 1:
        raise ValueError(f"poset needs m >= 1 and s >= 1, got m={m}, s={s}")
    if not 0 <= R <= m * s:
        raise ValueError(f"radius {R} outside 0..{m * s}")
    table = omega_table(m, s)
    omega = {}
    for i in range(1, m * s + 1):
        for j in range(1, min(m, i) + 1):
            omega[(i, j)] = int(table[i, j])
    volume = 1
    for i in range(1, R + 1):
        for j in range(1, min(m, i) + 1):
            volume += q ** (i - j) * (q - 1) ** j * omega[(i, j)]
    return SphereProfile(q=q, m=m, s=s, R=R, omega=omega, volume=volume)


def hamming_ball(q: int, n: int, R: int) -> int:
    from math import comb

    return 1 + sum(comb(n, i) * (q - 1) ** i for i in range(1, R + 1))


def all_words(q: int, n: int) -> itertools.product:
    return itertools.product(range(q), repeat=n)
