"""Shared fixtures and slow-but-obvious reference checkers.

The reference checkers deliberately avoid the library's anti-ideal
enumeration and kernels: they walk all column subsets / all words in plain
Python so they can serve as an independent oracle.
"""

from __future__ import annotations

import itertools
import sys
from collections import Counter

import numpy as np
import pytest

from nrtoca.arrays import OrderedArray
from nrtoca.poset import NrtPoset, is_anti_ideal

SMALL_OCA_ROWS = ["01010101", "11100000", "00111010", "10001100", "00000011"]


@pytest.fixture
def small_oca() -> OrderedArray:
    entries = np.array([[int(c) for c in row] for row in SMALL_OCA_ROWS])
    return OrderedArray(entries, m=4, s=2, v=2, t=2)


def reference_anti_ideals(m: int, s: int, t: int) -> list[tuple[int, ...]]:
    """All t-subsets of 1..ms that are up-closed, found by brute force."""
    poset = NrtPoset(m, s)
    return [c for c in itertools.combinations(range(1, m * s + 1), t) if is_anti_ideal(poset, c)]


def reference_covers(entries: np.ndarray, m: int, s: int, v: int, t: int, lam: int = 1) -> bool:
    for cols in reference_anti_ideals(m, s, t):
        seen = Counter(tuple(int(row[c - 1]) for c in cols) for row in entries)
        if any(seen[tup] < lam for tup in itertools.product(range(v), repeat=t)):
            return False
    return True


def reference_distance(x, y, m: int, s: int) -> int:
    total = 0
    for b in range(m):
        for h in range(s, 0, -1):
            if x[b * s + h - 1] != y[b * s + h - 1]:
                total += h
                break
    return total


def reference_code_covers(words, q: int, m: int, s: int, R: int) -> bool:
    words = [tuple(int(x) for x in w) for w in words]
    return all(any(reference_distance(x, c, m, s) <= R for c in words)
               for x in itertools.product(range(q), repeat=m * s))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
