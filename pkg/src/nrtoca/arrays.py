"""OrderedArray and exhaustive CA/OA/OCA/OOA coverage checks.

A covering array on ``n`` columns is represented as an ordered array on the
poset [n*1]; every t-subset of columns is then an anti-ideal.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from . import kernels
from .poset import AntiIdeal, NrtPoset, anti_ideal_columns, column_indices, enumerate_anti_ideals

MAX_STRENGTH = 12
MAX_TABLE = 2**24


class WildcardError(ValueError):
    """Raised when verifying an array that still carries unset entries."""


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class OrderedArray:
    entries: np.ndarray
    m: int
    s: int
    v: int
    t: int
    lam: int = 1
    wildcards: np.ndarray | None = None
    note: str = ""

    def __post_init__(self) -> None:
        entries = np.ascontiguousarray(self.entries, dtype=np.intc)
        if entries.ndim != 2:
            raise ValueError("entries must be a 2-D array")
        if entries.shape[1] != self.m * self.s:
            raise ValueError(f"{entries.shape[1]} columns, poset [{self.m}*{self.s}] needs {self.m * self.s}")
        if self.v < 1:
            raise ValueError(f"alphabet size must be positive, got {self.v}")
        if not 0 <= self.t <= self.m * self.s:
            raise ValueError(f"strength {self.t} outside 0..{self.m * self.s}")
        if self.lam < 1:
            raise ValueError(f"index must be positive, got {self.lam}")
        mask = self.wildcards
        if mask is not None:
            mask = np.ascontiguousarray(mask, dtype=bool)
            if mask.shape != entries.shape:
                raise ValueError("wildcard mask shape differs from entries")
            if not mask.any():
                mask = None
        live = entries if mask is None else entries[~mask]
        if live.size and (live.min() < 0 or live.max() >= self.v):
            raise ValueError(f"entries outside alphabet 0..{self.v - 1}")
        if mask is not None:
            entries = entries.copy()
            entries[mask] = 0
            mask.flags.writeable = False
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "wildcards", mask)

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def poset(self) -> NrtPoset:
        return NrtPoset(self.m, self.s)

    @property
    def has_wildcards(self) -> bool:
        return self.wildcards is not None

    def block(self, i: int) -> np.ndarray:
        return self.entries[:, i * self.s:(i + 1) * self.s]

    def replace(self, **changes) -> OrderedArray:
        fields = dict(entries=self.entries, m=self.m, s=self.s, v=self.v, t=self.t,
                      lam=self.lam, wildcards=self.wildcards, note=self.note)
        fields.update(changes)
        return OrderedArray(**fields)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedArray):
            return NotImplemented
        same_mask = (self.wildcards is None and other.wildcards is None) or (
            self.wildcards is not None and other.wildcards is not None
            and np.array_equal(self.wildcards, other.wildcards))
        return ((self.m, self.s, self.v, self.t, self.lam) == (other.m, other.s, other.v, other.t, other.lam)
                and np.array_equal(self.entries, other.entries) and same_mask)

    __hash__ = None  # type: ignore[assignment]


def as_ca(entries: np.ndarray, t: int, v: int, lam: int = 1, note: str = "") -> OrderedArray:
    entries = np.asarray(entries)
    return OrderedArray(entries, m=entries.shape[1], s=1, v=v, t=t, lam=lam, note=note)


@dataclass
class Violation:
    anti_ideal: AntiIdeal
    columns: tuple[int, ...]  # 1-based labels
    tuple_: tuple[int, ...]
    count: int


@dataclass
class VerificationReport:
    passed: bool
    exact: bool
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    failing_anti_ideals: int = 0

    def __bool__(self) -> bool:
        return self.passed

    def violating_columns(self) -> set[tuple[int, ...]]:
        return {v.columns for v in self.violations}


def instantiate_wildcards(a: OrderedArray, fill: int = 0) -> OrderedArray:
    if not 0 <= fill < a.v:
        raise ValueError(f"fill symbol {fill} outside alphabet 0..{a.v - 1}")
    if a.wildcards is None:
        return a
    entries = a.entries.copy()
    entries[a.wildcards] = fill
    return a.replace(entries=entries, wildcards=None)


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(parts)]


def verify_oca(a: OrderedArray, *, max_violations: int | None = 1000, threads: int = 1) -> VerificationReport:
    """Check every size-t anti-ideal for lambda-coverage of all v^t tuples."""
    if a.has_wildcards:
        raise WildcardError("array has uninstantiated wildcards; call instantiate_wildcards first")
    t, v, lam = a.t, a.v, a.lam
    if t > MAX_STRENGTH or v**t > MAX_TABLE:
        raise ValueError(f"count table v^t = {v}^{t} exceeds the verification cap")
    poset = a.poset
    ideals = enumerate_anti_ideals(poset, t)
    K = len(ideals)
    if t == 0:
        mins = maxs = np.full(K, a.N, dtype=np.int64)
    elif a.N == 0:
        mins = maxs = np.zeros(K, dtype=np.int64)
    else:
        cols = np.array([column_indices(poset, ai) for ai in ideals], dtype=np.int64).reshape(K, t)
        if threads > 1 and K > 1:
            parts = _chunks(K, threads)
            with ThreadPoolExecutor(max_workers=len(parts)) as pool:
                results = list(pool.map(lambda p: kernels.coverage_extremes(a.entries, cols[p[0]:p[1]], v), parts))
            mins = np.concatenate([r[0] for r in results])
            maxs = np.concatenate([r[1] for r in results])
        else:
            mins, maxs = kernels.coverage_extremes(a.entries, cols, v)
    bad = np.flatnonzero(mins < lam)
    violations: list[Violation] = []
    weights = v ** np.arange(t - 1, -1, -1, dtype=np.int64)
    for k in bad:
        if max_violations is not None and len(violations) >= max_violations:
            break
        ai = ideals[int(k)]
        labels = tuple(anti_ideal_columns(poset, ai))
        idx = a.entries[:, [c - 1 for c in labels]].astype(np.int64) @ weights if t else np.zeros(a.N, np.int64)
        counts = np.bincount(idx, minlength=v**t)
        for tup_idx in np.flatnonzero(counts < lam):
            if max_violations is not None and len(violations) >= max_violations:
                break
            tup = tuple(int(d) for d in np.unravel_index(int(tup_idx), (v,) * t)) if t else ()
            violations.append(Violation(ai, labels, tup, int(counts[tup_idx])))
    passed = bad.size == 0
    exact = passed and bool(np.all(maxs == lam)) and bool(np.all(mins == lam))
    return VerificationReport(passed=passed, exact=exact, violations=violations,
                              checked=K, failing_anti_ideals=int(bad.size))


def verify_ca(a: OrderedArray, **kwargs) -> VerificationReport:
    """Verify as a plain covering array: every t-set of the ``m*s`` columns."""
    flat = a.replace(m=a.n, s=1) if a.s != 1 else a
    return verify_oca(flat, **kwargs)


# -- text format -------------------------------------------------------------

def write_array(a: OrderedArray, fh: TextIO | None = None) -> str:
    out = io.StringIO()
    out.write(f"OCA {a.N} {a.t} {a.m} {a.s} {a.v} {a.lam}\n")
    mask = a.wildcards
    for r in range(a.N):
        cells = []
        for c in range(a.n):
            cells.append("*" if mask is not None and mask[r, c] else str(int(a.entries[r, c])))
        out.write(" ".join(cells) + "\n")
    text = out.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def read_array(source: str | Path | TextIO | Iterable[str]) -> OrderedArray:
    if isinstance(source, Path):
        lines = source.read_text().splitlines()
    elif isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in source]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise FormatError("empty array file")
    head = lines[0].split()
    if len(head) != 7 or head[0] != "OCA":
        raise FormatError(f"bad header {lines[0]!r}; expected 'OCA N t m s v lambda'")
    try:
        N, t, m, s, v, lam = (int(x) for x in head[1:])
    except ValueError as exc:
        raise FormatError(f"non-integer header field in {lines[0]!r}") from exc
    rows = lines[1:]
    if len(rows) != N:
        raise FormatError(f"header says {N} rows, found {len(rows)}")
    entries = np.zeros((N, m * s), dtype=np.intc)
    mask = np.zeros((N, m * s), dtype=bool)
    for r, line in enumerate(rows):
        cells = line.split()
        if len(cells) != m * s:
            raise FormatError(f"row {r + 1} has {len(cells)} entries, expected {m * s}")
        for c, cell in enumerate(cells):
            if cell == "*":
                mask[r, c] = True
            else:
                try:
                    entries[r, c] = int(cell)
                except ValueError as exc:
                    raise FormatError(f"row {r + 1}: bad entry {cell!r}") from exc
    try:
        return OrderedArray(entries, m=m, s=s, v=v, t=t, lam=lam, wildcards=mask)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
