"""Covering codes in NRT space and their constructions.

Words are length ``m*s`` integer vectors, block-major and bottom-first within a
block, so ``word[i*s + h - 1]`` is the entry of block ``i`` at height ``h``.
"""

from __future__ import annotations

import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import numpy as np

from . import kernels
from .arrays import FormatError, OrderedArray, instantiate_wildcards
from .poset import NrtPoset

MAX_SPACE = 2**26


@dataclass(frozen=True)
class CoveringCode:
    q: int
    m: int
    s: int
    R: int
    words: np.ndarray
    note: str = ""

    def __post_init__(self) -> None:
        words = np.ascontiguousarray(self.words, dtype=np.intc)
        if words.ndim != 2 or words.shape[1] != self.m * self.s:
            raise ValueError(f"words must have shape (K, {self.m * self.s})")
        if self.q < 1:
            raise ValueError("alphabet size must be positive")
        if not 0 <= self.R <= self.m * self.s:
            raise ValueError(f"radius {self.R} outside 0..{self.m * self.s}")
        if words.size and (words.min() < 0 or words.max() >= self.q):
            raise ValueError(f"entries outside 0..{self.q - 1}")
        if len(np.unique(words, axis=0)) != len(words):
            raise ValueError("duplicate codewords")
        words.flags.writeable = False
        object.__setattr__(self, "words", words)

    @property
    def size(self) -> int:
        return self.words.shape[0]

    @property
    def n(self) -> int:
        return self.m * self.s

    @property
    def poset(self) -> NrtPoset:
        return NrtPoset(self.m, self.s)

    def word_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in w) for w in self.words}

    def __len__(self) -> int:
        return self.size


@dataclass
class CoverageReport:
    passed: bool
    uncovered_count: int
    uncovered: list[tuple[int, ...]] = field(default_factory=list)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.passed


def word_of_index(idx: int, q: int, n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in np.unravel_index(idx, (q,) * n)) if n else ()


def index_of_word(word: Iterable[int], q: int) -> int:
    idx = 0
    for x in word:
        idx = idx * q + int(x)
    return idx


def verify_covering(code: CoveringCode, *, threads: int = 1, max_uncovered: int = 100) -> CoverageReport:
    """Scan the whole space; pass iff every word lies within radius R of a codeword."""
    total = code.q**code.n
    if total > MAX_SPACE:
        raise ValueError(f"space of {total} words exceeds the verification cap {MAX_SPACE}")
    if code.size == 0:
        words = [word_of_index(i, code.q, code.n) for i in range(min(total, max_uncovered))]
        return CoverageReport(False, total, words, total)
    parts = max(1, min(threads, total))
    bounds = np.linspace(0, total, parts + 1).astype(np.int64)
    args = [(int(bounds[i]), int(bounds[i + 1])) for i in range(parts)]

    def scan(span: tuple[int, int]) -> tuple[int, list[int]]:
        return kernels.uncovered_words(code.words, code.q, code.m, code.s, code.R,
                                       span[0], span[1], max_uncovered)

    if parts == 1:
        results = [scan(args[0])]
    else:
        with ThreadPoolExecutor(max_workers=parts) as pool:
            results = list(pool.map(scan, args))
    count = sum(r[0] for r in results)
    first = [i for r in results for i in r[1]][:max_uncovered]
    return CoverageReport(count == 0, count, [word_of_index(i, code.q, code.n) for i in first], total)


# -- constructions -------------------------------------------------------------

def _from_rows(rows: Iterable[Iterable[int]], n: int) -> np.ndarray:
    return np.array(list(rows), dtype=np.intc).reshape(-1, n)


def whole_space(q: int, m: int, s: int) -> CoveringCode:
    """Every word; a covering code of radius 0."""
    n = m * s
    return CoveringCode(q, m, s, 0, _from_rows(itertools.product(range(q), repeat=n), n))


def zero_ideal_code(q: int, m: int, s: int, R: int) -> CoveringCode:
    """All words vanishing on a fixed size-R ideal: q^(ms-R) codewords.

    The ideal is the floor(R/s) first blocks plus the R mod s lowest
    positions of the next block.
    """
    n = m * s
    if not 0 < R < n:
        raise ValueError(f"need 0 < R < ms = {n}, got {R}")
    free = list(range(R, n))  # block-major bottom-first: the ideal is exactly positions 0..R-1
    words = np.zeros((q ** len(free), n), dtype=np.intc)
    words[:, free] = _from_rows(itertools.product(range(q), repeat=len(free)), len(free))
    return CoveringCode(q, m, s, R, words, note="zero-ideal")


def _paired_words(q: int, s: int, k: int, head: list[tuple[int, ...]], head_blocks: int) -> np.ndarray:
    """Shared layout of the even and odd constructions.

    ``head`` lists the contents of the ``head_blocks`` middle blocks (empty
    for the even case).  For every z in Z_q^(k(s-2)) and every pair (p, r)
    in (Z_q^k)^2 except r = 0 != p:
      * block i < k gets r_i on top and p_i just below, zeros elsewhere;
      * block k + head_blocks + i gets p_i at height 1, r_i at height 2 and
        the i-th (s-2)-slice of z above.
    """
    m = 2 * k + head_blocks
    n = m * s
    tail = k + head_blocks
    pairs = [(p, r) for p in itertools.product(range(q), repeat=k)
             for r in itertools.product(range(q), repeat=k)
             if any(r) or not any(p)]
    rows = []
    for z in itertools.product(range(q), repeat=k * (s - 2)):
        for mid in head:
            for p, r in pairs:
                w = [0] * n
                for i in range(k):
                    w[i * s + s - 1] = r[i]
                    w[i * s + s - 2] = p[i]
                    b = (tail + i) * s
                    w[b] = p[i]
                    w[b + 1] = r[i]
                    w[b + 2:b + s] = z[i * (s - 2):(i + 1) * (s - 2)]
                for hb in range(head_blocks):
                    w[(k + hb) * s:(k + hb + 1) * s] = mid[hb * s:(hb + 1) * s]
                rows.append(w)
    return _from_rows(rows, n)


def code_even_size(q: int, s: int, k: int) -> int:
    return q ** (k * s) - q ** (k * (s - 2)) * (q**k - 1)


def code_odd_size(q: int, s: int, k: int, j: int) -> int:
    return q ** (k * s + j) - q ** (k * (s - 2) + j) * (q**k - 1)


def _check_qsk(q: int, s: int, k: int) -> None:
    if q < 2 or s < 3 or k < 1:
        raise ValueError(f"need q >= 2, s >= 3, k >= 1; got q={q}, s={s}, k={k}")


def code_even(q: int, s: int, k: int) -> CoveringCode:
    """Radius-ks covering of Z_q^(2k*s) with q^(ks) - q^(k(s-2))(q^k - 1) words."""
    _check_qsk(q, s, k)
    words = _paired_words(q, s, k, [()], 0)
    code = CoveringCode(q, 2 * k, s, k * s, words, note="paired-rows even")
    assert code.size == code_even_size(q, s, k)
    return code


def code_odd(q: int, s: int, k: int, j: int) -> CoveringCode:
    """Radius-((k+1)s - j) covering of Z_q^((2k+1)s), 1 <= j <= s.

    Same layout as :func:`code_even` with a middle block whose top j
    positions run over Z_q^j.
    """
    _check_qsk(q, s, k)
    if not 1 <= j <= s:
        raise ValueError(f"need 1 <= j <= s = {s}, got {j}")
    head = [(0,) * (s - j) + z0 for z0 in itertools.product(range(q), repeat=j)]
    words = _paired_words(q, s, k, head, 1)
    code = CoveringCode(q, 2 * k + 1, s, (k + 1) * s - j, words, note="paired-rows odd")
    assert code.size == code_odd_size(q, s, k, j)
    return code


def extend_block(code: CoveringCode) -> CoveringCode:
    """Append an all-zero block: a covering of [(m+1)*s] with radius R + s."""
    words = np.hstack([code.words, np.zeros((code.size, code.s), dtype=np.intc)])
    return CoveringCode(code.q, code.m + 1, code.s, code.R + code.s, words,
                        note=(code.note + " + zero block").strip())


def constant_code(q: int, m: int, s: int, t: int | None = None) -> CoveringCode:
    """The q constant words at radius ms - t.

    Whenever m >= (t-1)q + 1 some symbol fills at least t block tops of any
    word, so each word is within ms - t of that constant word.  Without
    ``t`` the largest t satisfying the hypothesis is used.
    """
    if t is None:
        t = (m - 1) // q + 1
    if not 0 <= t <= m * s:
        raise ValueError(f"strength {t} outside 0..{m * s}")
    words = np.repeat(np.arange(q, dtype=np.intc)[:, None], m * s, axis=1)
    return CoveringCode(q, m, s, m * s - t, words, note="constant words")


def product_code(a: OrderedArray, code: CoveringCode) -> CoveringCode:
    """Covering of Z_{vq} from an OCA of strength ms - R and a q-ary code of radius R.

    Words are ``q*row + word`` over all pairs; duplicate OCA rows are dropped.
    """
    if (a.m, a.s) != (code.m, code.s):
        raise ValueError(f"poset mismatch: array on [{a.m}*{a.s}], code on [{code.m}*{code.s}]")
    if a.t != code.n - code.R:
        raise ValueError(f"array strength {a.t} must equal ms - R = {code.n - code.R}")
    rows = np.unique(instantiate_wildcards(a, 0).entries, axis=0)
    words = (code.q * np.repeat(rows, code.size, axis=0) + np.tile(code.words, (len(rows), 1)))
    return CoveringCode(a.v * code.q, code.m, code.s, code.R, words, note="product")


# -- text format -------------------------------------------------------------

def write_code(code: CoveringCode, fh: TextIO | None = None) -> str:
    out = io.StringIO()
    out.write(f"CODE {code.q} {code.m} {code.s} {code.R} {code.size}\n")
    for w in code.words:
        out.write(" ".join(str(int(x)) for x in w) + "\n")
    text = out.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def _lines(source: str | Path | TextIO | Iterable[str]) -> Iterator[str]:
    if isinstance(source, Path):
        yield from source.read_text().splitlines()
    elif isinstance(source, str):
        yield from source.splitlines()
    else:
        for ln in source:
            yield ln.rstrip("\n")


def read_code(source: str | Path | TextIO | Iterable[str]) -> CoveringCode:
    lines = [ln for ln in _lines(source) if ln.strip()]
    if not lines:
        raise FormatError("empty code file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "CODE":
        raise FormatError(f"bad header {lines[0]!r}; expected 'CODE q m s R size'")
    try:
        q, m, s, R, size = (int(x) for x in head[1:])
    except ValueError as exc:
        raise FormatError(f"non-integer header field in {lines[0]!r}") from exc
    if len(lines) - 1 != size:
        raise FormatError(f"header says {size} words, found {len(lines) - 1}")
    try:
        words = np.array([[int(x) for x in ln.split()] for ln in lines[1:]], dtype=np.intc).reshape(size, -1)
    except ValueError as exc:
        raise FormatError(f"malformed word: {exc}") from exc
    if size and words.shape[1] != m * s:
        raise FormatError(f"words have {words.shape[1]} entries, expected {m * s}")
    try:
        return CoveringCode(q, m, s, R, words.reshape(size, m * s))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
