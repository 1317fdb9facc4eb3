"""Direct and recursive ordered covering array constructions.

Every function returns an :class:`OrderedArray`.  With ``check=True`` (the
default) inputs are verified before use and outputs are verified before
being returned; a failure raises :class:`ConstructionError` instead of
handing back an uncertified array.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Mapping

import numpy as np

from .arrays import OrderedArray, as_ca, instantiate_wildcards, verify_oca
from .gf import FieldSpec, NotAPrimePower, gf, is_prime_power, taylor_coefficients
from .poset import enumerate_anti_ideals, column_indices


class ConstructionError(ValueError):
    pass


def _field(v: int | FieldSpec) -> FieldSpec:
    if isinstance(v, FieldSpec):
        return v
    if not is_prime_power(v):
        raise NotAPrimePower(f"{v} is not a prime power")
    return gf(v)


def certify(a: OrderedArray, what: str) -> OrderedArray:
    """Raise unless ``a`` (wildcards set to 0) passes exhaustive verification."""
    report = verify_oca(instantiate_wildcards(a, 0), max_violations=1)
    if not report.passed:
        bad = report.violations[0]
        raise ConstructionError(
            f"{what}: OCA({a.N};{a.t},{a.m},{a.s},{a.v}) fails on columns {bad.columns}, "
            f"tuple {bad.tuple_} seen {bad.count} times")
    return a


def _mask_or_none(mask: np.ndarray) -> np.ndarray | None:
    return mask if mask.any() else None


def _mask(a: OrderedArray) -> np.ndarray:
    return a.wildcards if a.wildcards is not None else np.zeros(a.entries.shape, dtype=bool)


# -- direct constructions ----------------------------------------------------

def ooa_rs(v: int | FieldSpec, t: int, m: int, *, check: bool = True) -> OrderedArray:
    """OOA(v^t; t, m, t, v) from polynomials of degree < t over GF(v).

    Block ``i`` (point alpha = i) reads the first t coefficients of f in powers
    of (x - alpha), constant term on top.  For m = v + 1 the last block holds
    the coefficients of f itself, leading coefficient on top.
    """
    F = _field(v)
    q = F.order
    if t < 2:
        raise ValueError(f"strength must be >= 2, got {t}")
    if not 2 <= m <= q + 1:
        raise ValueError(f"need 2 <= m <= v+1 = {q + 1}, got m={m}")
    rows = np.zeros((q**t, m * t), dtype=np.intc)
    finite = min(m, q)
    for r, digits in enumerate(itertools.product(range(q), repeat=t)):
        f = list(reversed(digits))  # f[0] is the constant term, last digit varies fastest
        for i in range(finite):
            c = taylor_coefficients(F, f, i, t)
            # height t - d holds c_d, i.e. column (t - d - 1) within the block
            rows[r, i * t:(i + 1) * t] = c[::-1]
        if m == q + 1:
            rows[r, q * t:(q + 1) * t] = f
    note = "" if t >= 3 else "strength 2: exactness certified per instance"
    out = OrderedArray(rows, m=m, s=t, v=q, t=t, note=note)
    return certify(out, "ooa_rs") if check else out


def bush_ca(v: int | FieldSpec, n: int, *, check: bool = True) -> OrderedArray:
    """Orthogonal array OA(v^2; 2, n, v), n <= v + 1: columns a + alpha*b, then b."""
    F = _field(v)
    q = F.order
    if not 1 <= n <= q + 1:
        raise ValueError(f"need 1 <= n <= v+1 = {q + 1}, got {n}")
    rows = np.zeros((q * q, n), dtype=np.intc)
    for r, (a, b) in enumerate(itertools.product(range(q), repeat=2)):
        for c in range(min(n, q)):
            rows[r, c] = F.add(a, F.mul(c, b))
        if n == q + 1:
            rows[r, q] = b
    out = as_ca(rows, t=min(2, n), v=q)
    return certify(out, "bush_ca") if check else out


def kleitman_spencer_rows(m: int) -> int:
    """Least N with m <= C(N-1, floor(N/2) - 1)."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    N = 1
    while True:
        k = N // 2 - 1
        if k >= 0 and comb(N - 1, k) >= m:
            return N
        N += 1


def kleitman_spencer_ca(m: int, *, check: bool = True) -> OrderedArray:
    """Binary strength-2 CA of minimum size.

    Columns are incidence vectors of distinct floor(N/2)-subsets of the rows
    that all contain row 0: pairwise intersecting, pairwise incomparable, and
    their union always misses a row.  For m = 1 the claim degrades to strength 1.
    """
    N = kleitman_spencer_rows(m)
    half = N // 2
    rows = np.zeros((N, m), dtype=np.intc)
    for col, rest in enumerate(itertools.combinations(range(1, N), half - 1)):
        if col == m:
            break
        rows[0, col] = 1
        rows[list(rest), col] = 1
    out = as_ca(rows, t=min(2, m), v=2, note="" if m >= 2 else "single column: strength-1 claim")
    return certify(out, "kleitman_spencer_ca") if check else out


def constant_rows(m: int, s: int, v: int) -> OrderedArray:
    """Strength-1 OCA: one constant row per symbol."""
    rows = np.repeat(np.arange(v, dtype=np.intc)[:, None], m * s, axis=1)
    return OrderedArray(rows, m=m, s=s, v=v, t=1)


def arbitrary_row(m: int, s: int, v: int) -> OrderedArray:
    """Strength-0 OCA: a single unconstrained row."""
    return OrderedArray(np.zeros((1, m * s), dtype=np.intc), m=m, s=s, v=v, t=0,
                        wildcards=np.ones((1, m * s), dtype=bool))


def full_factorial(m: int, s: int, v: int, t: int | None = None) -> OrderedArray:
    """All v^(ms) words as rows; an OOA of strength ms."""
    n = m * s
    rows = np.array(list(itertools.product(range(v), repeat=n)), dtype=np.intc).reshape(-1, n)
    return OrderedArray(rows, m=m, s=s, v=v, t=n if t is None else t)


# -- projections and chain surgery -----------------------------------------

def chain_project(a: OrderedArray, *, check: bool = True) -> OrderedArray:
    """Drop the bottom column of every block: OCA(N;t,m,s+1,v) -> OCA(N;t,m,s,v)."""
    if a.s < 2:
        raise ValueError("chain length is already 1")
    if check:
        certify(a, "chain_project input")
    keep = [c for c in range(a.n) if c % a.s != 0]
    out = a.replace(entries=a.entries[:, keep], s=a.s - 1, t=min(a.t, a.m * (a.s - 1)),
                    wildcards=None if a.wildcards is None else a.wildcards[:, keep])
    return certify(out, "chain_project") if check else out


def block_project(a: OrderedArray, *, check: bool = True) -> OrderedArray:
    """Drop the last block: OCA(N;t,m+1,s,v) -> OCA(N;t,m,s,v)."""
    if a.m < 2:
        raise ValueError("cannot drop the only block")
    if check:
        certify(a, "block_project input")
    keep = slice(0, (a.m - 1) * a.s)
    out = a.replace(entries=a.entries[:, keep], m=a.m - 1, t=min(a.t, (a.m - 1) * a.s),
                    wildcards=None if a.wildcards is None else a.wildcards[:, keep])
    return certify(out, "block_project") if check else out


def chain_extend(a: OrderedArray, *, check: bool = True) -> OrderedArray:
    """OCA(N;t,m,t-1,v) -> OCA(N;t,m,t,v).

    Each block gains a new bottom column copied from the top column of the
    cyclically next block.  A size-t anti-ideal that uses a whole new block
    then reads the same columns as the old anti-ideal (block i, top of i+1).
    """
    if a.m < 2:
        raise ValueError("chain extension needs at least two blocks")
    if a.s != a.t - 1:
        raise ValueError(f"need chain length t-1 = {a.t - 1}, got s={a.s}")
    if check:
        certify(a, "chain_extend input")
    s = a.s
    cols = []
    for i in range(a.m):
        nxt = (i + 1) % a.m
        cols.append(nxt * s + s - 1)
        cols.extend(range(i * s, (i + 1) * s))
    out = a.replace(entries=a.entries[:, cols], s=s + 1,
                    wildcards=None if a.wildcards is None else a.wildcards[:, cols])
    return certify(out, "chain_extend") if check else out


def chain_pad(a: OrderedArray, s: int) -> OrderedArray:
    """Lengthen every chain to ``s`` with wildcard bottom columns.

    Valid while t <= a.s: no size-t anti-ideal reaches the new columns.
    """
    if s < a.s:
        raise ValueError(f"cannot pad chain length {a.s} down to {s}")
    if a.t > a.s and s > a.s:
        raise ValueError(f"padding needs t <= s, got t={a.t}, s={a.s}")
    if s == a.s:
        return a
    pad = s - a.s
    entries = np.zeros((a.N, a.m * s), dtype=np.intc)
    mask = np.zeros((a.N, a.m * s), dtype=bool)
    old_mask = _mask(a)
    for i in range(a.m):
        entries[:, i * s + pad:(i + 1) * s] = a.block(i)
        mask[:, i * s:i * s + pad] = True
        mask[:, i * s + pad:(i + 1) * s] = old_mask[:, i * a.s:(i + 1) * a.s]
    return a.replace(entries=entries, s=s, wildcards=mask)


def fit_chain(a: OrderedArray, s: int, *, check: bool = True) -> OrderedArray:
    """Project or pad an OCA to chain length ``s``."""
    while a.s > s:
        a = chain_project(a, check=check)
    return chain_pad(a, s)


def strength2_from_ca(c: OrderedArray, *, check: bool = True) -> OrderedArray:
    """CA(N;2,m,v) -> OCA(N;2,m,2,v): block k = (column k, column k+1 mod m)."""
    if c.s != 1:
        raise ValueError("input must be a covering array (chain length 1)")
    m = c.n
    if m < 2:
        raise ValueError("need at least two columns")
    if c.t != 2:
        raise ValueError(f"input must have strength 2, got {c.t}")
    if check:
        certify(c, "strength2_from_ca input")
    cols = []
    for k in range(m):
        cols.extend([k, (k + 1) % m])
    out = OrderedArray(c.entries[:, cols], m=m, s=2, v=c.v, t=2, lam=c.lam,
                       wildcards=None if c.wildcards is None else c.wildcards[:, cols])
    return certify(out, "strength2_from_ca") if check else out


# -- alphabet surgery ----------------------------------------------------------

def fuse(a: OrderedArray, *, check: bool = True) -> OrderedArray:
    """OCA(N;t,m,s,v+1) -> OCA(N-2;t,m,s,v).

    Per column, relabel so row 0 reads v and row 1 reads v-1 wherever it
    differs from row 0 (other symbols keep their relative order), delete
    both rows, then merge v into v-1.
    """
    if a.N < 2:
        raise ValueError("fusion needs at least two rows")
    if a.v < 2:
        raise ValueError("fusion needs alphabet size >= 2")
    v = a.v - 1
    if v >= 2 and a.t < 2:
        raise ValueError("fusion needs strength >= 2")
    a = instantiate_wildcards(a, 0)
    if check:
        certify(a, "fuse input")
    entries = a.entries.copy()
    for c in range(a.n):
        g, h = int(entries[0, c]), int(entries[1, c])
        perm = np.empty(a.v, dtype=np.intc)
        perm[g] = v
        targets = [x for x in range(a.v) if x != v]
        if h != g:
            perm[h] = v - 1
            targets.remove(v - 1)
        sources = [x for x in range(a.v) if x not in (g, h)]
        for src, dst in zip(sources, targets):
            perm[src] = dst
        entries[:, c] = perm[entries[:, c]]
    entries = entries[2:]
    entries[entries == v] = v - 1 if v >= 1 else 0
    out = OrderedArray(entries, m=a.m, s=a.s, v=max(v, 1), t=a.t, lam=a.lam)
    return certify(out, "fuse") if check else out


def augment_alphabet_s3(a: OrderedArray, b: OrderedArray, c: OrderedArray, *, check: bool = True) -> OrderedArray:
    """OCA(M;3,m,2,v-1), CA(M';2,m-1,v-1), CA(M'';2,m,v-1) -> OCA(N;3,m,3,v).

    N = M + m*M' + M'' + m*(v-1)^2 + 1.  Ingredient symbols 0..v-2 become
    1..v-1; symbol 0 is the new one.
    """
    m, w = a.m, a.v
    v = w + 1
    if m < 3 or v < 3:
        raise ValueError(f"need m >= 3 and v >= 3, got m={m}, v={v}")
    if (a.t, a.s) != (3, 2):
        raise ValueError(f"first ingredient must be OCA(.;3,m,2,v-1), got t={a.t}, s={a.s}")
    for name, ca, cols in (("second", b, m - 1), ("third", c, m)):
        if ca.s != 1 or ca.t != 2 or ca.n != cols:
            raise ValueError(f"{name} ingredient must be CA(.;2,{cols},v-1)")
        if ca.v != w:
            raise ValueError(f"{name} ingredient alphabet {ca.v} differs from {w}")
    a, b, c = (instantiate_wildcards(x, 0) for x in (a, b, c))
    if check:
        for name, x in (("OCA", a), ("CA(m-1)", b), ("CA(m)", c)):
            certify(x, f"augment_alphabet_s3 {name} ingredient")
    n = 2 * m
    parts = [a.entries + 1]

    pairs = strength2_from_ca(b, check=False).entries + 1  # M' x 2(m-1)
    for l in range(m):
        part = np.zeros((b.N, n), dtype=np.intc)
        part[:, :2 * l] = pairs[:, :2 * l]
        part[:, 2 * l + 2:] = pairs[:, 2 * l:]
        parts.append(part)

    part = np.zeros((c.N, n), dtype=np.intc)
    part[:, 1::2] = c.entries + 1
    parts.append(part)

    # D = (0, y), E = (x, 0); row k pairs y = 1 + k // (v-1) with x = 1 + k % (v-1)
    k = np.arange(w * w)
    D = np.stack([np.zeros_like(k), 1 + k // w], axis=1)
    E = np.stack([1 + k % w, np.zeros_like(k)], axis=1)
    for r in range(m):
        part = np.zeros((w * w, n), dtype=np.intc)
        for i in range(m):
            part[:, 2 * i:2 * i + 2] = D if i == r else E
        parts.append(part)
    parts.append(np.zeros((1, n), dtype=np.intc))

    stacked = OrderedArray(np.vstack(parts), m=m, s=2, v=v, t=3)
    if check:
        certify(stacked, "augment_alphabet_s3 (chain length 2)")
    return chain_extend(stacked, check=check)


# -- derivation ------------------------------------------------------------

def _least_frequent(column: np.ndarray, v: int) -> int:
    counts = np.bincount(column, minlength=v)
    return int(np.argmin(counts))  # ties resolve to the smallest symbol


def _truncate(a: OrderedArray) -> OrderedArray:
    target = max(a.t, 1)
    while a.s > target:
        keep = [c for c in range(a.n) if c % a.s != 0]
        a = a.replace(entries=a.entries[:, keep], s=a.s - 1,
                      wildcards=None if a.wildcards is None else a.wildcards[:, keep])
    return a


def derive_block(a: OrderedArray, *, truncate: bool = True, check: bool = True) -> OrderedArray:
    """OCA(N;t+1,m+1,s,v) -> OCA(M;t,m,s,v) with M <= floor(N/v).

    Keep the rows whose last entry is the least frequent symbol of the last
    column, then drop the last block.
    """
    if a.m < 2:
        raise ValueError("derivation on blocks needs at least two blocks")
    if a.t < 1:
        raise ValueError("strength must be >= 1")
    a = instantiate_wildcards(a, 0)
    if check:
        certify(a, "derive_block input")
    alpha = _least_frequent(a.entries[:, -1], a.v)
    rows = a.entries[a.entries[:, -1] == alpha][:, : (a.m - 1) * a.s]
    out = OrderedArray(rows, m=a.m - 1, s=a.s, v=a.v, t=min(a.t - 1, (a.m - 1) * a.s), lam=a.lam)
    if truncate:
        out = _truncate(out)
    return certify(out, "derive_block") if check else out


def derive_depth(a: OrderedArray, *, truncate: bool = True, check: bool = True) -> OrderedArray:
    """OCA(N;t+1,m,s+1,v) -> OCA(M;t,m,s,v) with M <= floor(N/v).

    Keep the rows whose last entry is the least frequent symbol of the last
    column; delete the bottom column of blocks 0..m-2 and the top column of
    the last block.
    """
    if a.s < 2:
        raise ValueError("derivation on chain length needs s + 1 >= 2")
    if a.t < 1:
        raise ValueError("strength must be >= 1")
    a = instantiate_wildcards(a, 0)
    if check:
        certify(a, "derive_depth input")
    beta = _least_frequent(a.entries[:, -1], a.v)
    s = a.s
    keep = []
    for i in range(a.m - 1):
        keep.extend(range(i * s + 1, (i + 1) * s))
    keep.extend(range((a.m - 1) * s, a.m * s - 1))
    rows = a.entries[a.entries[:, -1] == beta][:, keep]
    out = OrderedArray(rows, m=a.m, s=s - 1, v=a.v, t=min(a.t - 1, a.m * (s - 1)), lam=a.lam)
    if truncate:
        out = _truncate(out)
    return certify(out, "derive_depth") if check else out


# -- block augmentation --------------------------------------------------------

def _ceil_half(j: int) -> int:
    return (j + 1) // 2


def tj_row_count(v: int, j: int) -> int:
    return v**j - v ** _ceil_half(j)


def build_tj(v: int, s: int, j: int) -> OrderedArray:
    """Two-block gadget T^j: one row per non-palindromic j-tuple x.

    Block 1 reads x_1, x_2, ... downward from its top, block 2 reads x_j,
    x_(j-1), ... downward from its top; lower positions are wildcards.
    Rows are sorted by their column values.
    """
    if not 2 <= j <= 2 * s:
        raise ValueError(f"need 2 <= j <= 2s = {2 * s}, got {j}")
    if v < 1:
        raise ValueError("alphabet must be non-empty")
    half = j // 2
    depth = min(j, s)
    rows, masks = [], []
    for x in itertools.product(range(v), repeat=j):
        if x[:half] == tuple(reversed(x[j - half:])):
            continue
        row = [0] * (2 * s)
        mask = [True] * (2 * s)
        for i in range(1, depth + 1):
            row[s - i] = x[i - 1]
            mask[s - i] = False
            row[2 * s - i] = x[j - i]
            mask[2 * s - i] = False
        rows.append(row)
        masks.append(mask)
    order = sorted(range(len(rows)), key=lambda r: [(-1 if masks[r][c] else rows[r][c]) for c in range(2 * s)])
    entries = np.array([rows[r] for r in order], dtype=np.intc).reshape(-1, 2 * s)
    mask = np.array([masks[r] for r in order], dtype=bool).reshape(-1, 2 * s)
    return OrderedArray(entries, m=2, s=s, v=v, t=j, wildcards=mask, note=f"T^{j} gadget")


def tj_suffix_violations(tj: OrderedArray, j: int | None = None) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """Brute-force check of the gadget's coverage guarantee.

    For each size-j anti-ideal with j1 columns in block 1 and j2 in block 2,
    every tuple (y, z) whose last min(j1, j2) entries of y and z differ must
    appear.  Returns the missing (counts, tuple) pairs.
    """
    j = tj.t if j is None else j
    v, poset = tj.v, tj.poset
    missing = []
    mask = _mask(tj)
    for ai in enumerate_anti_ideals(poset, j):
        j1, j2 = ai.counts
        tb = min(j1, j2)
        cols = column_indices(poset, ai)
        if mask[:, cols].any():
            raise ConstructionError(f"gadget has wildcards inside anti-ideal {ai.counts}")
        present = {tuple(int(x) for x in row) for row in tj.entries[:, cols]}
        for tup in itertools.product(range(v), repeat=j):
            y, z = tup[:j1], tup[j1:]
            if tb and y[j1 - tb:] != z[j2 - tb:] and tup not in present:
                missing.append((ai.counts, tup))
    return missing


def default_ingredient(t: int, m: int, s: int, v: int, *, check: bool = True) -> OrderedArray:
    """A small OCA(.; t, m, s, v) from the direct constructions.

    Strength 0: one arbitrary row.  Strength 1: v constant rows.  Strength 2:
    a binary minimum CA or a Bush array paired into blocks.  Strength >= 3:
    the polynomial OOA.  The chain is projected or padded to length ``s``.
    """
    if t == 0:
        return arbitrary_row(m, s, v)
    if t == 1:
        return constant_rows(m, s, v)
    if t > m * s:
        raise ConstructionError(f"no OCA of strength {t} on [{m}*{s}]")
    if t == 2:
        if m == 1:
            base = full_factorial(1, 2, v)
        elif v == 2:
            base = strength2_from_ca(kleitman_spencer_ca(m, check=check), check=check)
        elif is_prime_power(v) and m <= v + 1:
            base = strength2_from_ca(bush_ca(v, m, check=check), check=check)
        else:
            raise ConstructionError(f"no built-in strength-2 ingredient for m={m}, v={v}")
        return fit_chain(base, s, check=check)
    if is_prime_power(v) and 2 <= m <= v + 1:
        return fit_chain(ooa_rs(v, t, m, check=check), s, check=check)
    raise ConstructionError(f"no built-in ingredient OCA(.;{t},{m},{s},{v})")


def augment_block(a: OrderedArray, ingredients: Mapping[int, OrderedArray] | None = None,
                  *, keep_wildcards: bool = False, check: bool = True) -> OrderedArray:
    """OCA(N;t,m,s,v) -> OCA(M;t,m+1,s,v).

    The last block is duplicated as a new block, then for j = 2..min(2s, t)
    the rows of ingredient OCA(N_j; t-j, m-1, s, v) are crossed with the rows
    of the gadget T^j placed on the last two blocks.
    M = N + sum_j N_j * (v^j - v^ceil(j/2)).  Free positions are set to 0
    unless ``keep_wildcards`` is true, in which case they stay masked.
    """
    t, m, s, v = a.t, a.m, a.s, a.v
    if m < 2:
        raise ValueError("block augmentation needs m >= 2")
    if s > t:
        raise ValueError(f"need s <= t, got s={s}, t={t}")
    if check:
        certify(a, "augment_block input")
    ingredients = dict(ingredients or {})
    k = min(2 * s, t)
    n_old = m * s
    entries = [np.hstack([a.entries, a.entries[:, n_old - s:]])]
    mask_a = _mask(a)
    masks = [np.hstack([mask_a, mask_a[:, n_old - s:]])]
    for j in range(2, k + 1):
        ing = ingredients.get(j)
        if ing is None:
            ing = default_ingredient(t - j, m - 1, s, v, check=check)
        if (ing.t, ing.m, ing.s, ing.v) != (t - j, m - 1, s, v):
            raise ValueError(f"ingredient for j={j} must be OCA(.;{t - j},{m - 1},{s},{v}), "
                             f"got OCA(.;{ing.t},{ing.m},{ing.s},{ing.v})")
        if check and ing.t > 0:
            certify(ing, f"augment_block ingredient j={j}")
        tj = build_tj(v, s, j)
        ing_mask = _mask(ing)
        left = np.repeat(ing.entries, tj.N, axis=0)
        right = np.tile(tj.entries, (ing.N, 1))
        entries.append(np.hstack([left, right]))
        masks.append(np.hstack([np.repeat(ing_mask, tj.N, axis=0), np.tile(_mask(tj), (ing.N, 1))]))
    out = OrderedArray(np.vstack(entries), m=m + 1, s=s, v=v, t=t, lam=a.lam,
                       wildcards=_mask_or_none(np.vstack(masks)))
    if not keep_wildcards:
        out = instantiate_wildcards(out, 0)
    return certify(out, "augment_block") if check else out


def augment_block_rows(N: int, ingredient_rows: Mapping[int, int], t: int, s: int, v: int) -> int:
    k = min(2 * s, t)
    return N + sum(ingredient_rows[j] * tj_row_count(v, j) for j in range(2, k + 1))


def augmented_ooa_rows_sum(t: int, v: int) -> int:
    return v**t + sum(v ** (t - j) * tj_row_count(v, j) for j in range(2, t + 1))


def augmented_ooa_rows(t: int, v: int) -> int:
    """Row count of OCA(t, v+2, t, v) from one block augmentation of the polynomial OOA.

    Evaluates the odd/even closed forms exactly and checks them against the
    direct sum.
    """
    if not is_prime_power(v):
        raise NotAPrimePower(f"{v} is not a prime power")
    if t < 3:
        raise ValueError(f"need t >= 3, got {t}")
    V = Fraction(v)
    if t % 2:
        value = V**t * (t - Fraction(2, 1 - v) * (1 / V ** ((t - 1) // 2) - 1))
    else:
        value = V**t * (t - Fraction(2, 1 - v) * (1 / V ** ((t - 2) // 2) - 1) - 1 / V ** (t // 2))
    if value.denominator != 1 or int(value) != augmented_ooa_rows_sum(t, v):
        raise AssertionError(f"closed form {value} disagrees with direct sum {augmented_ooa_rows_sum(t, v)}")
    return int(value)


def augmented_ooa(t: int, v: int, *, check: bool = True) -> OrderedArray:
    """Materialize OCA(t, v+2, t, v) with the bound's row count."""
    base = ooa_rs(v, t, v + 1, check=check)
    ingredients = {}
    for j in range(2, t + 1):
        if t - j == 2:
            pair = strength2_from_ca(bush_ca(v, v, check=check), check=check)
            ingredients[j] = fit_chain(pair, t, check=check)
        else:
            ingredients[j] = default_ingredient(t - j, v, t, v, check=check)
    return augment_block(base, ingredients, check=check)


def augmented_ooa_example(*, keep_wildcards: bool = False, check: bool = True) -> OrderedArray:
    """The 16-row OCA(3,4,3,2) built by one block augmentation of OOA(8;3,3,3,2)."""
    return augment_block(ooa_rs(2, 3, 3, check=check), keep_wildcards=keep_wildcards, check=check)


# name fixed by the public interface
corollary2_bound = augmented_ooa_rows
