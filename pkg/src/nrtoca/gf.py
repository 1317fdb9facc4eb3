"""Table-driven arithmetic in GF(p^e) for orders up to 64.

Elements are the integers ``0..v-1``; the base-``p`` digits of an element
are its polynomial coefficients, least significant first.  Element ``i`` is
therefore "the i-th element in canonical order".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 64


class NotAPrimePower(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(v: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``v == p**e``, or ``None``."""
    if v < 2:
        return None
    for p in range(2, v + 1):
        if v % p == 0:
            if not _is_prime(p):
                return None
            e, rest = 0, v
            while rest % p == 0:
                rest //= p
                e += 1
            return (p, e) if rest == 1 else None
    return None


def is_prime_power(v: int) -> bool:
    return prime_power(v) is not None


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    # mod is monic, coefficients low degree first
    a = [c % p for c in a]
    d = len(mod) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * mod[i]) % p
    return a[:d] + [0] * max(0, d - len(a))


def _has_root_factor(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            divisor = [(code // p**i) % p for i in range(d)] + [1]
            if not any(_poly_mod(list(poly), divisor, p)):
                return True
    return False


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """``poly`` monic over GF(p), low degree first."""
    if len(poly) < 2 or poly[-1] % p != 1:
        return False
    return not _has_root_factor(poly, p)


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``e``, ordered by base-p coefficient code."""
    for code in range(p**e):
        poly = [(code // p**i) % p for i in range(e)] + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


@dataclass(frozen=True)
class FieldSpec:
    order: int
    modulus: tuple[int, ...] | None = None
    p: int = field(init=False)
    e: int = field(init=False)
    add_table: np.ndarray = field(init=False, repr=False, compare=False)
    mul_table: np.ndarray = field(init=False, repr=False, compare=False)
    neg_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pe = prime_power(self.order)
        if pe is None:
            raise NotAPrimePower(f"{self.order} is not a prime power")
        if self.order > MAX_ORDER:
            raise ValueError(f"field order {self.order} exceeds cap {MAX_ORDER}")
        p, e = pe
        modulus = self.modulus
        if e == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = default_modulus(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or not is_irreducible(modulus, p):
                raise ValueError(f"{modulus} is not a monic irreducible of degree {e} over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "modulus", modulus)
        add, mul = _build_tables(p, e, modulus)
        v = self.order
        neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(v)], dtype=np.int64)
        inv = np.zeros(v, dtype=np.int64)
        for a in range(1, v):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        for arr in (add, mul, neg, inv):
            arr.flags.writeable = False
        object.__setattr__(self, "add_table", add)
        object.__setattr__(self, "mul_table", mul)
        object.__setattr__(self, "neg_table", neg)
        object.__setattr__(self, "inv_table", inv)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.order)

    def evaluate(self, coeffs: Sequence[int], x: int) -> int:
        """Horner evaluation, ``coeffs`` low degree first."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


def _digits(x: int, p: int, e: int) -> list[int]:
    return [(x // p**i) % p for i in range(e)]


def _build_tables(p: int, e: int, modulus: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    v = p**e
    digits = [_digits(x, p, e) for x in range(v)]
    add = np.zeros((v, v), dtype=np.int64)
    mul = np.zeros((v, v), dtype=np.int64)
    for a in range(v):
        for b in range(v):
            add[a, b] = sum(((da + db) % p) * p**i for i, (da, db) in enumerate(zip(digits[a], digits[b])))
            prod = [0] * (2 * e - 1)
            for i, da in enumerate(digits[a]):
                for j, db in enumerate(digits[b]):
                    prod[i + j] += da * db
            red = _poly_mod(prod, modulus, p) if e > 1 else [prod[0] % p]
            mul[a, b] = sum(c * p**i for i, c in enumerate(red))
    return add, mul


@lru_cache(maxsize=None)
def gf(order: int) -> FieldSpec:
    """Cached field with the default defining polynomial."""
    return FieldSpec(order)


def taylor_coefficients(spec: FieldSpec, f: Sequence[int], alpha: int, count: int) -> list[int]:
    """First ``count`` coefficients of ``f`` in powers of ``(x - alpha)``.

    Repeated synthetic division: the remainder of dividing by ``x - alpha`` is
    the next coefficient, the quotient is carried forward.
    """
    if count > len(f):
        raise ValueError(f"asked for {count} coefficients of a length-{len(f)} polynomial")
    cur = list(f)
    out = []
    for _ in range(count):
        # synthetic division, high degree first
        n = len(cur)
        quotient = [0] * max(n - 1, 0)
        acc = 0
        for k in range(n - 1, -1, -1):
            acc = spec.add(spec.mul(acc, alpha), cur[k])
            if k > 0:
                quotient[k - 1] = acc
        out.append(acc)
        cur = quotient
    return out
