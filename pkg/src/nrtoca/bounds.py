"""Rule-based upper bounds on OCA numbers and covering-code sizes.

``best_ocan_upper`` and ``best_k_upper`` run a memoized search over a fixed
rule set.  Each result is a :class:`BoundRecord` carrying the value, the rule
that produced it and the sub-records it used, so a constructive record can be
replayed into an actual array or code with :func:`materialize`.

Search depth counts the rules that can loop (fusion, derivation,
augmentation, ...).  Projection and normalization rules only ever grow ``m``,
``s`` or shrink ``R``, so they are free; this keeps the answers monotone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import codes as cc
from . import constructions as oc
from .arrays import OrderedArray
from .gf import is_prime_power

T_CAP = 8
M_CAP = 12
V_CAP = 16
Q_CAP = 64
S_CAP = 8
DEFAULT_DEPTH = 6


class CapExceeded(ValueError):
    pass


class NotConstructive(ValueError):
    pass


@dataclass(frozen=True)
class BoundRecord:
    kind: str  # "OCAN" or "K"
    params: tuple[int, ...]  # (t, m, s, v) or (q, m, s, R)
    value: int
    rule: str
    statement: str
    children: tuple["BoundRecord", ...] = ()
    constructive: bool = True
    args: tuple[tuple[str, int], ...] = ()
    weight: int = 1  # rule applications in the whole trace

    @property
    def label(self) -> str:
        if self.kind == "OCAN":
            t, m, s, v = self.params
            return f"OCAN({t},{m},{s},{v})"
        q, m, s, R = self.params
        return f"K_{q}({m},{s},{R})"

    def arg(self, name: str) -> int:
        return dict(self.args)[name]

    def path(self) -> str:
        """Rule names as a nested path, e.g. ``block-augment(polynomial-ooa,constant-rows)``."""
        if not self.children:
            return self.rule
        return f"{self.rule}({','.join(c.path() for c in self.children)})"

    def walk(self) -> Iterator["BoundRecord"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def trace_lines(self, indent: int = 0) -> list[str]:
        head = f"{'  ' * indent}{self.label} <= {self.value}  [{self.rule}] {self.statement}"
        if not self.constructive:
            head += "  (non-constructive)"
        lines = [head]
        for c in self.children:
            lines.extend(c.trace_lines(indent + 1))
        return lines

    def as_dict(self) -> dict:
        names = ("t", "m", "s", "v") if self.kind == "OCAN" else ("q", "m", "s", "R")
        out = {"kind": self.kind, **dict(zip(names, self.params)), "value": self.value,
               "rule": self.rule, "constructive": self.constructive, "trace": self.path()}
        return out


def _rec(kind, params, value, rule, statement, children=(), constructive=True, **args) -> BoundRecord:
    children = tuple(children)
    return BoundRecord(kind, tuple(params), int(value), rule, statement, children,
                       constructive and all(c.constructive for c in children),
                       tuple(sorted(args.items())), 1 + sum(c.weight for c in children))


def _pick(cands: list[BoundRecord]) -> BoundRecord | None:
    # least value; among equals the shortest trace, then the rule name
    return min(cands, key=lambda r: (r.value, r.weight, r.rule)) if cands else None


def ceil_half(j: int) -> int:
    return (j + 1) // 2


class BoundEngine:
    """Memoized rule search; one instance per ``constructive_only`` setting."""

    def __init__(self, constructive_only: bool = True) -> None:
        self.constructive_only = constructive_only
        self._ocan: dict[tuple[int, int, int, int, int], BoundRecord | None] = {}
        self._k: dict[tuple[int, int, int, int, int], BoundRecord | None] = {}

    # -- OCAN --------------------------------------------------------------

    def ocan(self, t: int, m: int, s: int, v: int, depth: int = DEFAULT_DEPTH) -> BoundRecord | None:
        """Best record for OCAN(t,m,s,v), or ``None`` if no rule applies."""
        key = (t, m, s, v, depth)
        if key not in self._ocan:
            self._ocan[key] = self._ocan_rules(t, m, s, v, depth)
        return self._ocan[key]

    def _ocan_rules(self, t: int, m: int, s: int, v: int, d: int) -> BoundRecord | None:
        P = (t, m, s, v)
        if t < 0 or m < 1 or s < 1 or v < 1 or t > m * s:
            return None
        if t == 0:
            return _rec("OCAN", P, 1, "arbitrary-row", "strength 0 needs one row")
        if t == 1 or v == 1:
            return _rec("OCAN", P, v, "constant-rows", "one constant row per symbol")
        if t > T_CAP or v > V_CAP or m > M_CAP:
            return None
        if s > t:
            child = self.ocan(t, m, t, v, d)
            if child is None:
                return None
            return _rec("OCAN", P, child.value, "chain-pad",
                        "OCAN(t,m,s,v) = OCAN(t,m,t,v) for s > t", [child])

        cands: list[BoundRecord] = []
        add = cands.append
        n = m * s
        if n <= 24:
            add(_rec("OCAN", P, v**n, "full-factorial", "all v^(ms) words"))
        pp = is_prime_power(v)

        if pp and m <= v + 1:
            add(_rec("OCAN", P, v**t, "polynomial-ooa",
                     "OCAN(t,m,s,v) = v^t for prime power v, m <= v+1, s <= t"))
        if s == 1 and t == 2:
            if pp and m <= v + 1:
                add(_rec("OCAN", P, v * v, "bush", "CAN(2,n,v) = v^2 for prime power v, n <= v+1"))
            if v == 2:
                add(_rec("OCAN", P, oc.kleitman_spencer_rows(m), "kleitman-spencer",
                         "CAN(2,n,2) = least N with n <= C(N-1, floor(N/2)-1)"))
        if pp and m == v + 2 and s == t and t >= 3:
            add(_rec("OCAN", P, oc.augmented_ooa_rows(t, v), "augmented-polynomial-ooa",
                     "OCAN(t,v+2,t,v) <= v^t + sum_j v^(t-j)(v^j - v^ceil(j/2))"))

        # free rules: projections
        if s + 1 <= t:
            child = self.ocan(t, m, s + 1, v, d)
            if child:
                add(_rec("OCAN", P, child.value, "chain-project", "OCAN(t,m,s,v) <= OCAN(t,m,s+1,v)", [child]))
        if m + 1 <= M_CAP:
            child = self.ocan(t, m + 1, s, v, d)
            if child:
                add(_rec("OCAN", P, child.value, "block-project", "OCAN(t,m,s,v) <= OCAN(t,m+1,s,v)", [child]))

        if d > 0:
            self._ocan_recursive(P, d - 1, add)
        return _pick(cands)

    def _ocan_recursive(self, P: tuple[int, int, int, int], d: int, add: Callable[[BoundRecord], None]) -> None:
        t, m, s, v = P
        if s == t and m >= 2 and t >= 2:
            child = self.ocan(t, m, t - 1, v, d)
            if child:
                add(_rec("OCAN", P, child.value, "chain-extend", "OCAN(t,m,t,v) <= OCAN(t,m,t-1,v)", [child]))
        if t == 2 and s == 2 and m >= 2:
            child = self.ocan(2, m, 1, v, d)
            if child:
                add(_rec("OCAN", P, child.value, "strength2-from-ca", "OCAN(2,m,2,v) <= CAN(2,m,v)", [child]))
        if s >= 2 and m * s <= M_CAP:
            child = self.ocan(t, m * s, 1, v, d)
            if child:
                add(_rec("OCAN", P, child.value, "ca-flatten", "OCAN(t,m,s,v) <= CAN(t,ms,v)", [child]))
        if v + 1 <= V_CAP:
            child = self.ocan(t, m, s, v + 1, d)
            if child:
                add(_rec("OCAN", P, child.value - 2, "fusion", "OCAN(t,m,s,v) <= OCAN(t,m,s,v+1) - 2", [child]))
        if t == 3 and s == 3 and m >= 3 and v >= 3:
            parts = [self.ocan(3, m, 2, v - 1, d), self.ocan(2, m - 1, 1, v - 1, d), self.ocan(2, m, 1, v - 1, d)]
            if all(parts):
                a, b, c = parts
                value = a.value + m * b.value + c.value + m * (v - 1) ** 2 + 1
                add(_rec("OCAN", P, value, "alphabet-augment",
                         "OCAN(3,m,3,v) <= OCAN(3,m,2,v-1) + m CAN(2,m-1,v-1) + CAN(2,m,v-1) + m(v-1)^2 + 1",
                         parts))
        if t + 1 <= T_CAP and m + 1 <= M_CAP:
            child = self.ocan(t + 1, m + 1, s, v, d)
            if child:
                add(_rec("OCAN", P, child.value // v, "derive-block",
                         "OCAN(t,m,s,v) <= floor(OCAN(t+1,m+1,s,v)/v)", [child]))
        if t + 1 <= T_CAP:
            child = self.ocan(t + 1, m, s + 1, v, d)
            if child:
                add(_rec("OCAN", P, child.value // v, "derive-depth",
                         "OCAN(t,m,s,v) <= floor(OCAN(t+1,m,s+1,v)/v)", [child]))
        if m >= 3:
            base = self.ocan(t, m - 1, s, v, d)
            parts = [base]
            value = base.value if base else 0
            for j in range(2, min(2 * s, t) + 1):
                ing = self.ocan(t - j, m - 2, s, v, d)
                parts.append(ing)
                if ing:
                    value += ing.value * (v**j - v ** ceil_half(j))
            if all(parts):
                add(_rec("OCAN", P, value, "block-augment",
                         "OCAN(t,m+1,s,v) <= OCAN(t,m,s,v) + sum_j OCAN(t-j,m-1,s,v)(v^j - v^ceil(j/2))",
                         parts))
        if not self.constructive_only and v == 2 and t == 3 and s in (2, 3) and m % 2 == 0:
            half = m // 2
            parts = [self.ocan(3, half, s, 2, d), self.ocan(2, half, 1, 2, d)]
            if all(parts):
                add(_rec("OCAN", P, parts[0].value + parts[1].value, "doubling",
                         "OCAN(3,2m,s,2) <= OCAN(3,m,s,2) + CAN(2,m,2), s in {2,3}", parts,
                         constructive=False))

    # -- covering codes --------------------------------------------------------

    def k(self, q: int, m: int, s: int, R: int, depth: int = DEFAULT_DEPTH) -> BoundRecord | None:
        key = (q, m, s, R, depth)
        if key not in self._k:
            self._k[key] = self._k_rules(q, m, s, R, depth)
        return self._k[key]

    def _k_rules(self, q: int, m: int, s: int, R: int, d: int) -> BoundRecord | None:
        P = (q, m, s, R)
        n = m * s
        if q < 1 or m < 1 or s < 1 or R < 0:
            return None
        if R >= n or q == 1:
            return _rec("K", P, 1, "single-word", "one ball of radius ms covers the space")
        if R == 0:
            return _rec("K", P, q**n, "whole-space", "every word is a codeword")
        cands: list[BoundRecord] = []
        add = cands.append
        add(_rec("K", P, q ** (n - R), "zero-ideal", "K_q(m,s,R) <= q^(ms-R)"))
        if s >= 3 and q >= 2:
            if m % 2 == 0 and R == (m // 2) * s:
                k = m // 2
                add(_rec("K", P, cc.code_even_size(q, s, k), "paired-even",
                         "K_q(2k,s,ks) <= q^(ks) - q^(k(s-2))(q^k - 1)", k=k))
            if m % 2 == 1 and m >= 3:
                k = (m - 1) // 2
                j = (k + 1) * s - R
                if 1 <= j <= s:
                    add(_rec("K", P, cc.code_odd_size(q, s, k, j), "paired-odd",
                             "K_q(2k+1,s,(k+1)s-j) <= q^(ks+j) - q^(k(s-2)+j)(q^k - 1)", k=k, j=j))
                if j == 0:
                    add(_rec("K", P, cc.code_even_size(q, s, k), "paired-even+zero-block",
                             "K_q(2k+1,s,(k+1)s) <= q^(ks) - q^(k(s-2))(q^k - 1)", k=k))
        t = n - R
        if m >= (t - 1) * q + 1:
            add(_rec("K", P, q, "constant-code", "K_q(m,s,ms-t) <= q when m >= (t-1)q + 1", t=t))
        # free rule: a larger radius is never harder
        child = self.k(q, m, s, R - 1, d)
        if child:
            add(_rec("K", P, child.value, "radius-relax", "K_q(m,s,R) <= K_q(m,s,R-1)", [child]))
        if d > 0:
            d -= 1
            if m >= 2 and R >= s:
                child = self.k(q, m - 1, s, R - s, d)
                if child:
                    add(_rec("K", P, child.value, "extend-block", "K_q(m,s,R) <= K_q(m-1,s,R-s)", [child]))
            if t <= T_CAP and m <= M_CAP:
                for v in range(2, min(q // 2, V_CAP) + 1):
                    if q % v:
                        continue
                    qq = q // v
                    arr = self.ocan(t, m, s, v, d)
                    code = self.k(qq, m, s, R, d)
                    if arr and code:
                        add(_rec("K", P, arr.value * code.value, "product",
                                 "K_(vq)(m,s,R) <= OCAN(ms-R,m,s,v) K_q(m,s,R)", [arr, code], v=v))
        return _pick(cands)


_ENGINES: dict[bool, BoundEngine] = {}


def engine(constructive_only: bool = True) -> BoundEngine:
    if constructive_only not in _ENGINES:
        _ENGINES[constructive_only] = BoundEngine(constructive_only)
    return _ENGINES[constructive_only]


def best_ocan_upper(t: int, m: int, s: int, v: int, *, depth: int = DEFAULT_DEPTH,
                    constructive_only: bool = True) -> BoundRecord:
    """Least upper bound on OCAN(t,m,s,v) reachable by the rule set.

    With ``constructive_only=False`` the doubling inequality for binary
    strength-3 arrays (whose construction is not implemented here) joins the
    search.
    """
    if not (1 <= t <= T_CAP and 1 <= m <= M_CAP and 1 <= s <= t and 2 <= v <= V_CAP):
        raise CapExceeded(f"OCAN({t},{m},{s},{v}) outside t <= {T_CAP}, m <= {M_CAP}, s <= t, 2 <= v <= {V_CAP}")
    if t > m * s:
        raise ValueError(f"no OCA of strength {t} on [{m}*{s}]")
    rec = engine(constructive_only).ocan(t, m, s, v, depth)
    assert rec is not None and rec.value >= v**t
    return rec


def best_k_upper(q: int, m: int, s: int, R: int, *, depth: int = DEFAULT_DEPTH,
                 constructive_only: bool = True) -> BoundRecord:
    """Least upper bound on the minimum size of a radius-R covering code of Z_q^(ms)."""
    if not (2 <= q <= Q_CAP and 1 <= m <= M_CAP and 1 <= s <= S_CAP and 0 <= R <= m * s):
        raise CapExceeded(f"K_{q}({m},{s},{R}) outside q <= {Q_CAP}, m <= {M_CAP}, s <= {S_CAP}, 0 <= R <= ms")
    rec = engine(constructive_only).k(q, m, s, R, depth)
    assert rec is not None and 1 <= rec.value <= max(1, q ** (m * s - R))
    return rec


# -- materialization -----------------------------------------------------------

def _fit(a: OrderedArray, m: int, s: int) -> OrderedArray:
    while a.m > m:
        a = oc.block_project(a, check=False)
    while a.s > s:
        a = oc.chain_project(a, check=False)
    return oc.chain_pad(a, s)


def _materialize_ocan(r: BoundRecord, kids: list) -> OrderedArray:
    t, m, s, v = r.params
    rule = r.rule
    if rule == "arbitrary-row":
        return oc.arbitrary_row(m, s, v)
    if rule == "constant-rows":
        return oc.constant_rows(m, s, v)
    if rule == "full-factorial":
        return oc.full_factorial(m, s, v, t)
    if rule == "polynomial-ooa":
        return _fit(oc.ooa_rs(v, t, max(m, 2), check=False), m, s)
    if rule == "bush":
        return oc.bush_ca(v, m, check=False)
    if rule == "kleitman-spencer":
        return oc.kleitman_spencer_ca(m, check=False)
    if rule == "augmented-polynomial-ooa":
        return oc.augmented_ooa(t, v, check=False)
    if rule == "chain-pad":
        return oc.chain_pad(kids[0], s)
    if rule == "chain-project":
        return oc.chain_project(kids[0], check=False)
    if rule == "block-project":
        return oc.block_project(kids[0], check=False)
    if rule == "chain-extend":
        return oc.chain_extend(kids[0], check=False)
    if rule == "strength2-from-ca":
        return oc.strength2_from_ca(kids[0], check=False)
    if rule == "ca-flatten":
        c = kids[0]
        return OrderedArray(c.entries, m=m, s=s, v=v, t=t, wildcards=c.wildcards)
    if rule == "fusion":
        return oc.fuse(kids[0], check=False)
    if rule == "alphabet-augment":
        return oc.augment_alphabet_s3(*kids, check=False)
    if rule == "derive-block":
        return oc.derive_block(kids[0], check=False)
    if rule == "derive-depth":
        return oc.derive_depth(kids[0], check=False)
    if rule == "block-augment":
        ingredients = {j: kid for j, kid in zip(range(2, min(2 * s, t) + 1), kids[1:])}
        return oc.augment_block(kids[0], ingredients, check=False)
    raise NotConstructive(f"rule {rule!r} has no construction")


def _materialize_k(r: BoundRecord, kids: list) -> cc.CoveringCode:
    q, m, s, R = r.params
    rule = r.rule
    if rule == "single-word":
        return cc.CoveringCode(q, m, s, min(R, m * s), np.zeros((1, m * s), dtype=np.intc))
    if rule == "whole-space":
        return cc.whole_space(q, m, s)
    if rule == "zero-ideal":
        return cc.zero_ideal_code(q, m, s, R)
    if rule == "paired-even":
        return cc.code_even(q, s, r.arg("k"))
    if rule == "paired-odd":
        return cc.code_odd(q, s, r.arg("k"), r.arg("j"))
    if rule == "paired-even+zero-block":
        return cc.extend_block(cc.code_even(q, s, r.arg("k")))
    if rule == "constant-code":
        return cc.constant_code(q, m, s, r.arg("t"))
    if rule == "radius-relax":
        c = kids[0]
        return cc.CoveringCode(q, m, s, R, c.words, note=c.note)
    if rule == "extend-block":
        return cc.extend_block(kids[0])
    if rule == "product":
        return cc.product_code(kids[0], kids[1])
    raise NotConstructive(f"rule {rule!r} has no construction")


def materialize(record: BoundRecord, *, max_size: int = 2_000_000, check: bool = True):
    """Replay a constructive record into an OrderedArray or CoveringCode.

    With ``check`` the result is verified (OCA: every anti-ideal; code: the
    whole space) and a failure raises.  The result never exceeds
    ``record.value`` rows/words.
    """
    if not record.constructive:
        raise NotConstructive(f"{record.label} via {record.path()} is not constructive")
    if record.value > max_size:
        raise CapExceeded(f"{record.label} = {record.value} exceeds materialization cap {max_size}")
    obj = _replay(record)
    size = obj.N if isinstance(obj, OrderedArray) else obj.size
    if size > record.value:
        raise AssertionError(f"{record.label}: built {size} > claimed {record.value}")
    if check:
        if isinstance(obj, OrderedArray):
            oc.certify(obj, f"materialized {record.label}")
        else:
            rep = cc.verify_covering(obj, max_uncovered=1)
            if not rep.passed:
                raise oc.ConstructionError(f"materialized {record.label} misses {rep.uncovered[0]}")
    return obj


def _replay(r: BoundRecord):
    kids = [_replay(c) for c in r.children]
    return _materialize_ocan(r, kids) if r.kind == "OCAN" else _materialize_k(r, kids)


# -- tables ------------------------------------------------------------------

# Table of earlier bounds for the eleven binary instances, reported verbatim.
PRIOR_BINARY_BOUNDS = {
    (2, 2, 3, 3): 8, (2, 2, 4, 4): 12, (2, 2, 5, 5): 32, (2, 3, 3, 3): 64,
    (2, 3, 3, 4): 16, (2, 3, 3, 5): 8, (2, 3, 3, 6): 8, (2, 3, 4, 7): 16,
    (2, 3, 4, 8): 16, (2, 4, 3, 6): 24, (2, 4, 4, 8): 112,
}

BINARY_ROWS = list(PRIOR_BINARY_BOUNDS)

PRODUCT_ROWS = [(v, q, m, s) for m in (3, 2) for v, q in ((2, 2), (2, 3), (3, 3), (4, 2), (4, 3))
                for s in (3, 4, 5)]


def paired_code_plan(q: int, m: int, s: int, R: int) -> tuple[int, str, Callable[[], cc.CoveringCode]]:
    """(size, tag, builder) of the paired-row construction matching (m, R)."""
    if m % 2 == 0:
        k = m // 2
        if R != k * s:
            raise ValueError(f"even m needs R = ms/2, got R={R}")
        tag = "even, k=1" if k == 1 else "even"
        return cc.code_even_size(q, s, k), tag, lambda: cc.code_even(q, s, k)
    k = (m - 1) // 2
    j = (k + 1) * s - R
    if j == 0:
        return cc.code_even_size(q, s, k), "even + zero block", lambda: cc.extend_block(cc.code_even(q, s, k))
    if not 1 <= j <= s or k < 1:
        raise ValueError(f"odd m needs R = (k+1)s - j with 0 <= j <= s, got R={R}")
    tag = "odd, k=j=1" if (k, j) == (1, 1) else ("odd, j=s" if j == s else "odd")
    return cc.code_odd_size(q, s, k, j), tag, lambda: cc.code_odd(q, s, k, j)


def product_formula(v: int, q: int, m: int, s: int) -> int:
    """Polynomial OOA times the paired-row code over Z_q (m = 3, R = 2s-1 or m = 2, R = s)."""
    if m == 3:
        return v ** (s + 1) * (q ** (s + 1) - q ** (s - 1) * (q - 1))
    if m == 2:
        return v**s * (q**s - q ** (s - 2) * (q - 1))
    raise ValueError("m must be 2 or 3")


def paired_formula(Q: int, m: int, s: int) -> int:
    if m == 3:
        return cc.code_odd_size(Q, s, 1, 1)
    if m == 2:
        return cc.code_even_size(Q, s, 1)
    raise ValueError("m must be 2 or 3")


@dataclass
class TableRow:
    fields: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.fields[key]


def emit_table(which: int, *, with_engine: bool = True) -> list[TableRow]:
    """Rows of the binary code table (3) or the product-code table (2)."""
    rows: list[TableRow] = []
    if which == 3:
        for q, m, s, R in BINARY_ROWS:
            size, tag, _ = paired_code_plan(q, m, s, R)
            row = {"q": q, "m": m, "s": s, "R": R, "prior": PRIOR_BINARY_BOUNDS[(q, m, s, R)],
                   "new": size, "construction": tag}
            if with_engine:
                rec = best_k_upper(q, m, s, R)
                row.update(best=rec.value, trace=rec.path())
            rows.append(TableRow(row))
    elif which == 2:
        for v, q, m, s in PRODUCT_ROWS:
            R = 2 * s - 1 if m == 3 else s
            row = {"v": v, "q": q, "vq": v * q, "m": m, "s": s, "R": R,
                   "paired": paired_formula(v * q, m, s), "product": product_formula(v, q, m, s)}
            if with_engine:
                rec = best_k_upper(v * q, m, s, R)
                row.update(best=rec.value, trace=rec.path())
            rows.append(TableRow(row))
    else:
        raise ValueError(f"unknown table {which}; choose 2 or 3")
    return rows


def format_table(rows: list[TableRow], fmt: str = "text") -> str:
    if fmt == "records":
        return "".join(json.dumps(r.fields, sort_keys=False) + "\n" for r in rows)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if not rows:
        return ""
    keys = [k for k in rows[0].fields if k != "trace"]
    widths = {k: max(len(k), *(len(str(r.fields[k])) for r in rows)) for k in keys}
    lines = ["  ".join(k.rjust(widths[k]) for k in keys)]
    for r in rows:
        lines.append("  ".join(str(r.fields[k]).rjust(widths[k]) for k in keys))
    return "\n".join(lines) + "\n"
