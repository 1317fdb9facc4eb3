import itertools
from fractions import Fraction

import numpy as np
import pytest

from nrtoca import constructions as oc
from nrtoca.arrays import OrderedArray, instantiate_wildcards, verify_ca, verify_oca
from nrtoca.gf import NotAPrimePower

from .conftest import reference_covers

T3_DISPLAY = """\
**001**100 **002**200 **011**110 **012**210 **021**120 **022**220
**100**001 **102**201 **110**011 **112**211 **120**021 **122**221
**200**002 **201**102 **210**012 **211**112 **220**022 **221**122"""

T4_DISPLAY = "0001 0010 0011 0100 0110 0111 1000 1001 1011 1100 1101 1110"


def render(a: OrderedArray) -> list[str]:
    mask = a.wildcards if a.wildcards is not None else np.zeros(a.entries.shape, bool)
    return ["".join("*" if mask[r, c] else str(int(a.entries[r, c])) for c in range(a.n)) for r in range(a.N)]


def certified(a: OrderedArray) -> bool:
    return verify_oca(instantiate_wildcards(a, 0)).passed


# -- direct constructions --------------------------------------------------------

@pytest.mark.parametrize("v", [2, 3, 4, 5])
@pytest.mark.parametrize("t", [2, 3, 4])
def test_polynomial_ooa_is_orthogonal(v, t):
    for m in range(2, min(v + 1, 6) + 1):
        if v**t > 1000:
            continue
        a = oc.ooa_rs(v, t, m)
        assert (a.N, a.t, a.m, a.s, a.v) == (v**t, t, m, t, v)
        rep = verify_oca(a)
        assert rep.passed and rep.exact


def test_polynomial_ooa_matches_reference():
    a = oc.ooa_rs(2, 3, 3, check=False)
    assert reference_covers(a.entries, 3, 3, 2, 3)


def test_polynomial_ooa_errors():
    with pytest.raises(NotAPrimePower):
        oc.ooa_rs(6, 3, 3)
    with pytest.raises(ValueError):
        oc.ooa_rs(3, 3, 5)
    with pytest.raises(ValueError):
        oc.ooa_rs(3, 1, 3)


@pytest.mark.parametrize("v", [2, 3, 4, 5, 7, 8])
def test_bush_is_orthogonal(v):
    for n in (2, v, v + 1):
        a = oc.bush_ca(v, n)
        assert a.N == v * v
        assert verify_ca(a).exact
    with pytest.raises(ValueError):
        oc.bush_ca(v, v + 2)


def test_kleitman_spencer_sizes():
    expected = {1: 2, 2: 4, 3: 4, 4: 5, 5: 6, 10: 6, 11: 7, 15: 7, 16: 8, 35: 8, 36: 9}
    for m, N in expected.items():
        assert oc.kleitman_spencer_rows(m) == N
    for m in range(1, 36):
        a = oc.kleitman_spencer_ca(m)
        assert a.N == oc.kleitman_spencer_rows(m)
        assert verify_ca(a).passed
    with pytest.raises(ValueError):
        oc.kleitman_spencer_rows(0)


def test_trivial_arrays():
    assert verify_oca(oc.constant_rows(3, 2, 4)).passed
    a = oc.arbitrary_row(2, 3, 5)
    assert a.t == 0 and a.N == 1 and a.wildcards.all()
    ff = oc.full_factorial(2, 2, 2)
    assert ff.N == 16 and verify_oca(ff).exact


# -- projections, chain surgery ----------------------------------------------------

def test_projections():
    a = oc.ooa_rs(3, 3, 4)
    p = oc.chain_project(a)
    assert (p.s, p.t) == (2, 3) and verify_oca(p).passed
    b = oc.block_project(a)
    assert (b.m, b.t) == (3, 3) and verify_oca(b).passed
    with pytest.raises(ValueError):
        oc.block_project(oc.constant_rows(1, 2, 2))
    with pytest.raises(ValueError):
        oc.chain_project(oc.constant_rows(2, 1, 2))


@pytest.mark.parametrize("v,t,m", [(2, 3, 3), (3, 3, 4), (2, 4, 3), (3, 4, 3), (4, 3, 5)])
def test_chain_extend(v, t, m):
    short = oc.chain_project(oc.ooa_rs(v, t, m))
    ext = oc.chain_extend(short)
    assert (ext.N, ext.s, ext.t) == (short.N, t, t)
    assert verify_oca(ext).passed


def test_chain_extend_hypotheses():
    with pytest.raises(ValueError):
        oc.chain_extend(oc.ooa_rs(2, 3, 3))  # s == t already
    with pytest.raises(ValueError):
        oc.chain_extend(oc.chain_project(oc.ooa_rs(2, 3, 2)).replace(m=1, s=4))


def test_chain_pad_keeps_validity():
    a = oc.ooa_rs(3, 2, 4)
    padded = oc.chain_pad(a, 4)
    assert padded.s == 4 and padded.has_wildcards
    for fill in (0, 2):
        assert verify_oca(instantiate_wildcards(padded, fill)).passed
    with pytest.raises(ValueError):
        oc.chain_pad(a, 1)
    with pytest.raises(ValueError):
        oc.chain_pad(oc.chain_project(oc.ooa_rs(2, 3, 3)), 3)


@pytest.mark.parametrize("maker", [lambda: oc.kleitman_spencer_ca(10), lambda: oc.bush_ca(3, 4),
                                   lambda: oc.bush_ca(5, 6)])
def test_strength2_from_ca(maker):
    c = maker()
    a = oc.strength2_from_ca(c)
    assert (a.N, a.m, a.s, a.t) == (c.N, c.n, 2, 2)
    assert verify_oca(a).passed
    with pytest.raises(ValueError):
        oc.strength2_from_ca(a)


# -- alphabet surgery --------------------------------------------------------------

@pytest.mark.parametrize("v,t,m", [(3, 3, 4), (4, 3, 5), (3, 2, 4), (5, 3, 4), (4, 2, 5)])
def test_fuse(v, t, m):
    a = oc.ooa_rs(v, t, m)
    f = oc.fuse(a)
    assert (f.N, f.v, f.t, f.m, f.s) == (a.N - 2, v - 1, t, m, t)
    assert verify_oca(f).passed


def test_fuse_requires_strength_two():
    with pytest.raises(ValueError):
        oc.fuse(oc.constant_rows(2, 2, 4))


@pytest.mark.parametrize("m,v", [(3, 3), (4, 3), (3, 4), (4, 4)])
def test_alphabet_augmentation(m, v):
    w = v - 1
    if m <= w + 1:
        a = oc.chain_project(oc.ooa_rs(w, 3, m))
    else:  # OOA(8;3,4,2,2) is unavailable directly; fuse the 4-ary one twice
        a = oc.fuse(oc.fuse(oc.chain_project(oc.ooa_rs(4, 3, m))))
    if w == 2:
        b, c = oc.kleitman_spencer_ca(m - 1), oc.kleitman_spencer_ca(m)
    else:
        b, c = oc.bush_ca(w, m - 1), oc.bush_ca(w, m)
    out = oc.augment_alphabet_s3(a, b, c)
    assert out.N == a.N + m * b.N + c.N + m * w * w + 1
    assert (out.t, out.m, out.s, out.v) == (3, m, 3, v)
    assert verify_oca(out).passed


def test_alphabet_augmentation_sizes():
    # m=3, v=3: OOA(8;3,3,2,2) + 3*CA(4;2,2,2) + CA(4;2,3,2) + 3*4 + 1 = 37
    a = oc.chain_project(oc.ooa_rs(2, 3, 3))
    assert oc.augment_alphabet_s3(a, oc.kleitman_spencer_ca(2), oc.kleitman_spencer_ca(3)).N == 37
    with pytest.raises(ValueError):
        oc.augment_alphabet_s3(oc.ooa_rs(2, 3, 3), oc.kleitman_spencer_ca(2), oc.kleitman_spencer_ca(3))


@pytest.mark.parametrize("v,t,m", [(3, 4, 4), (2, 4, 3), (4, 3, 5), (3, 3, 4)])
def test_derivations(v, t, m):
    a = oc.ooa_rs(v, t, m)
    b = oc.derive_block(a)
    assert b.N <= a.N // v and (b.t, b.m) == (t - 1, m - 1) and b.s == t - 1
    assert verify_oca(b).passed
    d = oc.derive_depth(a)
    assert d.N <= a.N // v and (d.t, d.m) == (t - 1, m) and d.s == t - 1
    assert verify_oca(d).passed


def test_derivation_without_truncation():
    a = oc.ooa_rs(3, 3, 4)
    b = oc.derive_block(a, truncate=False)
    assert b.s == 3 and b.t == 2 and b.N == 9


# -- the two-block gadget ------------------------------------------------------------

def test_gadget_row_counts_and_coverage():
    for v in (2, 3, 4):
        for j in range(2, 7):
            if v**j > 5000:
                continue
            s = (j + 1) // 2 + 1
            tj = oc.build_tj(v, s, j)
            assert tj.N == oc.tj_row_count(v, j) == v**j - v ** ((j + 1) // 2)
            assert oc.tj_suffix_violations(tj) == []


def test_gadget_frozen_displays():
    assert render(oc.build_tj(3, 5, 3)) == T3_DISPLAY.split()
    assert render(oc.build_tj(2, 2, 4)) == T4_DISPLAY.split()


def test_gadget_excludes_suffix_tuples():
    tj = oc.build_tj(3, 5, 3)
    # columns 4, 5 (top two of block 1) and 10 (top of block 2)
    seen = {tuple(int(x) for x in row) for row in tj.entries[:, [3, 4, 9]]}
    assert (0, 1, 0) in seen
    assert (0, 1, 1) not in seen


def test_gadget_errors():
    with pytest.raises(ValueError):
        oc.build_tj(2, 2, 5)
    with pytest.raises(ValueError):
        oc.build_tj(2, 2, 1)


# -- block augmentation -------------------------------------------------------------

def test_sixteen_row_example():
    a = oc.augmented_ooa_example()
    assert (a.N, a.t, a.m, a.s, a.v) == (16, 3, 4, 3, 2)
    assert not a.has_wildcards
    assert verify_oca(a).passed
    assert reference_covers(a.entries, 4, 3, 2, 3)
    kept = oc.augmented_ooa_example(keep_wildcards=True)
    assert kept.has_wildcards
    for fill in (0, 1):
        assert verify_oca(instantiate_wildcards(kept, fill)).passed


@pytest.mark.parametrize("v,t,m", [(2, 3, 2), (2, 4, 3), (3, 3, 3), (3, 3, 4), (2, 2, 3), (3, 4, 2)])
def test_augment_block(v, t, m):
    a = oc.ooa_rs(v, t, m)
    out = oc.augment_block(a)
    k = min(2 * t, t)
    rows = {j: oc.default_ingredient(t - j, m - 1, t, v).N for j in range(2, k + 1)}
    assert out.N == oc.augment_block_rows(a.N, rows, t, t, v)
    assert out.m == m + 1 and verify_oca(out).passed
    # the original array survives as the first N rows, its last block duplicated
    np.testing.assert_array_equal(out.entries[:a.N, :a.n], a.entries)
    np.testing.assert_array_equal(out.entries[:a.N, a.n:], a.entries[:, -a.s:])


def test_augment_block_rejects_bad_ingredient():
    a = oc.ooa_rs(2, 3, 3)
    with pytest.raises(ValueError):
        oc.augment_block(a, {2: oc.constant_rows(3, 3, 2)})
    with pytest.raises(ValueError):
        oc.augment_block(oc.chain_pad(oc.ooa_rs(3, 2, 3), 3))


def test_augmented_rows_closed_forms():
    for t in range(3, 9):
        for v in (2, 3, 4, 5, 7, 8, 9):
            value = oc.augmented_ooa_rows(t, v)
            direct = Fraction(v) ** t * (t - sum(Fraction(1, v ** (j // 2)) for j in range(2, t + 1)))
            assert value == direct == oc.augmented_ooa_rows_sum(t, v)
    assert oc.corollary2_bound(3, 2) == 16
    assert oc.corollary2_bound(4, 3) == 261
    with pytest.raises(NotAPrimePower):
        oc.augmented_ooa_rows(3, 6)
    with pytest.raises(ValueError):
        oc.augmented_ooa_rows(2, 3)


@pytest.mark.parametrize("t,v", [(3, 2), (4, 2), (3, 3), (5, 2), (3, 4)])
def test_augmented_ooa_materializes_with_bound_size(t, v):
    a = oc.augmented_ooa(t, v)
    assert (a.N, a.t, a.m, a.s, a.v) == (oc.augmented_ooa_rows(t, v), t, v + 2, t, v)
    assert verify_oca(a).passed


def test_certify_raises_on_failure():
    bad = OrderedArray(np.zeros((3, 4)), m=2, s=2, v=2, t=2)
    with pytest.raises(oc.ConstructionError):
        oc.certify(bad, "zeros")
    with pytest.raises(oc.ConstructionError):
        oc.chain_project(bad.replace(t=2))


def test_default_ingredients():
    for t, m, s, v in itertools.product(range(0, 5), range(2, 5), range(1, 5), (2, 3, 4)):
        if t > m * s:
            continue
        try:
            a = oc.default_ingredient(t, m, s, v)
        except oc.ConstructionError:
            continue
        assert (a.t, a.m, a.s, a.v) == (t, m, s, v)
        assert certified(a)
