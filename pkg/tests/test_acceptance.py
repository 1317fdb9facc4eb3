"""The twelve acceptance criteria, each with its wall-clock budget.

Every test records one ``PASS``/``FAIL`` line in ``RESULTS``; the conftest
prints them as a block at the end of the session.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

from nrtoca import bounds as bd
from nrtoca import codes as cc
from nrtoca import constructions as oc
from nrtoca import oracle
from nrtoca.arrays import OrderedArray, instantiate_wildcards, verify_ca, verify_oca
from nrtoca.gf import gf
from nrtoca.poset import NrtPoset, nrt_distance, omega_table, sphere_profile

from .conftest import SMALL_OCA_ROWS, reference_distance

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"FAIL  {number:>2}. {title} ({elapsed:.2f} s, budget {budget:g} s): {exc!s}".splitlines()[0]
        RESULTS.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title} ({elapsed:.2f} s, budget {budget:g} s)"
    RESULTS.append(line)
    print(line)
    assert ok, f"criterion {number} took {elapsed:.2f} s, budget {budget} s"


def test_01_example_array():
    with criterion(1, "5x8 example: OCA(5;2,4,2,2) passes, CA(5;2,8,2) fails on {1,4}", 1):
        a = OrderedArray(np.array([[int(c) for c in r] for r in SMALL_OCA_ROWS]), m=4, s=2, v=2, t=2)
        rep = verify_oca(a)
        assert rep.passed and rep.checked == 10
        ca = verify_ca(a, max_violations=None)
        assert not ca.passed and (1, 4) in ca.violating_columns()


def test_02_polynomial_ooa_exact():
    with criterion(2, "polynomial OOAs cover every tuple exactly once", 10):
        for v, t, m in [(2, 3, 3), (3, 3, 4), (4, 3, 5), (5, 4, 6), (4, 4, 5)]:
            a = oc.ooa_rs(gf(v), t, m, check=False)
            assert a.N == v**t
            rep = verify_oca(a)
            assert rep.passed and rep.exact, (v, t, m)


def test_03_fusion():
    with criterion(3, "fusing OOA(27;3,4,3,3) gives a verified OCA(25;3,4,3,2)", 1):
        a = oc.fuse(oc.ooa_rs(3, 3, 4))
        assert (a.N, a.t, a.m, a.s, a.v) == (3**3 - 2, 3, 4, 3, 2)
        assert verify_oca(a).passed


def test_04_block_augmentation_example():
    with criterion(4, "one block augmentation gives a verified OCA(16;3,4,3,2)", 1):
        a = oc.augment_block(oc.ooa_rs(2, 3, 3))
        assert (a.N, a.t, a.m, a.s, a.v) == (16, 3, 4, 3, 2)
        assert verify_oca(a).passed


def test_05_augmented_ooa_bound():
    with criterion(5, "augmented OOA bound 16 and 261; verified 261-row OCA(4,5,4,3)", 60):
        assert oc.corollary2_bound(3, 2) == 16
        assert oc.corollary2_bound(4, 3) == 261
        a = oc.augmented_ooa(4, 3, check=False)
        assert (a.N, a.t, a.m, a.s, a.v) == (261, 4, 5, 4, 3)
        assert verify_oca(a).passed


def test_06_gadget_properties():
    with criterion(6, "gadget row counts and suffix-coverage property", 10):
        for v, s in itertools.product((2, 3), (2, 3, 5)):
            for j in range(2, min(2 * s, 4) + 1):
                tj = oc.build_tj(v, s, j)
                assert tj.N == v**j - v ** ((j + 1) // 2)
                assert oc.tj_suffix_violations(tj) == [], (v, s, j)


def test_07_alphabet_augmentation():
    with criterion(7, "alphabet augmentation gives a verified OCA(N;3,3,3,3) of the predicted size", 10):
        a = oc.chain_project(oc.ooa_rs(2, 3, 3))
        b, c = oc.kleitman_spencer_ca(2), oc.kleitman_spencer_ca(3)
        out = oc.augment_alphabet_s3(a, b, c)
        m, v = 3, 3
        assert out.N == a.N + m * b.N + c.N + m * (v - 1) ** 2 + 1
        assert (out.t, out.m, out.s, out.v) == (3, 3, 3, 3)
        assert verify_oca(out).passed


def test_08_derivations():
    with criterion(8, "derivations verify with at most floor(N/v) rows", 10):
        for v, t in itertools.product((2, 3), (3, 4)):
            for m in range(2, v + 2):
                a = oc.ooa_rs(v, t, m)
                outs = [oc.derive_depth(a)]
                if m >= 2:
                    outs.append(oc.derive_block(a))
                for d in outs:
                    assert d.N <= a.N // v and d.t == t - 1
                    assert verify_oca(d).passed


def test_09_binary_code_table():
    expected = [6, 12, 24, 48, 24, 12, 6, 24, 12, 52, 208]
    with criterion(9, "binary code table: new column reproduced and every code verified", 60):
        rows = bd.emit_table(3)
        assert [r["new"] for r in rows] == expected
        for r in rows:
            size, _, build = bd.paired_code_plan(r["q"], r["m"], r["s"], r["R"])
            code = build()
            assert code.size == size == r["new"]
            assert cc.verify_covering(code).passed, r.fields


def test_10_product_code_table():
    from .test_bounds import PRODUCT_TABLE

    with criterion(10, "product table: 30 rows by formula; 48 over Z_4^6 and 192 over Z_4^9 verified", 120):
        rows = bd.emit_table(2, with_engine=False)
        assert [(r["paired"], r["product"]) for r in rows] == PRODUCT_TABLE
        by_key = {(r["v"], r["q"], r["m"], r["s"]): (r["paired"], r["product"]) for r in rows}
        assert by_key[3, 3, 3, 5] == (478953, 413343)
        assert by_key[4, 3, 2, 5] == (229824, 193536)
        small = cc.product_code(oc.ooa_rs(2, 3, 2), cc.code_even(2, 3, 1))
        assert (small.q, small.size) == (4, 48) and cc.verify_covering(small).passed
        large = cc.product_code(oc.chain_project(oc.ooa_rs(2, 4, 3)), cc.code_odd(2, 3, 1, 1))
        assert (large.q, large.m, large.R, large.size) == (4, 3, 5, 192)
        assert cc.verify_covering(large).passed


def test_11_smallest_open_case():
    with criterion(11, "6-word radius-3 code of Z_2^6; exhaustive search: 5 centers never suffice", 300):
        code = cc.code_even(2, 3, 1)
        assert code.size == 6 and cc.verify_covering(code).passed
        res = oracle.exact_min_covering(2, 2, 3, 3, size_cap=6)
        assert res.value == 6 and res.lower_bound == 6
        assert cc.verify_covering(res.witness).passed
        assert res.value <= code.size
    RESULTS.append(f"      computed: K_2(2,3,3) = {res.value} ({res.nodes} search nodes)")


def test_12_property_suites():
    rng = np.random.default_rng(2024)
    with criterion(12, "metric axioms, ideal census, ball symmetry, permutation invariance", 60):
        shapes = [(m, s) for m in range(1, 13) for s in range(1, 13) if m * s <= 12]
        for _ in range(10_000):
            m, s = shapes[rng.integers(len(shapes))]
            q = int(rng.integers(2, 5))
            x, y, z = rng.integers(0, q, size=(3, m * s))
            p = NrtPoset(m, s)
            dxy = nrt_distance(p, x, y)
            assert dxy == nrt_distance(p, y, x) == reference_distance(x, y, m, s)
            assert (dxy == 0) == bool(np.all(x == y))
            assert dxy <= nrt_distance(p, x, z) + nrt_distance(p, z, y)

        for m, s in [(m, s) for m in range(1, 11) for s in range(1, 11) if m * s <= 10]:
            census = oracle.brute_ideals(NrtPoset(m, s))
            table = omega_table(m, s)
            assert len(census.ideals) == (s + 1) ** m
            for (i, j), count in census.histogram.items():
                assert table[i, j] == count
            assert sum(census.histogram.values()) == sum(table.flat)

        for q in range(2, 17):
            for m, s in [(m, s) for m in range(1, 17) for s in range(1, 17) if q ** (m * s) <= 2**16]:
                total = q ** (m * s)
                for center in {0, int(rng.integers(total)), total - 1}:
                    R = int(rng.integers(0, m * s + 1))
                    assert oracle.ball_size(q, m, s, R, center) == sphere_profile(q, m, s, R).volume

        instances = [
            OrderedArray(np.array([[int(c) for c in r] for r in SMALL_OCA_ROWS]), m=4, s=2, v=2, t=2),
            oc.ooa_rs(3, 3, 4, check=False),
            instantiate_wildcards(oc.augmented_ooa_example(check=False), 0),
            OrderedArray(rng.integers(0, 2, size=(7, 6)), m=3, s=2, v=2, t=2),
        ]
        for a in instances:
            base = verify_oca(a)
            for _ in range(100):
                perm = rng.permutation(a.v)
                b = a.replace(entries=perm[a.entries][rng.permutation(a.N)])
                rep = verify_oca(b)
                assert rep.passed == base.passed
                assert rep.failing_anti_ideals == base.failing_anti_ideals


@pytest.fixture(scope="module", autouse=True)
def _report_header():
    RESULTS.clear()
    yield
