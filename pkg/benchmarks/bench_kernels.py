"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is run on both backends; results must agree before timings are
reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nrtoca import _pykernels, constructions as oc
from nrtoca.codes import code_odd, product_code
from nrtoca.oracle import _space, distance_matrix
from nrtoca.poset import column_indices, enumerate_anti_ideals

try:
    from nrtoca import _kernels
except ImportError:  # extension not built
    _kernels = None


def coverage_workload():
    a = oc.augmented_ooa(4, 3, check=False)
    cols = np.array([column_indices(a.poset, ai) for ai in enumerate_anti_ideals(a.poset, a.t)], dtype=np.int64)
    return "coverage_extremes  OCA(261;4,5,4,3)", "coverage_extremes", (np.ascontiguousarray(a.entries), cols, a.v)


def uncovered_workload():
    array = oc.chain_project(oc.ooa_rs(2, 4, 3))
    words = product_code(array, code_odd(2, 3, 1, 1)).words
    total = 4**9
    return "uncovered_words    K_4(3,3,5), 192 words", "uncovered_words", (words, 4, 3, 3, 5, 0, total, 10)


def search_workload():
    words = _space(2, 2, 3)
    within = distance_matrix(words, 2, 3) <= 3
    weights = np.left_shift(np.uint64(1), np.arange(64, dtype=np.uint64))
    masks = np.ascontiguousarray((within * weights).sum(axis=1, dtype=np.uint64))
    return "search_cover       K_2(2,3,3), k=5", "search_cover", (masks, (1 << 64) - 1, 5, int(within[0].sum()))


def best_time(fn, args, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback can be timed")
    print(f"{'workload':42} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, name, call_args in (coverage_workload(), uncovered_workload(), search_workload()):
        py_t, py_r = best_time(getattr(_pykernels, name), call_args, args.repeat)
        if _kernels is None:
            print(f"{label:42} {py_t:10.4f} {'-':>10} {'-':>8}")
            continue
        c_t, c_r = best_time(getattr(_kernels, name), call_args, args.repeat)
        if not same(py_r, c_r):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{label:42} {py_t:10.4f} {c_t:10.4f} {py_t / c_t:7.1f}x")


if __name__ == "__main__":
    main()
