"""Self-check suites run by ``cbtpq verify``."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .pqcore import KINDS, ComparisonCounter, differential_run, random_script
from .reduced import ReducedTournament
from .supercbt import check_pairing, find_parent_and_sister, sort_in_place


@dataclass
class SuiteResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


def involution_suite(max_n, pairing=find_parent_and_sister):
    """Pairing soundness for every active size ``2..max_n``."""
    if max_n < 2:
        return SuiteResult("involution", "skip", "no pairs below 2 keys")
    for m in range(1, max_n):
        problems = check_pairing(m, pairing)
        if problems:
            return SuiteResult("involution", "fail",
                               f"max_index {m}: {problems[0]}")
    return SuiteResult("involution", "pass", f"max_index 1..{max_n - 1}")


def differential_suite(kind, n_keys, n_ops, seed):
    capacity = 2 * n_keys if kind == "super" else None
    ops = random_script(kind, n_keys, n_ops, seed, capacity=capacity)
    res = differential_run(kind, ops, seed, n_keys, capacity=capacity)
    name = f"differential[{kind}]"
    if res:
        return SuiteResult(name, "pass", f"{n_ops} ops on {n_keys} keys")
    return SuiteResult(name, "fail", res.message)


def comparison_suite(max_n, seed):
    """ReducedCBT updates cost exactly log2(N) comparisons for N a power of two."""
    if max_n < 2:
        return SuiteResult("comparisons", "skip", "needs N >= 2")
    rng = np.random.default_rng(seed)
    counter = ComparisonCounter()
    k = 1
    while 2 ** k <= max_n:
        n = 2 ** k
        t = ReducedTournament(counter.wrap(rng.random(n)))
        for i in rng.integers(0, n, size=min(n, 64)):
            counter.reset()
            t.update_key(int(i), counter.wrap([rng.random()])[0])
            if counter.count != k:
                return SuiteResult("comparisons", "fail",
                                   f"N={n} i={i}: {counter.count} comparisons, expected {k}")
        k += 1
    return SuiteResult("comparisons", "pass", f"N = 2..{2 ** (k - 1)}")


def sort_suite(n_keys, seed):
    rng = np.random.default_rng(seed)
    prios = rng.random(max(n_keys, 2)).tolist()
    ids = list(range(len(prios)))
    out = sort_in_place(list(prios), ids)
    want = sorted(prios, reverse=True)
    got = [prios[i] for i in out]
    if got == want:
        return SuiteResult("sort", "pass", f"{len(prios)} keys")
    return SuiteResult("sort", "fail", "sorted order differs from reference sort")


def run_all(max_n=4096, seed=1, n_ops=20000, mutate_sister_guard=False):
    pairing = find_parent_and_sister
    if mutate_sister_guard:
        pairing = functools.partial(find_parent_and_sister, inclusive_guard=True)
    results = [involution_suite(max_n, pairing)]
    size = max(1, min(max_n, 512))
    for kind in KINDS:
        results.append(differential_suite(kind, size, n_ops, seed))
    results.append(comparison_suite(max_n, seed))
    results.append(sort_suite(min(max_n, 10**4), seed))
    return results
