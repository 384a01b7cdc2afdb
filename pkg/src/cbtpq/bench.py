"""Hold-model and shrink-to-sort benchmarks.

A *hold* takes the current winner, pushes its priority forward by a random
increment and restores the tree; the queue size never changes. After the
timed holds, the same queue is shrunk to two keys by repeatedly dismissing the
winner (physically for shrinkable structures, by sentinel substitution for the
fixed ones). Costs are reported relative to the ``marin`` reference tree.

Randomness: numpy ``PCG64``. Each ``(repeat, n, distribution)`` cell gets its
own stream, ``SeedSequence(seed, spawn_key=(repeat, n, dist))``, shared by all
structures so they see identical priority sequences.
"""

from __future__ import annotations

import csv
import enum
import gc
import math
import os
import tempfile
import time
from dataclasses import dataclass

import numpy as np

from .pqcore import KINDS, make_queue

REFERENCE = "marin"


class PriorityDistribution(enum.Enum):
    EXPONENTIAL = "exponential"
    UNIFORM = "uniform"
    BIASED = "biased"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown distribution {name!r}") from None


DISTRIBUTIONS = tuple(PriorityDistribution)


def sample(dist, r):
    """Priority increment for a uniform draw ``r`` in the open interval (0, 1)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"uniform draw must lie in (0, 1), got {r}")
    if dist is PriorityDistribution.EXPONENTIAL:
        return -math.log(r)
    if dist is PriorityDistribution.UNIFORM:
        return 2.0 * r
    return 0.9 + 0.2 * r


def open_uniform(rng, size):
    r = rng.random(size)
    while True:
        zero = r == 0.0
        if not zero.any():
            return r
        r[zero] = rng.random(int(zero.sum()))


def increments(dist, rng, size):
    """Vectorised :func:`sample` over ``size`` fresh draws."""
    r = open_uniform(rng, size)
    if dist is PriorityDistribution.EXPONENTIAL:
        return -np.log(r)
    if dist is PriorityDistribution.UNIFORM:
        return 2.0 * r
    return 0.9 + 0.2 * r


class TimerUnavailable(RuntimeError):
    pass


class Timer:
    """Nanosecond clock read around each timed block.

    Refuses to work with a clock coarser than ``max_resolution`` seconds
    rather than quietly producing meaningless numbers.
    """

    def __init__(self, clock="perf_counter", max_resolution=1e-6):
        info = time.get_clock_info(clock)
        if not info.monotonic:
            raise TimerUnavailable(f"clock {clock!r} is not monotonic")
        if info.resolution > max_resolution:
            raise TimerUnavailable(
                f"clock {clock!r} resolution {info.resolution}s exceeds {max_resolution}s")
        self.now = getattr(time, clock + "_ns")
        self.identity = f"{clock}({info.implementation})"
        self.resolution = info.resolution


@dataclass
class BenchRecord:
    structure: str
    n: int
    distribution: str
    metric: str
    mean: float
    rel_dev: float
    ratio: float | None = None


def cell_rng(seed, repeat, n, dist):
    code = DISTRIBUTIONS.index(dist)
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(repeat, n, code))))


def hold(pq, dist, rng):
    """One hold operation on ``pq``."""
    w, t = pq.peek_min()
    pq.update_key(w, t + sample(dist, float(open_uniform(rng, 1)[0])))


def hold_loop(pq, incs, timer=None):
    """Apply one hold per increment; return accumulated update time in ns."""
    peek_min = pq.peek_min
    update_key = pq.update_key
    if timer is None:
        for inc in incs:
            w, t = peek_min()
            update_key(w, t + inc)
        return 0
    now = timer.now
    acc = 0
    for inc in incs:
        w, t = peek_min()
        t += inc
        t0 = now()
        update_key(w, t)
        acc += now() - t0
    return acc


def shrink_to_two(pq, timer=None, record=False):
    """Dismiss winners until two keys remain.

    Returns ``(elapsed ns, dismissed priorities or None)``.
    """
    steps = len(pq) - 2
    seen = [] if record else None
    if pq.supports_shrink:
        def dismiss():
            w, t = pq.peek_min()
            if record:
                seen.append(t)
            pq.remove(w)
    else:
        def dismiss():
            if record:
                seen.append(pq.peek_min()[1])
            pq.delete_min_sentinel()
    t0 = timer.now() if timer else 0
    for _ in range(steps):
        dismiss()
    t1 = timer.now() if timer else 0
    return t1 - t0, seen


def _one_cell(kind, n, dist, warmup_ops, timed_ops, seed, repeat, timer, sort):
    rng = cell_rng(seed, repeat, n, dist)
    pq = make_queue(kind, increments(dist, rng, n).tolist())
    incs = increments(dist, rng, warmup_ops + timed_ops).tolist()
    enabled = gc.isenabled()
    gc.disable()
    try:
        hold_loop(pq, incs[:warmup_ops])
        hold_ns = hold_loop(pq, incs[warmup_ops:], timer)
        sort_ns = shrink_to_two(pq, timer)[0] if sort else None
    finally:
        if enabled:
            gc.enable()
    return hold_ns / timed_ops, sort_ns


def _summary(values):
    mean = float(np.mean(values))
    rel = float(np.std(values) / mean) if mean > 0 else 0.0
    return mean, rel


def _check(kind, n, timed_ops, repeats, sort):
    if kind not in KINDS:
        raise ValueError(f"unknown structure {kind!r}")
    if n < 2:
        raise ValueError("benchmarks need n >= 2")
    if sort and n < 3:
        raise ValueError("the sort benchmark needs n >= 3")
    if timed_ops < 1 or repeats < 1:
        raise ValueError("timed_ops and repeats must be positive")


def run_hold_benchmark(kind, n, dist, warmup_ops=10**6, timed_ops=10**6,
                       repeats=10, seed=0, timer=None):
    _check(kind, n, timed_ops, repeats, False)
    timer = timer or Timer()
    costs = [_one_cell(kind, n, dist, warmup_ops, timed_ops, seed, r, timer, False)[0]
             for r in range(repeats)]
    return BenchRecord(kind, n, dist.value, "hold", *_summary(costs))


def run_sort_benchmark(kind, n, dist, repeats=10, seed=0, warmup_ops=10**6,
                       timed_ops=10**6, timer=None):
    """Shrink-to-two cost, starting from the state the hold benchmark leaves."""
    _check(kind, n, timed_ops, repeats, True)
    timer = timer or Timer()
    costs = [_one_cell(kind, n, dist, warmup_ops, timed_ops, seed, r, timer, True)[1]
             for r in range(repeats)]
    return BenchRecord(kind, n, dist.value, "sort", *_summary(costs))


def shrink_steps(pq, steps, timer):
    """Dismiss ``steps`` winners; return elapsed ns."""
    if pq.supports_shrink:
        peek_min = pq.peek_min
        remove = pq.remove
        t0 = timer.now()
        for _ in range(steps):
            remove(peek_min()[0])
        return timer.now() - t0
    dismiss = pq.delete_min_sentinel
    t0 = timer.now()
    for _ in range(steps):
        dismiss()
    return timer.now() - t0


CHUNK = 5000


def run_suite(kinds, ns, dists, warmup_ops=10**6, timed_ops=10**6, repeats=10,
              seed=0, metrics=("hold", "sort"), timer=None, progress=None,
              chunk=CHUNK):
    """Benchmark the cross product with a paired, lockstep design.

    For each repeat and ``n`` every (structure, distribution) queue is built
    up front, and the timed work runs in rounds of ``chunk`` operations per
    queue, with the queue order rotated each round. Machine speed drifts on a
    scale of seconds on shared hosts; running all queues side by side means
    they all see the same drift, so ratios between them stay meaningful. Each
    queue still gets exactly ``timed_ops`` timed holds per repeat. Returns
    scaled records in CSV row order.
    """
    sort = "sort" in metrics
    for kind in kinds:
        for n in ns:
            _check(kind, n, timed_ops, repeats, sort)
    if chunk < 1:
        raise ValueError("chunk must be positive")
    timer = timer or Timer()
    hold_costs = {}
    sort_costs = {}
    for r in range(repeats):
        for n in ns:
            cells = []
            for dist in dists:
                rng = cell_rng(seed, r, n, dist)
                init = increments(dist, rng, n).tolist()
                incs = increments(dist, rng, warmup_ops + timed_ops).tolist()
                for kind in kinds:
                    cells.append([(kind, n, dist), make_queue(kind, init), incs, 0, 0])
            enabled = gc.isenabled()
            gc.disable()
            try:
                for cell in cells:
                    hold_loop(cell[1], cell[2][:warmup_ops])
                for k, a in enumerate(range(warmup_ops, warmup_ops + timed_ops, chunk)):
                    b = min(a + chunk, warmup_ops + timed_ops)
                    for cell in _rotated(cells, k):
                        cell[3] += hold_loop(cell[1], cell[2][a:b], timer)
                if sort:
                    for k, a in enumerate(range(0, n - 2, chunk)):
                        steps = min(chunk, n - 2 - a)
                        for cell in _rotated(cells, k):
                            cell[4] += shrink_steps(cell[1], steps, timer)
            finally:
                if enabled:
                    gc.enable()
            for key, _, _, h, s in cells:
                hold_costs.setdefault(key, []).append(h / timed_ops)
                if sort:
                    sort_costs.setdefault(key, []).append(s)
                if progress:
                    progress(r, key[0], n, key[2])
            del cells
    records = []
    for kind in sorted(kinds, key=KINDS.index):
        for n in sorted(ns):
            for dist in sorted(dists, key=DISTRIBUTIONS.index):
                if "hold" in metrics:
                    records.append(BenchRecord(kind, n, dist.value, "hold",
                                               *_summary(hold_costs[kind, n, dist])))
                if sort:
                    records.append(BenchRecord(kind, n, dist.value, "sort",
                                               *_summary(sort_costs[kind, n, dist])))
    if REFERENCE in kinds:
        scale_to_reference(records)
    return records


def _rotated(cells, k):
    k %= len(cells)
    return cells[k:] + cells[:k]


def scale_to_reference(records):
    """Fill ``ratio`` with each record's mean over the ``marin`` mean of its group."""
    ref = {(r.n, r.distribution, r.metric): r.mean
           for r in records if r.structure == REFERENCE}
    for r in records:
        key = (r.n, r.distribution, r.metric)
        if key not in ref:
            raise ValueError(f"no {REFERENCE} row for n={r.n} {r.distribution} {r.metric}")
        r.ratio = 1.0 if r.structure == REFERENCE else r.mean / ref[key]
    return records


CSV_HEADER = ("structure", "n", "distribution", "metric", "mean", "rel_dev", "ratio")


def write_csv(records, path, metadata=None):
    """Write records atomically; no partial file is left behind on failure."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bench-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            if metadata:
                fh.write("# " + " ".join(f"{k}={v}" for k, v in metadata.items()) + "\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in records:
                w.writerow([r.structure, r.n, r.distribution, r.metric,
                            f"{r.mean:.6g}", f"{r.rel_dev:.6g}",
                            "" if r.ratio is None else f"{r.ratio:.6g}"])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path):
    with open(path, newline="") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    out = []
    for row in csv.DictReader(rows):
        out.append(BenchRecord(row["structure"], int(row["n"]), row["distribution"],
                               row["metric"], float(row["mean"]), float(row["rel_dev"]),
                               float(row["ratio"]) if row["ratio"] else None))
    return out
