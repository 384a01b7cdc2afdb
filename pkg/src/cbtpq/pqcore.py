"""Common queue interface, the linear-scan oracle and differential testing.

Every tournament structure in the package derives from :class:`TournamentQueue`
and answers the same questions: who holds the minimum priority, how do I change
a key's priority, and (when supported) how do I drop or add a key.

Comparison counting is done from the outside: wrap priorities in
:class:`CountingFloat` and every ``<`` a structure performs is tallied on the
shared :class:`ComparisonCounter`. The hot loops stay uninstrumented.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

import numpy as np

SENTINEL = sys.float_info.max
"""Largest finite float. Stands in for a dismissed key or a padding joker.

User priorities must stay strictly below it.
"""


class QueueEmpty(LookupError):
    pass


class TournamentQueue:
    """Base class of the four tournament structures.

    Subclasses keep ``keys`` and ``ids`` as plain lists indexed by key index,
    and ``nodes`` as the list of winner slots.
    """

    name = "abstract"
    supports_shrink = False
    supports_insert = False

    keys: list
    ids: list
    nodes: list

    def peek_min(self):
        """Return ``(key index, priority)`` of the current winner."""
        raise NotImplementedError

    def update(self, i):
        """Restore the tree after ``keys[i]`` was changed in place."""
        raise NotImplementedError

    def update_key(self, i, priority):
        self._check_index(i)
        self.keys[i] = priority
        self.update(i)

    def remove(self, i):
        """Dismiss key ``i`` and return its id."""
        raise NotImplementedError

    def insert(self, priority, id=None):
        raise NotImplementedError(f"{self.name} cannot grow")

    def indices(self):
        """Active key indices (the valid arguments of ``update_key``)."""
        return range(len(self))

    def storage_slots(self):
        """Number of auxiliary integer slots the structure allocates."""
        raise NotImplementedError

    def check_tree(self):
        """White-box check of every winner slot; raises AssertionError."""
        raise NotImplementedError

    def _check_index(self, i):
        if not 0 <= i < len(self.keys):
            raise IndexError(f"key index {i} out of range")

    def __len__(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} n={len(self)}>"


def verify_winners(nodes, keys, root, children):
    """Check that every winner slot below ``root`` is consistent.

    ``children(p)`` yields ``("node", q)`` or ``("key", k)`` entries. A slot is
    correct when it names a key of its own subtree holding the subtree's
    minimum priority; which of several tied keys it names is not checked.
    Returns the set of keys reachable from ``root``.
    """
    order = []
    stack = [root]
    while stack:
        p = stack.pop()
        order.append(p)
        for kind, q in children(p):
            if kind == "node":
                stack.append(q)
    best = {}
    members = {}
    for p in reversed(order):
        mem = set()
        low = None
        for kind, q in children(p):
            if kind == "node":
                mem |= members.pop(q)
                cand = best.pop(q)
            else:
                mem.add(q)
                cand = keys[q]
            if low is None or cand < low:
                low = cand
        w = nodes[p]
        assert w in mem, f"node {p} names key {w} outside its subtree"
        assert keys[w] == low, f"node {p} holds {keys[w]!r}, subtree min is {low!r}"
        best[p] = low
        members[p] = mem
    return members[root]


class ComparisonCounter:
    """Tally of comparisons made on :class:`CountingFloat` values."""

    def __init__(self):
        self.count = 0

    def wrap(self, values):
        return [CountingFloat(v, self) for v in values]

    def reset(self):
        self.count = 0


class CountingFloat(float):
    """A float that reports each ``<``/``>`` it takes part in to a counter.

    Sums keep the counter so hold-style arithmetic stays instrumented.
    """

    __slots__ = ("counter",)

    def __new__(cls, value, counter):
        obj = super().__new__(cls, value)
        obj.counter = counter
        return obj

    def __lt__(self, other):
        self.counter.count += 1
        return float.__lt__(self, other)

    def __gt__(self, other):
        self.counter.count += 1
        return float.__gt__(self, other)

    def __add__(self, other):
        return CountingFloat(float.__add__(self, other), self.counter)

    __radd__ = __add__


class OracleQueue:
    """Flat ``[priority, id, active]`` table; every query is a linear scan."""

    def __init__(self, priorities=(), ids=None):
        self.entries = []
        self.slot = {}
        if ids is None:
            ids = range(len(priorities))
        for p, id_ in zip(priorities, ids):
            self.insert(p, id_)

    def insert(self, priority, id):
        self.slot[id] = len(self.entries)
        self.entries.append([priority, id, True])

    def set(self, id, priority):
        self.entries[self.slot[id]][0] = priority

    def deactivate(self, id):
        self.entries[self.slot.pop(id)][2] = False
        if len(self.entries) > 2 * len(self.slot) + 64:
            # drop dead rows; relative order of live rows is kept
            self.entries = [e for e in self.entries if e[2]]
            self.slot = {e[1]: k for k, e in enumerate(self.entries)}

    def __len__(self):
        return len(self.slot)

    def peek_min(self):
        """``(id, priority)`` of the first active entry with minimal priority."""
        best = None
        for e in self.entries:
            if e[2] and (best is None or e[0] < best[0]):
                best = e
        if best is None:
            raise QueueEmpty("oracle is empty")
        return best[1], best[0]

    def min_priority(self):
        return min(e[0] for e in self.entries if e[2])


KINDS = ("marin", "marin-vs", "reduced", "super")


def make_queue(kind, priorities, ids=None, capacity=None):
    """Build a structure by its short name (``marin``, ``marin-vs``, ``reduced``, ``super``)."""
    from .baseline import MarinTournament, MarinVSTournament
    from .reduced import ReducedTournament
    from .supercbt import SuperTournament

    if kind == "marin":
        return MarinTournament(priorities, ids)
    if kind == "marin-vs":
        return MarinVSTournament(priorities, ids)
    if kind == "reduced":
        return ReducedTournament(priorities, ids)
    if kind == "super":
        return SuperTournament(priorities, ids, capacity=capacity)
    raise ValueError(f"unknown structure {kind!r}; choose from {', '.join(KINDS)}")


# -- replay scripts ---------------------------------------------------------
#
# One op per line:  U <i> <priority>  |  R <i>  |  I <priority> <id>


def format_script(ops):
    lines = []
    for op in ops:
        if op[0] == "U":
            lines.append(f"U {op[1]} {op[2]!r}")
        elif op[0] == "R":
            lines.append(f"R {op[1]}")
        elif op[0] == "I":
            lines.append(f"I {op[1]!r} {op[2]}")
        else:
            raise ValueError(f"unknown op {op!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_script(text):
    ops = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        try:
            if parts[0] == "U" and len(parts) == 3:
                ops.append(("U", int(parts[1]), float(parts[2])))
            elif parts[0] == "R" and len(parts) == 2:
                ops.append(("R", int(parts[1])))
            elif parts[0] == "I" and len(parts) == 3:
                ops.append(("I", float(parts[1]), int(parts[2])))
            else:
                raise ValueError("bad op")
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    return ops


def initial_priorities(n_keys, seed):
    rng = np.random.default_rng(seed)
    return rng.random(n_keys).tolist()


def random_script(kind, n_keys, n_ops, seed, capacity=None,
                  weights=(0.6, 0.2, 0.2)):
    """Random op script valid for ``kind``, replayable from ``seed``.

    ``weights`` are the probabilities of update/remove/insert; ops a structure
    cannot perform are redrawn as updates. Index choice depends on the active
    key set, so a shadow structure is driven alongside the generator.
    """
    rng = np.random.default_rng([seed, 1])
    shadow = make_queue(kind, initial_priorities(n_keys, seed), capacity=capacity)
    cap = capacity if capacity is not None else n_keys
    next_id = n_keys
    ops = []
    u, r, _ = weights
    for _ in range(n_ops):
        x = rng.random()
        active = list(shadow.indices())
        if x < u + r and x >= u and (len(active) > 1 or not shadow.supports_shrink):
            op = ("R", active[int(rng.integers(len(active)))])
        elif x >= u + r and shadow.supports_insert and len(shadow) < cap:
            op = ("I", float(rng.random()), next_id)
            next_id += 1
        else:
            op = ("U", active[int(rng.integers(len(active)))], float(rng.random()))
        _apply(shadow, op)
        ops.append(op)
    return ops


def _apply(pq, op):
    if op[0] == "U":
        pq.update_key(op[1], op[2])
    elif op[0] == "R":
        return pq.remove(op[1])
    else:
        pq.insert(op[1], op[2])


@dataclass
class DifferentialResult:
    passed: bool
    ops_run: int
    failed_op: int | None = None
    message: str = ""
    dump: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def differential_run(kind, ops, seed, n_keys, capacity=None, check_every=0):
    """Run ``ops`` on a structure and on the oracle in lockstep.

    After every op the structure's minimum priority must equal the oracle's.
    Priorities are copied, never recomputed, so equality is exact. With
    ``check_every`` > 0 the full white-box tree check also runs periodically.
    """
    prios = initial_priorities(n_keys, seed)
    pq = make_queue(kind, prios, capacity=capacity)
    oracle = OracleQueue(prios)
    for k, op in enumerate(ops):
        try:
            if op[0] == "U":
                oracle.set(pq.ids[op[1]], op[2])
            elif op[0] == "R":
                id_ = pq.ids[op[1]]
                if pq.supports_shrink:
                    oracle.deactivate(id_)
                else:
                    oracle.set(id_, SENTINEL)
            else:
                oracle.insert(op[1], op[2])
            _apply(pq, op)
            got = pq.keys[pq.peek_min()[0]]
            want = oracle.min_priority()
            if got != want:
                raise AssertionError(f"min priority {got!r}, oracle says {want!r}")
            if check_every and k % check_every == 0:
                pq.check_tree()
        except (AssertionError, IndexError, KeyError, ValueError) as exc:
            dump = {
                "keys": list(pq.keys),
                "nodes": list(pq.nodes),
                "oracle": [e for e in oracle.entries if e[2]],
            }
            return DifferentialResult(False, k + 1, k, f"op {k} {op!r}: {exc}", dump)
    return DifferentialResult(True, len(ops))
