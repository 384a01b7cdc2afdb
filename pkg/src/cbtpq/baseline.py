"""Reference tournament trees with a separate leaf layer.

``MarinTournament`` is the classic fixed-size tree: ``2N`` slots, internal
nodes ``1..N-1`` and leaves ``N..2N-1``, where leaf ``i + N`` permanently holds
key index ``i``. ``MarinVSTournament`` adds a host-leaf table so the tree can
shrink: each removal vacates the last leaf pair and raises the pair's winner
into their parent, which becomes a leaf.

Both climb the tree top-down: at each level the parent is found first and
both of its children are read back before comparing.
"""

from .pqcore import SENTINEL, QueueEmpty, TournamentQueue, verify_winners


def _climb(nodes, keys, n):
    while n > 1:
        p = n >> 1
        a = nodes[p << 1]
        b = nodes[(p << 1) | 1]
        nodes[p] = b if keys[b] < keys[a] else a
        n = p


class MarinTournament(TournamentQueue):
    name = "marin"

    def __init__(self, priorities, ids=None):
        self.keys = keys = list(priorities)
        n = len(keys)
        if n == 0:
            raise ValueError("MarinTournament needs at least one key")
        self.ids = list(range(n)) if ids is None else list(ids)
        if len(self.ids) != n:
            raise ValueError("priorities and ids differ in length")
        self.n_keys = n
        self.nodes = nodes = [0] * (2 * n)
        nodes[n:] = range(n)
        for p in range(n - 1, 0, -1):
            a = nodes[2 * p]
            b = nodes[2 * p + 1]
            nodes[p] = b if keys[b] < keys[a] else a

    def __len__(self):
        return self.n_keys

    def update(self, i):
        if not 0 <= i < self.n_keys:
            raise IndexError(f"key index {i} out of range")
        _climb(self.nodes, self.keys, i + self.n_keys)

    def update_key(self, i, priority):
        if not 0 <= i < self.n_keys:
            raise IndexError(f"key index {i} out of range")
        self.keys[i] = priority
        _climb(self.nodes, self.keys, i + self.n_keys)

    def peek_min(self):
        w = self.nodes[1]
        return w, self.keys[w]

    def remove(self, i):
        """Dismiss key ``i`` by giving it the sentinel priority."""
        self._check_index(i)
        self.keys[i] = SENTINEL
        _climb(self.nodes, self.keys, i + self.n_keys)
        return self.ids[i]

    def delete_min_sentinel(self):
        w = self.nodes[1]
        if self.keys[w] == SENTINEL:
            raise QueueEmpty("every key already dismissed")
        self.keys[w] = SENTINEL
        _climb(self.nodes, self.keys, w + self.n_keys)
        return self.ids[w]

    def storage_slots(self):
        return len(self.nodes)

    def _children(self, p):
        if p >= self.n_keys:
            return (("key", self.nodes[p]),)
        return (("node", 2 * p), ("node", 2 * p + 1))

    def check_tree(self):
        n = self.n_keys
        assert self.nodes[n:] == list(range(n)), "leaf layer was disturbed"
        covered = verify_winners(self.nodes, self.keys, 1, self._children)
        assert covered == set(range(n))


class MarinVSTournament(TournamentQueue):
    """Shrinkable reference tree: ``2N`` node slots plus an ``N``-entry host-leaf map.

    With ``count`` active keys the leaves are nodes ``count..2*count-1``.
    Removing key ``i`` raises the winner of the last leaf pair into the pair's
    parent. The loser's key and id are copied into slot ``i``, and slot
    ``i`` keeps its leaf. Key slots are therefore not kept dense. Use
    :meth:`indices` to list the live ones.
    """

    name = "marin-vs"
    supports_shrink = True

    def __init__(self, priorities, ids=None):
        self.keys = keys = list(priorities)
        n = len(keys)
        if n == 0:
            raise ValueError("MarinVSTournament needs at least one key")
        self.ids = list(range(n)) if ids is None else list(ids)
        if len(self.ids) != n:
            raise ValueError("priorities and ids differ in length")
        self.n_keys = n
        self.count = n
        self.nodes = nodes = [0] * (2 * n)
        nodes[n:] = range(n)
        self.host_leaf = list(range(n, 2 * n))
        for p in range(n - 1, 0, -1):
            a = nodes[2 * p]
            b = nodes[2 * p + 1]
            nodes[p] = b if keys[b] < keys[a] else a

    def __len__(self):
        return self.count

    def indices(self):
        return [i for i, leaf in enumerate(self.host_leaf) if leaf]

    def _check_index(self, i):
        if not (0 <= i < self.n_keys and self.host_leaf[i]):
            raise IndexError(f"key index {i} is not active")

    def update(self, i):
        if not 0 <= i < self.n_keys or not self.host_leaf[i]:
            raise IndexError(f"key index {i} is not active")
        _climb(self.nodes, self.keys, self.host_leaf[i])

    def update_key(self, i, priority):
        if not 0 <= i < self.n_keys or not self.host_leaf[i]:
            raise IndexError(f"key index {i} is not active")
        self.keys[i] = priority
        _climb(self.nodes, self.keys, self.host_leaf[i])

    def peek_min(self):
        if self.count == 0:
            raise QueueEmpty("queue is empty")
        w = self.nodes[1]
        return w, self.keys[w]

    def remove(self, i):
        self._check_index(i)
        keys, ids, nodes, host = self.keys, self.ids, self.nodes, self.host_leaf
        removed = ids[i]
        k = self.count
        if k == 1:
            host[i] = 0
            self.count = 0
            return removed
        raised = k - 1
        w = nodes[raised]
        a = nodes[2 * k - 2]
        loser = nodes[2 * k - 1] if a == w else a
        if i == w or i == loser:
            # dismissed key sits in the last pair: its partner takes the parent
            other = loser if i == w else w
            nodes[raised] = other
            host[other] = raised
            host[i] = 0
            self.count = k - 1
            _climb(nodes, keys, raised)
            return removed
        host[w] = raised
        keys[i] = keys[loser]
        ids[i] = ids[loser]
        host[loser] = 0
        self.count = k - 1
        _climb(nodes, keys, host[i])
        return removed

    def remove_min(self):
        if self.count == 0:
            raise QueueEmpty("queue is empty")
        w = self.nodes[1]
        p = self.keys[w]
        return self.remove(w), p

    def storage_slots(self):
        return len(self.nodes) + len(self.host_leaf)

    def _children(self, p):
        if p >= self.count:
            return (("key", self.nodes[p]),)
        return (("node", 2 * p), ("node", 2 * p + 1))

    def check_tree(self):
        if self.count == 0:
            return
        active = self.indices()
        assert len(active) == self.count, "active-slot count drifted"
        for i in active:
            assert self.nodes[self.host_leaf[i]] == i, f"key {i} lost its leaf"
        leaves = self.nodes[self.count:2 * self.count]
        assert sorted(leaves) == active, "leaf layer does not match active keys"
        verify_winners(self.nodes, self.keys, 1, self._children)
