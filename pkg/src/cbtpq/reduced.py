"""ReducedCBT: a fixed-size tournament tree whose leaves are the keys themselves.

Key ``i`` has sister key ``i ^ 1`` and first parent node ``(i + N) // 2``; from
there on the ordinary ``p ^ 1`` / ``p >> 1`` navigation applies. This only
works for even ``N``, so an odd input gets one joker key of priority
:data:`~cbtpq.pqcore.SENTINEL` appended. The winner slots take ``N`` integers,
half of what a tree with a separate leaf layer needs.
"""

from .pqcore import SENTINEL, QueueEmpty, TournamentQueue, verify_winners


def local_sister(i):
    return i ^ 1


def local_parent(i, n_keys):
    return (i + n_keys) >> 1


class ReducedTournament(TournamentQueue):
    """Fixed-size min-queue over ``priorities``.

    ``nodes[1]`` always names a key of minimum priority. On equal priorities
    the key already holding a slot keeps it.
    """

    name = "reduced"

    def __init__(self, priorities, ids=None):
        keys = list(priorities)
        if not keys:
            raise ValueError("ReducedTournament needs at least one key")
        self.n_real = len(keys)
        ids = list(range(len(keys))) if ids is None else list(ids)
        if len(ids) != len(keys):
            raise ValueError("priorities and ids differ in length")
        if len(keys) % 2:
            keys.append(SENTINEL)
            ids.append(None)
        self.n_keys = n = len(keys)
        self.keys = keys
        self.ids = ids
        self.nodes = nodes = [0] * n
        # key pairs first, then the internal levels bottom-up
        for i in range(0, n, 2):
            nodes[(i + n) >> 1] = i + 1 if keys[i + 1] < keys[i] else i
        for p in range(n // 2 - 1, 0, -1):
            a = nodes[2 * p]
            b = nodes[2 * p + 1]
            nodes[p] = b if keys[b] < keys[a] else a

    def __len__(self):
        return self.n_real

    def indices(self):
        return range(self.n_real)

    def update(self, i):
        if not 0 <= i < self.n_keys:
            raise IndexError(f"key index {i} out of range")
        self._update(i)

    def update_key(self, i, priority):
        if not 0 <= i < self.n_keys:
            raise IndexError(f"key index {i} out of range")
        self.keys[i] = priority
        self._update(i)

    def _update(self, i):
        keys = self.keys
        nodes = self.nodes
        s = i ^ 1
        p = (i + self.n_keys) >> 1
        while p:
            if keys[s] < keys[i]:
                i = s
            nodes[p] = i
            s = nodes[p ^ 1]
            p >>= 1

    def peek_min(self):
        w = self.nodes[1]
        return w, self.keys[w]

    def remove(self, i):
        """Dismiss key ``i`` by giving it the sentinel priority. Size is unchanged."""
        if not 0 <= i < self.n_real:
            raise IndexError(f"key index {i} out of range")
        self.keys[i] = SENTINEL
        self._update(i)
        return self.ids[i]

    def delete_min_sentinel(self):
        w = self.nodes[1]
        if self.keys[w] == SENTINEL:
            raise QueueEmpty("every key already dismissed")
        self.keys[w] = SENTINEL
        self._update(w)
        return self.ids[w]

    def storage_slots(self):
        return len(self.nodes)

    def _children(self, p):
        n = self.n_keys
        if p >= n // 2:
            k = 2 * p - n
            return (("key", k), ("key", k + 1))
        return (("node", 2 * p), ("node", 2 * p + 1))

    def check_tree(self):
        if self.n_keys == 0:
            return
        covered = verify_winners(self.nodes, self.keys, 1, self._children)
        assert covered == set(range(self.n_keys)), "tree does not cover every key"
