"""SuperCBT: a keys-as-leaves tournament tree that can shrink and grow.

With ``M`` the highest active key index, keys ``i > M // 2`` are right leaves.
A right leaf's first parent is node ``i`` and its sister is ``i`` shifted right
by the position of its lowest set bit. A left leaf starts from ``2i + 1`` and
doubles while the result stays within ``M``. That node is both its parent and
its sister. When the active count is odd, exactly one left leaf overshoots
``M``. It is sisterless and passes through node ``2i + 1 == M + 1``.

The pairing only depends on ``M``, so removing the last key (or appending a new
one) only disturbs a couple of pairs near the end of the key array. That is
what makes in-place shrinking cheap.
"""

from .bitnav import lssb_position, mssb_position
from .pqcore import SENTINEL, QueueEmpty, TournamentQueue, verify_winners


def find_parent_and_sister(i, max_index, inclusive_guard=False):
    """First parent node and sister key of key ``i`` when ``max_index`` is the last key.

    A sisterless key gets itself as sister. ``inclusive_guard`` swaps the
    strict ``sister > max_index`` test for ``>=``; that variant breaks the
    pairing and only exists so the verification suite can prove it notices.
    """
    if max_index < 1:
        raise ValueError("a single key has no sister")
    if not 0 <= i <= max_index:
        raise IndexError(f"key index {i} outside 0..{max_index}")
    if i > max_index >> 1:
        return i, i >> lssb_position(i)
    parent = 2 * i + 1
    if parent > max_index:
        return parent, i
    parent <<= mssb_position(max_index // parent) - 1
    sister = parent
    if sister >= max_index if inclusive_guard else sister > max_index:
        sister = i
    return parent, sister


def pairing_table(max_index, pairing=find_parent_and_sister):
    """``[(parent, sister), ...]`` for every key in ``0..max_index``."""
    return [pairing(i, max_index) for i in range(max_index + 1)]


def check_pairing(max_index, pairing=find_parent_and_sister):
    """Return a list of problems with the pairing at ``max_index`` (empty if sound).

    Checks that sisterhood is an involution, that sisters share a parent, and
    that every bottom parent slot is claimed by exactly one pair or one lone key.
    """
    table = pairing_table(max_index, pairing)
    problems = []
    claims = {}
    for i, (p, s) in enumerate(table):
        if s != i:
            if not 0 <= s <= max_index:
                problems.append(f"key {i}: sister {s} out of range")
                continue
            if table[s][1] != i:
                problems.append(f"key {i} names {s}, but {s} names {table[s][1]}")
            if table[s][0] != p:
                problems.append(f"keys {i} and {s} disagree on parent ({p} vs {table[s][0]})")
        claims.setdefault(p, set()).add(i)
    for p, owners in claims.items():
        if len(owners) > 2 or (len(owners) == 2 and
                               table[min(owners)][1] != max(owners)):
            problems.append(f"node {p} claimed by {sorted(owners)}")
    return problems


class SuperTournament(TournamentQueue):
    """Variable-size min-queue with ``capacity + 2`` winner slots.

    Active keys always occupy indices ``0..len(self) - 1``. Removing a key
    moves the last key into its place; ids travel with their keys.
    """

    name = "super"
    supports_shrink = True
    supports_insert = True

    def __init__(self, priorities, ids=None, capacity=None, copy=True):
        keys = list(priorities) if copy or not isinstance(priorities, list) else priorities
        count = len(keys)
        if count == 0:
            raise ValueError("SuperTournament needs at least one key")
        if ids is None:
            ids = list(range(count))
        elif copy or not isinstance(ids, list):
            ids = list(ids)
        if len(ids) != count:
            raise ValueError("priorities and ids differ in length")
        if capacity is None:
            capacity = count
        if capacity < count:
            raise ValueError(f"capacity {capacity} below key count {count}")
        keys.extend([SENTINEL] * (capacity - count))
        ids.extend([None] * (capacity - count))
        self.keys = keys
        self.ids = ids
        self.capacity = capacity
        self.count = count
        self.nodes = [0] * (capacity + 2)
        self._next_id = count
        self._build()

    @property
    def max_index(self):
        return self.count - 1

    def _build(self):
        keys, nodes = self.keys, self.nodes
        m = self.count - 1
        if m < 1:
            nodes[1] = 0
            return
        for r in range((m >> 1) + 1, m + 1):
            s = r >> (r & -r).bit_length()
            nodes[r] = r if keys[r] < keys[s] else s
        if m % 2 == 0:
            nodes[m + 1] = m >> 1
        for p in range(m >> 1, 0, -1):
            a = nodes[2 * p]
            b = nodes[2 * p + 1]
            nodes[p] = b if keys[b] < keys[a] else a

    def __len__(self):
        return self.count

    def _check_index(self, i):
        if not 0 <= i < self.count:
            raise IndexError(f"key index {i} not active (count {self.count})")

    def update(self, i):
        if not 0 <= i < self.count:
            raise IndexError(f"key index {i} not active (count {self.count})")
        self._update(i)

    def update_key(self, i, priority):
        if not 0 <= i < self.count:
            raise IndexError(f"key index {i} not active (count {self.count})")
        self.keys[i] = priority
        self._update(i)

    def _update(self, i):
        m = self.count - 1
        keys = self.keys
        nodes = self.nodes
        if m == 0:
            nodes[1] = 0
            return
        # find_parent_and_sister, inlined
        if i > m >> 1:
            p = i
            s = i >> (i & -i).bit_length()
        else:
            p = 2 * i + 1
            if p > m:
                s = i
            else:
                p <<= (m // p).bit_length() - 1
                s = p
        if s != i and keys[s] < keys[i]:
            i = s
        nodes[p] = i
        s = nodes[p ^ 1]
        p >>= 1
        while p:
            if keys[s] < keys[i]:
                i = s
            nodes[p] = i
            s = nodes[p ^ 1]
            p >>= 1

    def peek_min(self):
        if self.count == 0:
            raise QueueEmpty("queue is empty")
        w = self.nodes[1]
        return w, self.keys[w]

    def remove(self, i):
        """Dismiss key ``i``; return its id.

        The last key first loses every registration it holds (its sister takes
        them over, with the two keys swapped so the registered priorities stay
        right). The dismissed key then trades places with the last key, so the
        dismissed key and id end up just past the new end of the array.
        """
        self._check_index(i)
        keys, ids, nodes = self.keys, self.ids, self.nodes
        removed = ids[i]
        last = self.count - 1
        if last == 0:
            self.count = 0
            return removed
        sister = last >> (last & -last).bit_length()
        target = i
        if nodes[last] == last:
            p = last
            while p and nodes[p] == last:
                nodes[p] = sister
                p >>= 1
            if i != last:
                keys[sister], keys[last] = keys[last], keys[sister]
                ids[sister], ids[last] = ids[last], ids[sister]
                if i == sister:
                    target = last
        if target != last:
            keys[target], keys[last] = keys[last], keys[target]
            ids[target], ids[last] = ids[last], ids[target]
        self.count = last
        if last == 1:
            nodes[1] = 0
            return removed
        # the sister's pairing changes with the parity of the new end
        self._update(sister)
        if target != last and target != sister:
            self._update(target)
        return removed

    def remove_min(self):
        """Dismiss the winner; return ``(id, priority)``."""
        if self.count == 0:
            raise QueueEmpty("queue is empty")
        w = self.nodes[1] if self.count > 1 else 0
        p = self.keys[w]
        return self.remove(w), p

    def insert(self, priority, id=None):
        """Append a key at index ``len(self)``.

        Growing from an even count moves key ``len // 2`` from the right side
        to the left side, where it becomes the sisterless key. Its pass-through
        slot is written first, then a single update settles the new key.
        """
        if self.count >= self.capacity:
            raise OverflowError(f"capacity {self.capacity} reached")
        if id is None:
            id = self._next_id
            self._next_id += 1
        m = self.count - 1
        new = self.count
        self.keys[new] = priority
        self.ids[new] = id
        self.count += 1
        if new == 0:
            self.nodes[1] = 0
            return new
        if m % 2 == 1:
            f = (m + 1) >> 1
            self.nodes[2 * f + 1] = f
        self._update(new)
        return new

    def storage_slots(self):
        return len(self.nodes)

    def _children(self, p):
        m = self.count - 1
        if p <= m >> 1:
            return (("node", 2 * p), ("node", 2 * p + 1))
        if p <= m:
            return (("key", p >> (p & -p).bit_length()), ("key", p))
        return (("key", m >> 1),)

    def check_tree(self):
        if self.count == 0:
            return
        if self.count == 1:
            assert self.nodes[1] == 0
            return
        covered = verify_winners(self.nodes, self.keys, 1, self._children)
        assert covered == set(range(self.count)), "tree does not cover every active key"
        for p in range(1, self.count + 1):
            assert self.nodes[p] < self.count, (
                f"node {p} still names dismissed key {self.nodes[p]}")


def sort_in_place(priorities, ids=None):
    """Sort keys largest-first by repeatedly dismissing the winner.

    Each dismissed winner lands just past the shrinking end, so the arrays end
    up in non-increasing priority order. ``priorities`` and ``ids`` are
    rearranged in place when they are lists. Returns ``ids``. Tie order is
    unspecified.
    """
    if ids is None:
        ids = list(range(len(priorities)))
    if len(priorities) < 2:
        return ids if isinstance(ids, list) else list(ids)
    t = SuperTournament(priorities, ids, copy=False)
    while t.count > 1:
        t.remove(t.nodes[1])
    return t.ids
