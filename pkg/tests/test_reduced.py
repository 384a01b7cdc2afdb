import pytest
from hypothesis import given, settings, strategies as st

from cbtpq.pqcore import SENTINEL, ComparisonCounter, QueueEmpty
from cbtpq.reduced import ReducedTournament, local_parent, local_sister


class WriteLog(list):
    """List that remembers which slots were assigned."""

    def __init__(self, *a):
        super().__init__(*a)
        self.writes = []

    def __setitem__(self, k, v):
        self.writes.append(k)
        super().__setitem__(k, v)


def argmin(keys):
    return min(range(len(keys)), key=lambda i: (keys[i], i))


def test_local_hierarchy_examples():
    assert local_sister(0) == 1
    assert local_sister(1) == 0
    assert ((0 + 12) ^ 1) - 12 == 1
    assert ((1 + 12) ^ 1) - 12 == 0
    # odd N: the naive virtual-leaf sister of key 0 is not a key
    assert ((0 + 11) ^ 1) - 11 == -1
    assert local_parent(1, 11) == 6
    assert local_parent(0, 12) == 6
    assert local_parent(11, 12) == 11


def test_build_small():
    assert ReducedTournament([3.0, 1.0]).nodes[1] == 1
    t = ReducedTournament([5.0, 2.0, 9.0])
    assert t.n_keys == 4 and t.keys[3] == SENTINEL
    assert t.nodes[1] == 1
    assert len(t) == 3


def test_build_all_equal():
    t = ReducedTournament([4.0] * 12)
    assert 0 <= t.nodes[1] < 12
    t.check_tree()


def test_build_empty_rejected():
    with pytest.raises(ValueError):
        ReducedTournament([])


def test_update_example():
    t = ReducedTournament([3, 1, 2, 4])
    assert t.peek_min() == (1, 1)
    t.keys[1] = 9
    t.update(1)
    assert t.nodes[1] == 2
    assert t.peek_min() == (2, 2)


def test_tie_keeps_incumbent():
    t = ReducedTournament([1.0, 1.0])
    t.update(0)
    assert t.nodes[1] == 0
    assert ReducedTournament([7.0, 7.0]).peek_min() == (0, 7.0)


def test_update_out_of_range():
    t = ReducedTournament([1.0, 2.0])
    with pytest.raises(IndexError):
        t.update(2)
    with pytest.raises(IndexError):
        t.update_key(-1, 0.0)


@pytest.mark.parametrize("i", range(12))
def test_update_writes_exactly_the_path(i):
    t = ReducedTournament([float(k * 7 % 12) for k in range(12)])
    t.nodes = WriteLog(t.nodes)
    t.update(i)
    path = []
    p = (i + 12) // 2
    while p:
        path.append(p)
        p //= 2
    assert t.nodes.writes == path


def test_delete_min_sentinel_sequence():
    t = ReducedTournament([3, 1, 2, 4])
    assert t.delete_min_sentinel() == 1
    assert t.peek_min()[0] == 2
    assert [t.delete_min_sentinel() for _ in range(3)] == [2, 0, 3]
    with pytest.raises(QueueEmpty):
        t.delete_min_sentinel()


def test_two_keys_delete_once():
    t = ReducedTournament([5.0, 6.0])
    assert t.delete_min_sentinel() == 0
    assert t.peek_min() == (1, 6.0)


def test_delete_order_matches_sort():
    import random
    rng = random.Random(3)
    prios = [rng.random() for _ in range(101)]
    t = ReducedTournament(prios)
    out = [t.delete_min_sentinel() for _ in range(101)]
    assert out == sorted(range(101), key=prios.__getitem__)


@pytest.mark.parametrize("k", range(1, 11))
def test_comparisons_per_update_power_of_two(k):
    c = ComparisonCounter()
    n = 2 ** k
    t = ReducedTournament(c.wrap([float((i * 2654435761) % n) for i in range(n)]))
    for i in range(n):
        c.reset()
        t.update_key(i, c.wrap([float(i % 3)])[0])
        assert c.count == k


@pytest.mark.parametrize("n", [2, 6, 10, 12, 22, 100])
def test_comparisons_per_update_even_n(n):
    c = ComparisonCounter()
    t = ReducedTournament(c.wrap(range(n)))
    for i in range(n):
        c.reset()
        t.update(i)
        assert c.count == (i + n).bit_length() - 1


def test_storage_is_n_slots():
    assert ReducedTournament([0.0] * 64).storage_slots() == 64
    assert ReducedTournament([0.0] * 11).storage_slots() == 12


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40),
       st.lists(st.tuples(st.integers(0, 39), st.floats(-1e6, 1e6)), max_size=60))
def test_matches_linear_scan(prios, ops):
    t = ReducedTournament(prios)
    keys = list(t.keys)
    for i, p in ops:
        i %= len(prios)
        keys[i] = p
        t.update_key(i, p)
        assert t.peek_min()[1] == keys[argmin(keys)]
    t.check_tree()
