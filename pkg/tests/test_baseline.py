import random

import pytest
from hypothesis import given, settings, strategies as st

from cbtpq.baseline import MarinTournament, MarinVSTournament
from cbtpq.pqcore import ComparisonCounter, OracleQueue, QueueEmpty


def test_leaf_of_key():
    t = MarinTournament([float(k) for k in range(11)])
    assert t.nodes[1 + 11] == 1
    assert (1 + 11) >> 1 == 6
    t.check_tree()


def test_build_four():
    assert MarinTournament([3, 1, 2, 4]).nodes[1] == 1


def test_update_and_sentinel():
    t = MarinTournament([3, 1, 2, 4])
    t.update_key(1, 9)
    assert t.peek_min() == (2, 2)
    assert t.delete_min_sentinel() == 2
    assert t.peek_min() == (0, 3)
    t.check_tree()


def test_sentinel_exhaustion():
    t = MarinTournament([1.0])
    t.delete_min_sentinel()
    with pytest.raises(QueueEmpty):
        t.delete_min_sentinel()


@pytest.mark.parametrize("n", [11, 12, 16, 33])
def test_comparisons_follow_leaf_depth(n):
    c = ComparisonCounter()
    t = MarinTournament(c.wrap(reversed(range(n))))
    for i in range(n):
        c.reset()
        t.update(i)
        assert c.count == (i + n).bit_length() - 1


def test_storage():
    assert MarinTournament([0.0] * 20).storage_slots() == 40
    assert MarinVSTournament([0.0] * 20).storage_slots() == 60


def test_vs_fresh_host_leaves():
    t = MarinVSTournament([float(k) for k in range(12)])
    assert t.host_leaf == [i + 12 for i in range(12)]
    m = MarinTournament([float(k) for k in range(12)])
    for i in range(12):
        t.update_key(i, 12.0 - i)
        m.update_key(i, 12.0 - i)
        assert t.nodes == m.nodes


def test_vs_remove_fifth_of_twelve():
    rng = random.Random(4)
    prios = [rng.random() for _ in range(12)]
    t = MarinVSTournament(prios)
    a, b = t.nodes[22], t.nodes[23]
    winner = b if prios[b] < prios[a] else a
    loser = a + b - winner
    assert t.remove(5) == 5
    assert len(t) == 11
    assert t.host_leaf[winner] == 11
    assert t.nodes[11] == winner
    assert t.keys[5] == prios[loser]
    assert t.host_leaf[loser] == 0
    # exactly one key sits on an ex-internal node
    raised = [i for i in t.indices() if t.host_leaf[i] < 12]
    assert raised == [winner]
    t.check_tree()


def test_vs_raised_key_needs_one_less_comparison():
    c = ComparisonCounter()
    prios = c.wrap([float(k) for k in range(12)])
    t = MarinVSTournament(prios)
    c.reset()
    t.update(10)
    before = c.count
    t.remove(0)
    raised = t.nodes[11]
    assert raised == 10
    c.reset()
    t.update(raised)
    assert c.count == before - 1


def test_vs_remove_key_in_last_pair():
    t = MarinVSTournament([5.0, 4.0, 3.0, 2.0])
    keys_before = list(t.keys)
    assert t.remove(3) == 3
    assert t.keys == keys_before
    assert t.host_leaf[2] == 3 and t.nodes[3] == 2
    assert t.peek_min() == (2, 3.0)
    t.check_tree()


def test_vs_remove_until_empty_sorted():
    rng = random.Random(8)
    prios = [rng.random() for _ in range(50)]
    t = MarinVSTournament(prios)
    out = [t.remove_min()[0] for _ in range(49)]
    assert len(t) == 1
    out.append(t.remove(t.indices()[0]))
    assert out == sorted(range(50), key=prios.__getitem__)
    with pytest.raises(QueueEmpty):
        t.peek_min()


def test_vs_inactive_index_rejected():
    t = MarinVSTournament([1.0, 2.0, 3.0])
    t.remove(0)
    gone = [i for i in range(3) if i not in t.indices()]
    with pytest.raises(IndexError):
        t.update(gone[0])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=1, max_size=30),
       st.lists(st.tuples(st.booleans(), st.integers(0, 10 ** 6), st.floats(-100, 100)),
                max_size=60))
def test_vs_random_ops_match_oracle(prios, ops):
    t = MarinVSTournament(prios)
    oracle = OracleQueue(prios)
    for is_remove, k, p in ops:
        active = t.indices()
        i = active[k % len(active)]
        if is_remove and len(t) > 1:
            oracle.deactivate(t.remove(i))
        else:
            oracle.set(t.ids[i], p)
            t.update_key(i, p)
        assert t.peek_min()[1] == oracle.min_priority()
        for j in t.indices():
            assert t.nodes[t.host_leaf[j]] == j
    t.check_tree()
