"""Build a small ReducedCBT, watch the winner move, and count comparisons.

Run: python3 demos/reduced_basics.py
"""

from cbtpq import ComparisonCounter, ReducedTournament

prios = [0.7, 0.3, 0.9, 0.5, 0.8, 0.1, 0.6, 0.4]
t = ReducedTournament(prios)
print("keys :", t.keys)
print("nodes:", t.nodes, "(slot 0 unused, nodes[1] is the overall winner)")
print("winner:", t.peek_min())

# Pushing the winner's priority forward hands the root to the runner-up.
t.update_key(5, 2.0)
print("after update_key(5, 2.0), winner:", t.peek_min())

# Odd sizes get one padding key that never wins.
odd = ReducedTournament([3.0, 1.0, 2.0])
print("odd input padded to", odd.n_keys, "keys; winner", odd.peek_min())

# Every update on 2**k keys costs exactly k comparisons.
c = ComparisonCounter()
big = ReducedTournament(c.wrap([float(v) for v in range(1024)]))
c.reset()
big.update_key(123, c.wrap([-1.0])[0])
print("comparisons for one update at N=1024:", c.count)

# Dismissing winners one by one yields the keys in ascending order.
t = ReducedTournament(prios)
print("ascending:", [prios[t.delete_min_sentinel()] for _ in range(len(prios))])
