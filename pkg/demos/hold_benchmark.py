"""A quick hold-model comparison of the four structures.

The numbers are ratios of mean update time to the two-array reference tree,
so values below one mean faster. Small settings keep it under a minute; the
CLI (`cbtpq bench`) runs the full-size version and writes a CSV.

Run: python3 demos/hold_benchmark.py
"""

from cbtpq import KINDS
from cbtpq.bench import DISTRIBUTIONS, run_suite

records = run_suite(list(KINDS), [2 ** 10, 2 ** 14], DISTRIBUTIONS,
                    warmup_ops=20_000, timed_ops=20_000, repeats=3, seed=7)
print(f"{'structure':10} {'n':>6} {'distribution':12} {'metric':6} {'ns/op':>9} {'ratio':>6}")
for r in records:
    per_op = r.mean if r.metric == "hold" else r.mean / (r.n - 2)
    print(f"{r.structure:10} {r.n:6} {r.distribution:12} {r.metric:6} "
          f"{per_op:9.0f} {r.ratio:6.2f}")
