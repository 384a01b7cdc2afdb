"""Replay a random op script on a structure and a linear-scan oracle.

Scripts are plain text, so a failing run can be saved and replayed later.

Run: python3 demos/oracle_differential.py
"""

from cbtpq.pqcore import differential_run, format_script, parse_script, random_script

ops = random_script("super", 64, 5000, seed=11, capacity=128)
text = format_script(ops)
print("first lines of the script:")
print("".join(text.splitlines(keepends=True)[:5]))

res = differential_run("super", parse_script(text), seed=11, n_keys=64,
                       capacity=128, check_every=100)
print("passed" if res else f"failed: {res.message}", f"after {res.ops_run} ops")

for kind in ("marin", "marin-vs", "reduced"):
    ops = random_script(kind, 64, 5000, seed=11, weights=(0.95, 0.05, 0.0))
    print(kind, "->", bool(differential_run(kind, ops, seed=11, n_keys=64)))
