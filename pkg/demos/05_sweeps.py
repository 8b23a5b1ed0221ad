"""Exhaustive and random sweeps over (2,2) digraphs."""
# %%
import numpy as np

from phylochord import ALL_CHECKS, SweepScope, run_suite

rows = []
for n in range(2, 7):
    rep = run_suite(SweepScope("exhaustive", n), ALL_CHECKS, jobs=1)
    rows.append([rep.digraphs_checked] + [rep.applicable[c] for c in ALL_CHECKS])
    assert rep.ok
table = np.array(rows)
print("n  digraphs " + " ".join(f"{c:>14}" for c in ALL_CHECKS))
for n, row in zip(range(2, 7), table):
    print(f"{n}  {row[0]:>8} " + " ".join(f"{x:>14}" for x in row[1:]))

# %%
# share of digraphs for which each check had something to say
print(np.round(table[:, 1:] / table[:, :1], 3))

# %%
# random sampling beyond the exhaustive range
rep = run_suite(SweepScope("random", 10, sample_count=5000, seed=1), ALL_CHECKS, jobs=1)
print(rep.summary())
