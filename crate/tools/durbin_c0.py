"""Regenerates the CUSUM-of-squares c0 table embedded in
crates/core/src/diagnostics/durbin.rs.

c0(n, a) is the upper-a quantile of max_j (j/(n+1) - U_(j)) for n uniform
order statistics, simulated through normalized exponential spacings.
"""
import numpy as np

REPS = 400_000
CHUNK = 50_000
LEVELS = (0.05, 0.025, 0.005)

rng = np.random.default_rng(20200524)
rows = []
for n in range(1, 101):
    stats = []
    for _ in range(REPS // CHUNK):
        e = rng.exponential(size=(CHUNK, n + 1))
        s = np.cumsum(e, axis=1)
        u = s[:, :n] / s[:, n:n + 1]
        j = np.arange(1, n + 1) / (n + 1)
        stats.append(np.max(j - u, axis=1))
    stats = np.concatenate(stats)
    rows.append([np.quantile(stats, 1 - a) for a in LEVELS])
for n, r in enumerate(rows, 1):
    print(f"    [{r[0]:.4f}, {r[1]:.4f}, {r[2]:.4f}], // {n}")
