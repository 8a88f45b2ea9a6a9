"""
Timing growth with sample size
==============================

The exact statistics visit every pair once, so run time grows like n^2;
the fitted log-log slope makes that visible.
"""

from estat.bench import fit_slopes, run_bench

grid = [(n, p) for p in (2, 5) for n in (500, 1000, 2000, 4000)]
fits = fit_slopes(run_bench(grid, ["dcor", "edist"], replicates=3, seed=0))
for (op, p), f in sorted(fits.items()):
    print(f"{op:6s} p={p}  slope={f.slope:.3f}  95% CI [{f.ci_low:.3f}, {f.ci_high:.3f}]")
