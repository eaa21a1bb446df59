# # Synthetic diagrams and running time
#
# Simulated diagrams draw n deaths uniformly on (0, 2n).  Each diagram
# drawn under the same seed gets its own random stream, so results repeat
# exactly between runs.

# %%
from h0bottleneck import bottleneck0
from h0bottleneck.bench import fit, summarize, sweep
from h0bottleneck.simulate import PairSpec, SimSpec, simulate_diagram, simulate_pair

d = simulate_diagram(SimSpec(1000, seed=3))
print(len(d), d.deaths[:3], d.deaths.max() < 2000)

a, b = simulate_pair(PairSpec(SimSpec(1000, seed=3), partner_jitter=0.8))
print(len(a), len(b), bottleneck0(a, b).value)

# %% [markdown]
# Running time grows linearly with the size of the diagrams.  A short
# sweep with a linear fit over the per-size medians shows it.

# %%
records = sweep("equal-size", [20_000, 40_000, 60_000, 80_000, 100_000], reps=5, seed=0)
for n, five in summarize(records).items():
    print(f"n={n:>7}  median {five.median * 1e3:.2f} ms")
report = fit(records, "linear")
print("R^2 =", round(report.r_squared, 3))

# %% [markdown]
# Comparing a diagram with one about half its size over the same range is
# the slow regime.  Most of the small diagram's points then prefer the
# diagonal, and the algorithm trims one pair at a time.

# %%
for setting in ("equal-size", "half-size"):
    recs = sweep(setting, [50_000], reps=5, seed=0)
    print(setting, f"{summarize(recs)[50_000].median * 1e3:.2f} ms")
