# # Bottleneck distance between two small diagrams
#
# Every point in a dimension-zero diagram is born at time 0, so a diagram
# is just a list of death times.  Matching two points costs the gap
# between their deaths, and sending a point to the diagonal costs half
# its death.

# %%
from h0bottleneck import PersistenceDiagram, bottleneck0, trace_bottleneck0, parse_diagram

a = PersistenceDiagram.from_deaths([10, 1])
b = PersistenceDiagram.from_deaths([5, 4])
result = bottleneck0(a, b)
print(result.value, result.terminal_case.value)

# %% [markdown]
# The algorithm pairs the two sorted lists by rank and then decides
# whether the costliest pair should be broken up.  The trace shows each
# decision.  Here the costliest pair is trimmed away once before the
# remaining singleton settles the answer.

# %%
steps, result = trace_bottleneck0(PersistenceDiagram.from_deaths([20, 10]),
                                  PersistenceDiagram.from_deaths([26, 1]))
for s in steps:
    print(f"n={s.n} l={s.l} d_temp={s.d_temp} zeta={s.zeta} h={s.h} -> {s.branch.value}")
print("distance:", result.value, "trims:", result.trims)

# %% [markdown]
# Diagrams can also come from CSV text, either one death per line or as
# birth,death rows.  Births have to be zero unless coercion is asked for.

# %%
x = parse_diagram("birth,death\n0,3.5\n0,1.25\n", "pairs")
y = parse_diagram("2\n")
print(x.deaths, y.deaths, bottleneck0(x, y).value)
