# # Checking the fast algorithm against two slow ones
#
# The exhaustive oracle tries every pairing pattern and is exact, but it
# only handles tiny diagrams.  The matching oracle binary-searches the
# candidate distances and runs a bipartite matching at each one, which
# works up to a few thousand points.

# %%
import numpy as np

from h0bottleneck import (PersistenceDiagram, bottleneck0, bottleneck_exhaustive,
                          bottleneck_matching)
from h0bottleneck.verify import run_verify

rng = np.random.default_rng(0)
a = PersistenceDiagram.from_deaths(rng.uniform(0, 12, 6))
b = PersistenceDiagram.from_deaths(rng.uniform(0, 8, 4))
print(bottleneck0(a, b).value, bottleneck_exhaustive(a, b), bottleneck_matching(a, b))

# %% [markdown]
# A medium-sized pair goes through the matching oracle instead.

# %%
a = PersistenceDiagram.from_deaths(rng.uniform(0, 1000, 500))
b = PersistenceDiagram.from_deaths(rng.uniform(0, 600, 300))
print(bottleneck0(a, b).value, bottleneck_matching(a, b))

# %% [markdown]
# `run_verify` does the same across a seeded corpus and counts how often
# each branch of the algorithm decided the result.

# %%
print(run_verify(2000, 8, seed=1).format())
