# # Pairwise distances over a collection
#
# A distance matrix over a set of diagrams is the usual input to
# clustering or classification.  Only the upper triangle is computed.

# %%
from concurrent.futures import ThreadPoolExecutor

from h0bottleneck import PersistenceDiagram
from h0bottleneck.features import pairwise_matrix, summarize_distances
from h0bottleneck.simulate import SimSpec, simulate_diagram

toy = {
    "p": PersistenceDiagram.from_deaths([6]),
    "q": PersistenceDiagram.from_deaths([6, 2]),
    "r": PersistenceDiagram.from_deaths([10, 2]),
}
m = pairwise_matrix(toy)
print(m.labels)
print(m.values)
print(summarize_distances(m))

# %% [markdown]
# For larger collections an executor spreads the pairs across workers.
# The result is the same either way.

# %%
collection = {f"d{k}": simulate_diagram(SimSpec(200 + 50 * k, seed=8), k) for k in range(12)}
with ThreadPoolExecutor(4) as pool:
    big = pairwise_matrix(collection, executor=pool)
print(summarize_distances(big).to_json())
