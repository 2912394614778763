"""
Searching for small models
==========================

Enumerate bimagmas satisfying some identities and violating another, up
to isomorphism, and check the counts against the brute-force enumerator.
"""

import time

from divbimagma import SearchSpec, enumerate_models, find_witness, format_algebra
from divbimagma.naive import naive_classes
from divbimagma.search import count_models

# semigroups of orders 1, 2, 3 up to isomorphism
print([count_models("semigroup", n) for n in (1, 2, 3)])

# bimagmas of size 3 with B1, B2, B3 whose x/x and x\x differ somewhere
spec = SearchSpec("bimagma", 3, ("B1", "B2", "B3"), forbid="cr4")
t = time.perf_counter()
res = enumerate_models(spec)
print(f"{len(res.models)} classes from {res.count_raw} raw models in {time.perf_counter() - t:.2f}s")
print(format_algebra(res.models[0]))

# same answer from the slow enumerator at size 2
small = SearchSpec("bimagma", 2, ("B1", "B2", "B3"), forbid="cr4")
fast = {tuple(k) for k in enumerate_models(small).keys}
print("pruned == naive:", fast == naive_classes("bimagma", 2, ("B1", "B2", "B3"), "cr4"))

# %%
# T1, T2 and T3 never leave T4 behind on small tables.
for n in (1, 2, 3, 4):
    w = find_witness(SearchSpec("bimagma", n, ("T1", "T2", "T3"), "T4"), bound=n)
    print(n, "no witness" if w is None else w)

# %%
# The smallest model separating ir4 from B1, B2, B3 and reginv1 has four elements.
for n in (1, 2, 3, 4):
    w = find_witness(SearchSpec("bimagma", n, ("B1", "B2", "B3", "reginv1"), "ir4"), bound=n)
    if w is not None:
        print(f"first witness at size {n}:")
        print(format_algebra(w))
        break
