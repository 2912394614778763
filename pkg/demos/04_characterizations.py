"""
Class characterizations on all small instances
==============================================

For each class, every unary semigroup in it maps to a bimagma satisfying
the class basis, every bimagma satisfying the basis comes back as a member
of the class, and the two constructions are inverse on the nose.
"""

import time

from divbimagma.classes import MAIN_TABLE, check_equivalence

t = time.perf_counter()
for name in MAIN_TABLE:
    rep = check_equivalence(name, 3)
    print(rep)
print(f"{time.perf_counter() - t:.1f}s")
