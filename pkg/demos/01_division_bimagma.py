"""
From a unary semigroup to its division bimagma and back
=======================================================

A unary semigroup carries an associative product and a unary map x -> x'.
Its two divisions are x\\y = x'y and x/y = xy'.  When the unary map is
tame enough, the two division tables remember everything.
"""

from divbimagma import (FiniteUnarySemigroup, format_algebra, holds, parse_identity,
                        to_division_bimagma, to_unary_semigroup)
from divbimagma.algebra import FiniteBimagma
from divbimagma.functors import IllDefined, reconstruction_report
from divbimagma.registry import default_registry

reg = default_registry()

# the cyclic group of order 3, with x' the group inverse
Z3 = FiniteUnarySemigroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [0, 2, 1])
print(format_algebra(Z3))

B = to_division_bimagma(Z3)
print(format_algebra(B))

# B1 holds in every division bimagma: it is associativity in disguise
for name in ("B1", "B2", "B3", "cr4", "invcase"):
    print(f"{name:8s} {holds(reg[name], B)}")

# reconstruct: x' = (x\x)/x, xy = x/y'
S, report = to_unary_semigroup(B)
print(report)
print("same semigroup back:", S == Z3)

# %%
# A two-element band with the identity as unary map.  It is regular but the
# divisions still rebuild it exactly.
band = FiniteUnarySemigroup([[0, 0], [1, 1]], [0, 1])
print(to_unary_semigroup(to_division_bimagma(band))[0] == band)

# %%
# Not every pair of tables comes from a unary semigroup.  Here the two
# candidate definitions of x' disagree at 0.
bad = FiniteBimagma([[1, 0], [0, 0]], [[0, 0], [0, 0]])
try:
    to_unary_semigroup(bad)
except IllDefined as exc:
    print(exc.report)

# identities can be written inline too
print(holds(parse_identity("(x*y)' = y'*x'"), Z3))
