"""Division bimagma of a unary semigroup, and the reconstruction back.

    x\\y = x'y,   x/y = xy'                        (division bimagma)
    x' = (x\\x)/x = x\\(x/x),   xy = x/y' = x'\\y    (reconstruction)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlgebraError, FiniteBimagma, FiniteUnarySemigroup, NonAssociative,
                      _first_nonassociative)

__all__ = [
    "ReconstructionReport", "IllDefined", "to_division_bimagma", "reconstruction_report",
    "to_unary_semigroup", "roundtrip_check",
]


@dataclass
class ReconstructionReport:
    prime_disagreements: list = field(default_factory=list)
    mul_disagreements: list = field(default_factory=list)
    inv: tuple = ()
    mul: tuple = ()
    nonassociative: tuple | None = None

    @property
    def ok(self) -> bool:
        return not self.prime_disagreements and not self.mul_disagreements

    @property
    def pre_semigroup(self) -> bool:
        """Well defined, but the reconstructed product is not associative."""
        return self.ok and self.nonassociative is not None

    def __str__(self):
        lines = [f"reconstruction {'well defined' if self.ok else 'ill defined'}"]
        for x in self.prime_disagreements:
            lines.append(f"  (x\\x)/x != x\\(x/x) at x={x}")
        for x, y in self.mul_disagreements:
            lines.append(f"  x/y' != x'\\y at x={x}, y={y}")
        if self.nonassociative is not None:
            i, j, k = self.nonassociative
            lines.append(f"  product not associative at x={i}, y={j}, z={k}")
        return "\n".join(lines)


class IllDefined(AlgebraError):
    def __init__(self, report: ReconstructionReport):
        self.report = report
        super().__init__(str(report))


def to_division_bimagma(S: FiniteUnarySemigroup) -> FiniteBimagma:
    mul, inv = S.mul_array, S.inv_array
    return FiniteBimagma(mul[inv, :], mul[:, inv])


def reconstruction_report(B: FiniteBimagma) -> ReconstructionReport:
    ld, rd = B.ld_array, B.rd_array
    x = np.arange(B.size)
    prime_l = rd[ld[x, x], x]
    prime_r = ld[x, rd[x, x]]
    # both candidate products, using the left form of '
    via_rd = rd[:, prime_l]              # x/y'
    via_ld = ld[prime_l, :]              # x'\y
    report = ReconstructionReport(
        prime_disagreements=[int(i) for i in np.flatnonzero(prime_l != prime_r)],
        mul_disagreements=[(int(i), int(j)) for i, j in np.argwhere(via_rd != via_ld)],
        inv=tuple(int(v) for v in prime_l),
        mul=tuple(tuple(int(v) for v in row) for row in via_rd),
    )
    report.nonassociative = _first_nonassociative(via_rd)
    return report


def to_unary_semigroup(B: FiniteBimagma) -> tuple[FiniteUnarySemigroup, ReconstructionReport]:
    """Reconstruct ``(S, *, ')`` from ``B``.

    Raises IllDefined when the two forms of ``'`` or of the product
    disagree anywhere, and NonAssociative when the product is well defined
    but not associative.
    """
    report = reconstruction_report(B)
    if not report.ok:
        raise IllDefined(report)
    if report.nonassociative is not None:
        raise NonAssociative(*report.nonassociative)
    return FiniteUnarySemigroup(report.mul, report.inv), report


def roundtrip_check(A) -> bool:
    """True iff both constructions compose to the identity on ``A`` exactly."""
    if A.kind == "unary_semigroup":
        B = to_division_bimagma(A)
        try:
            S, _ = to_unary_semigroup(B)
        except AlgebraError:
            return False
        return S == A
    if A.kind == "bimagma":
        S, _ = to_unary_semigroup(A)
        return to_division_bimagma(S) == A
    raise TypeError(f"no round trip for {A.kind}")
