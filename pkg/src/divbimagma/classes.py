"""Classes of unary semigroups and the bimagma identities characterizing them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraError, FiniteBimagma, FiniteUnarySemigroup, idempotents
from .functors import to_division_bimagma, to_unary_semigroup
from .registry import Registry, default_registry
from .search import SearchSpec, enumerate_models
from .terms import SignatureMismatch, find_violation, holds, rename_canonically

__all__ = [
    "ClassSpec", "CLASSES", "get_class", "classify_semigroup", "classify_bimagma",
    "is_group", "fixes_idempotents", "EquivalenceReport", "check_equivalence",
    "SweepReport", "check_doubleprime_lemma", "check_inverse_sufficiency",
    "check_idempotent_fixing", "check_hierarchy", "check_tamura_bases", "same_identity",
]


@dataclass(frozen=True)
class ClassSpec:
    name: str
    semigroup_axioms: tuple
    bimagma_axioms: tuple
    # extra semigroup-side condition that is not an identity (groups)
    predicate: object = None

    def semigroup_member(self, S, registry=None) -> bool:
        reg = registry or default_registry()
        ok = all(holds(reg[a], S) for a in reg.expand(self.semigroup_axioms))
        return ok and (self.predicate is None or self.predicate(S))

    def bimagma_member(self, B, registry=None) -> bool:
        reg = registry or default_registry()
        return all(holds(reg[a], B) for a in reg.expand(self.bimagma_axioms))


def is_group(S: FiniteUnarySemigroup) -> bool:
    """True iff ``(S, *)`` is a group and ``'`` is its inversion."""
    mul, inv = S.mul_array, S.inv_array
    x = np.arange(S.size)
    for e in range(S.size):
        if (mul[e] == x).all() and (mul[:, e] == x).all():
            return bool((mul[x, inv] == e).all() and (mul[inv, x] == e).all())
    return False


def fixes_idempotents(S: FiniteUnarySemigroup) -> bool:
    return all(S.inv[e] == e for e in idempotents(S))


_REG = ("I1", "I2")
CLASSES = {c.name: c for c in [
    ClassSpec("E-inversive+tech", ("I1", "tech"), ("B1", "comp1", "comp2")),
    ClassSpec("regular+I3", _REG + ("I3",), ("B1", "B2", "reg2")),
    ClassSpec("regular-involuted", _REG + ("I3", "I6"), ("B1", "B2", "B3", "reginv1")),
    ClassSpec("regular-involuted+I5", _REG + ("I3", "I6", "I5"),
              ("B1", "B2", "B3", "reginv1", "ir4")),
    ClassSpec("inverse", _REG + ("I3", "I6", "I8"), ("B1", "B2", "B3", "invcase")),
    ClassSpec("completely-regular", _REG + ("I7",), ("B1", "B2", "B3", "cr4")),
    ClassSpec("Clifford", _REG + ("I3", "I6", "I7", "I8"), ("B1", "B2", "B3", "cr4", "invcase")),
    ClassSpec("regular+I3+I4", _REG + ("I3", "I4"), ("B1", "B2", "B3", "str3")),
    ClassSpec("Tamura-regular-involuted", _REG + ("I3", "I6"), ("T1", "T2", "T3")),
    ClassSpec("Tamura-inverse", _REG + ("I3", "I6", "I8"), ("T1", "T2", "T3", "T5")),
    ClassSpec("group", _REG + ("I3", "I6", "I7"), ("KS",), predicate=is_group),
]}

# the seven rows of the characterization table, then the I4 row
MAIN_TABLE = ("E-inversive+tech", "regular+I3", "regular-involuted", "regular-involuted+I5",
              "inverse", "completely-regular", "Clifford", "regular+I3+I4")


def get_class(name: str) -> ClassSpec:
    try:
        return CLASSES[name]
    except KeyError:
        raise KeyError(f"unknown class {name!r}; known: {', '.join(CLASSES)}") from None


def _profile(A, registry):
    out = {}
    for name, ident in registry.items():
        try:
            out[name] = holds(ident, A)
        except SignatureMismatch:
            continue
    return out


def classify_semigroup(S: FiniteUnarySemigroup, registry: Registry | None = None) -> dict:
    """Verdict for every registry identity, then for every class by name."""
    reg = registry or default_registry()
    prof = _profile(S, reg)
    prof["idempotent-fixing"] = fixes_idempotents(S)
    for spec in CLASSES.values():
        ok = all(prof[a] for a in reg.expand(spec.semigroup_axioms))
        prof[spec.name] = ok and (spec.predicate is None or spec.predicate(S))
    return prof


def classify_bimagma(B: FiniteBimagma, registry: Registry | None = None) -> dict:
    reg = registry or default_registry()
    prof = {k: v for k, v in _profile(B, reg).items() if reg[k].side != "semigroup"}
    for spec in CLASSES.values():
        prof[spec.name] = all(prof[a] for a in reg.expand(spec.bimagma_axioms))
    return prof


@dataclass
class EquivalenceReport:
    cls: str
    bound: int
    semigroups: dict = field(default_factory=dict)   # size -> models checked
    bimagmas: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)   # (direction, algebra, reason)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def __str__(self):
        sg = ",".join(f"{n}:{c}" for n, c in sorted(self.semigroups.items()))
        bm = ",".join(f"{n}:{c}" for n, c in sorted(self.bimagmas.items()))
        head = (f"{self.cls} n<={self.bound}: semigroups [{sg}] bimagmas [{bm}] "
                f"counterexamples {len(self.counterexamples)}")
        lines = [head] + [f"  {d}: {r}\n{A}" for d, A, r in self.counterexamples[:5]]
        return "\n".join(lines)


def _violated(names, A, reg):
    for name in reg.expand(names):
        v = find_violation(reg[name], A)
        if v is not None:
            return f"{name} fails at {v}"
    return None


def check_equivalence(spec: ClassSpec | str, n: int, *, registry: Registry | None = None,
                      dedup: str = "none", workers: int = 1, bound: int | None = None,
                      max_counterexamples: int = 10) -> EquivalenceReport:
    """Sweep both directions of a characterization over all sizes up to ``n``.

    Forward: every unary semigroup in the class has a division bimagma
    satisfying the basis, and reconstructing it returns the semigroup.
    Converse: every bimagma satisfying the basis reconstructs to an
    associative unary semigroup in the class whose division bimagma is the
    original table.  ``dedup='none'`` checks every labeled instance.
    """
    if isinstance(spec, str):
        spec = get_class(spec)
    reg = registry or default_registry()
    rep = EquivalenceReport(spec.name, n)

    def bad(direction, A, reason):
        if len(rep.counterexamples) < max_counterexamples:
            rep.counterexamples.append((direction, A, reason))

    kw = dict(registry=reg, workers=workers, bound=bound)
    for size in range(1, n + 1):
        sg = enumerate_models(SearchSpec("unary_semigroup", size, spec.semigroup_axioms,
                                         dedup=dedup), **kw)
        models = [S for S in sg.models if spec.predicate is None or spec.predicate(S)]
        rep.semigroups[size] = len(models)
        for S in models:
            B = to_division_bimagma(S)
            why = _violated(spec.bimagma_axioms, B, reg)
            if why:
                bad("forward", S, why)
                continue
            try:
                back, _ = to_unary_semigroup(B)
            except AlgebraError as exc:
                bad("forward", S, f"reconstruction failed: {exc}")
                continue
            if back != S:
                bad("forward", S, "reconstruction is not the original semigroup")

        bm = enumerate_models(SearchSpec("bimagma", size, spec.bimagma_axioms, dedup=dedup), **kw)
        rep.bimagmas[size] = len(bm.models)
        for B in bm.models:
            try:
                S, _ = to_unary_semigroup(B)
            except AlgebraError as exc:
                bad("converse", B, f"reconstruction failed: {exc}")
                continue
            why = _violated(spec.semigroup_axioms, S, reg)
            if why is None and spec.predicate is not None and not spec.predicate(S):
                why = "class predicate fails"
            if why:
                bad("converse", B, why)
            elif to_division_bimagma(S) != B:
                bad("converse", B, "division bimagma of the reconstruction differs")
    return rep


@dataclass
class SweepReport:
    name: str
    bound: int
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        counts = ",".join(f"{n}:{c}" for n, c in sorted(self.checked.items()))
        return f"{self.name} n<={self.bound}: checked [{counts}] violations {len(self.violations)}"


def _sweep(name, n, require, test, registry, workers, dedup="iso"):
    rep = SweepReport(name, n)
    for size in range(1, n + 1):
        res = enumerate_models(SearchSpec("unary_semigroup", size, require, dedup=dedup),
                               registry=registry, workers=workers)
        rep.checked[size] = len(res.models)
        for S in res.models:
            why = test(S)
            if why:
                rep.violations.append((S, why))
    return rep


def check_doubleprime_lemma(n: int, *, registry: Registry | None = None, workers: int = 1):
    """On E-inversive unary semigroups with x''y = xy = xy'': I3 iff regular."""
    reg = registry or default_registry()

    def test(S):
        i3 = holds(reg["I3"], S)
        regular = holds(reg["I1"], S) and holds(reg["I2"], S)
        return None if i3 == regular else f"I3={i3} but regular={regular}"

    return _sweep("doubleprime", n, ("I1", "tech"), test, reg, workers)


def check_inverse_sufficiency(n: int, *, registry: Registry | None = None, workers: int = 1):
    """I2, I3 and I8 force I1 and I6."""
    reg = registry or default_registry()

    def test(S):
        return _violated(("I1", "I6"), S, reg)

    return _sweep("inverse-sufficiency", n, ("I2", "I3", "I8"), test, reg, workers)


def check_idempotent_fixing(n: int, *, registry: Registry | None = None, workers: int = 1):
    """On regular unary semigroups, I5 holds iff ' fixes every idempotent."""
    reg = registry or default_registry()

    def test(S):
        i5, fixing = holds(reg["I5"], S), fixes_idempotents(S)
        return None if i5 == fixing else f"I5={i5} but idempotent-fixing={fixing}"

    return _sweep("idempotent-fixing", n, _REG, test, reg, workers)


# (narrower, wider): every member of the first class belongs to the second
HIERARCHY = [
    ("Clifford", "inverse"), ("Clifford", "completely-regular"),
    ("inverse", "regular-involuted"), ("completely-regular", "regular+I3"),
    ("regular-involuted+I5", "regular-involuted"), ("regular-involuted", "regular+I3+I4"),
    ("regular+I3+I4", "regular+I3"), ("regular+I3", "E-inversive+tech"),
    ("group", "Clifford"),
]


def check_hierarchy(n: int, *, registry: Registry | None = None, workers: int = 1):
    """Class inclusions, tested on every regular unary semigroup up to size ``n``."""
    reg = registry or default_registry()

    def test(S):
        prof = classify_semigroup(S, reg)
        for small, big in HIERARCHY:
            if prof[small] and not prof[big]:
                return f"{small} but not {big}"
        return None

    return _sweep("hierarchy", n, _REG, test, reg, workers)


def check_tamura_bases(n: int, *, registry: Registry | None = None, workers: int = 1):
    """Bimagmas satisfying T1-T3 are exactly those satisfying B1, B2, B3, reginv1."""
    reg = registry or default_registry()
    rep = SweepReport("tamura-bases", n)
    for size in range(1, n + 1):
        a = enumerate_models(SearchSpec("bimagma", size, ("T1", "T2", "T3"), dedup="none"),
                             registry=reg, workers=workers)
        b = enumerate_models(SearchSpec("bimagma", size, ("B1", "B2", "B3", "reginv1"),
                                        dedup="none"), registry=reg, workers=workers)
        rep.checked[size] = len(a.models)
        for B in set(a.models) ^ set(b.models):
            rep.violations.append((B, "in exactly one of the two model sets"))
    return rep


def same_identity(first, second) -> bool:
    """Equal up to renaming variables in order of first occurrence."""
    return rename_canonically(first) == rename_canonically(second)
