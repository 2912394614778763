"""Run every finite check of the results the package reproduces.

Each check yields one machine line ``<check-id> PASS|FAIL <detail>``; the
report also renders a table grouping the checks by the claim they support.
Output is deterministic: checks run in a fixed order and every search
result is canonicalized and sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import canonical_form
from .classes import (CLASSES, MAIN_TABLE, check_doubleprime_lemma, check_equivalence,
                      check_hierarchy, check_idempotent_fixing, check_inverse_sufficiency,
                      check_tamura_bases)
from .fixtures import WITNESS_BASES, FixtureReport, load_all, verify_fixture
from .functors import roundtrip_check
from .proofs import Theory, check_suite, shipped_suite, soundness_check
from .search import SearchSpec, enumerate_models, find_witness

__all__ = ["Check", "VerifyReport", "verify_paper", "independence_checks", "tamura_search",
           "fixture_checks", "proof_checks"]


@dataclass
class Check:
    id: str
    ok: bool
    detail: str
    claim: str

    def line(self) -> str:
        return f"{self.id} {'PASS' if self.ok else 'FAIL'} {self.detail}"


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def lines(self):
        return [c.line() for c in self.checks]

    def table(self) -> str:
        rows, order = {}, []
        for c in self.checks:
            if c.claim not in rows:
                rows[c.claim] = [0, 0]
                order.append(c.claim)
            rows[c.claim][0] += 1
            rows[c.claim][1] += c.ok
        w = max(len(k) for k in order) if order else 5
        out = [f"{'claim':<{w}}  checks  passed  result", "-" * (w + 26)]
        for k in order:
            n, p = rows[k]
            out.append(f"{k:<{w}}  {n:>6}  {p:>6}  {'PASS' if n == p else 'FAIL'}")
        return "\n".join(out)


def fixture_checks(fixtures, registry=None):
    for fx in fixtures:
        res = verify_fixture(fx, registry)
        line = next(FixtureReport([res]).lines())
        cid, status, detail = line.split(" ", 2)
        claim = "witness fixture profiles" if fx.witness else "example models"
        yield Check(cid, status == "PASS", detail, claim)


def roundtrip_checks(n, workers=1):
    for kind, req in (("unary_semigroup", ("I1", "tech")), ("bimagma", ("B1", "comp1", "comp2"))):
        total, bad = 0, 0
        for size in range(1, n + 1):
            res = enumerate_models(SearchSpec(kind, size, req, dedup="none"), workers=workers)
            total += len(res.models)
            bad += sum(not roundtrip_check(A) for A in res.models)
        yield Check(f"roundtrip:{kind}", bad == 0,
                    f"n<={n} labeled models {total} failures {bad}", "functors are mutually inverse")


def equivalence_checks(n, workers=1, classes=None):
    for name in classes or list(MAIN_TABLE) + [c for c in CLASSES if c not in MAIN_TABLE]:
        rep = check_equivalence(name, n, workers=workers)
        detail = str(rep).splitlines()[0].split(": ", 1)[1]
        claim = "characterization table" if name in MAIN_TABLE else "further characterizations"
        yield Check(f"equiv:{name}", rep.ok, detail, claim)


def sweep_checks(n, workers=1):
    for fn, claim in ((check_doubleprime_lemma, "double-prime lemma"),
                      (check_inverse_sufficiency, "inverse-sufficiency"),
                      (check_idempotent_fixing, "idempotent fixing"),
                      (check_hierarchy, "class hierarchy"),
                      (check_tamura_bases, "Tamura bases")):
        rep = fn(n, workers=workers)
        yield Check(f"sweep:{rep.name}", rep.ok, str(rep).split(": ", 1)[1], claim)


def tamura_search(n):
    """No bimagma of size <= n satisfies T1, T2, T3 and violates T4."""
    for size in range(1, n + 1):
        w = find_witness(SearchSpec("bimagma", size, ("T1", "T2", "T3"), "T4"), bound=size)
        yield Check(f"tamura-T4:n={size}", w is None,
                    "no model of T1,T2,T3 violating T4" if w is None else f"witness\n{w}",
                    "T1-T3 imply T4")


def independence_checks(fixtures):
    """Rediscover each witness fixture by search, and look for smaller witnesses."""
    for fx in fixtures:
        if not fx.witness:
            continue
        basis, missing = fx.witness
        req = tuple(x for x in WITNESS_BASES[basis] if x != missing)
        n = fx.algebra.size
        spec = lambda k: SearchSpec("bimagma", k, req, missing, prime=fx.prime)
        first = find_witness(spec(n), bound=n)
        res = enumerate_models(spec(n), bound=n)
        found = canonical_form(fx.algebra).data in res.keys
        smaller = {k: len(enumerate_models(spec(k), bound=k).models) for k in range(1, n)}
        minimal = not any(smaller.values())
        parts = [f"size {n}: {len(res.models)} witness classes",
                 "fixture among them" if found else "fixture NOT among them",
                 "first witness found" if first is not None else "find_witness returned nothing"]
        if smaller:
            parts.append("smaller sizes " + ",".join(f"{k}:{c}" for k, c in smaller.items()))
        yield Check(f"witness:{fx.id}", found and first is not None and minimal,
                    "; ".join(parts), "independence witnesses")


def proof_checks(fixtures, soundness_size=3, workers=1):
    theory = Theory()
    proofs = shipped_suite()
    report = check_suite(proofs, theory=theory)
    for v in report.verdicts:
        cid, status, detail = str(v).split(" ", 2)
        yield Check(cid, status == "PASS", detail, "derivation chains")
    for p, v in zip(proofs, report.verdicts):
        if not v.accepted:
            continue
        s = soundness_check(p, theory, soundness_size, fixtures, workers=workers)
        cid, status, detail = str(s).split(" ", 2)
        yield Check(cid, s.ok, detail, "derivation chains sound on small models")


def verify_paper(*, bound=3, deep=False, workers=1, fixture_root=None, progress=None) -> VerifyReport:
    """Every check, in order.  ``progress`` is called with each Check as it finishes."""
    fixtures = load_all(fixture_root)
    rep = VerifyReport()
    stages = [
        fixture_checks(fixtures),
        roundtrip_checks(bound, workers),
        equivalence_checks(bound, workers),
        sweep_checks(bound, workers),
        tamura_search(4 if deep else bound),
        independence_checks(fixtures),
        proof_checks(fixtures, bound, workers),
    ]
    for stage in stages:
        for c in stage:
            rep.checks.append(c)
            if progress:
                progress(c)
    return rep
