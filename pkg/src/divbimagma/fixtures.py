"""Concrete models with their claimed identity profiles.

A fixture is a pair of files in the fixture directory::

    <id>.alg      the algebra, in the algebra file format
    <id>.expect   claimed verdicts plus recorded ones

``.expect`` layout::

    # source: <where the table comes from>
    # note: <free text, any number of lines>
    prime: left|right           optional, default left
    witness: <basis> <name>     optional; the model separates <name> from the rest of <basis>
    B1=true                     claimed verdicts
    [discrepancy]
    B1=true                     recorded verdicts that contradict a claim
    [observed]
    I1=true                     every other verdict, recorded from the tables

The fixture directory defaults to the copy shipped with the package and
can be moved with the ``DIVBIMAGMA_FIXTURES`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import parse_algebra
from .registry import Registry, default_registry
from .terms import PRIME_FORMS, SignatureMismatch, find_violation, holds

__all__ = [
    "Fixture", "FixtureResult", "FixtureReport", "UnknownFixture", "MalformedFixture",
    "fixture_dir", "fixture_ids", "load_fixture", "load_all", "parse_expect", "format_expect",
    "observed_profile", "verify_fixture", "verify_all_fixtures", "WITNESS_BASES",
]

ENV_VAR = "DIVBIMAGMA_FIXTURES"

# identity sets whose independence the witness fixtures demonstrate
WITNESS_BASES = {
    "einv": ("B1", "comp1", "comp2"),
    "reg": ("B1", "B2", "reg2"),
    "str": ("B1", "B2", "B3", "str3"),
    "indep": ("B1", "B2", "B3", "reginv1", "ir4"),
    "cliffindep": ("B1", "B2", "B3", "invcase", "cr4"),
}


class UnknownFixture(KeyError):
    pass


class MalformedFixture(ValueError):
    pass


@dataclass
class Fixture:
    id: str
    algebra: object
    expected: dict
    source: str = ""
    prime: str = "left"
    witness: tuple | None = None
    discrepancy: dict = field(default_factory=dict)
    observed: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def profile(self):
        """Every recorded verdict: claims overridden by known discrepancies, then observed."""
        out = dict(self.expected)
        out.update(self.discrepancy)
        out.update(self.observed)
        return out


def fixture_dir(root=None) -> Path:
    if root is not None:
        return Path(root)
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    return Path(str(resources.files("divbimagma").joinpath("data/fixtures")))


def fixture_ids(root=None) -> list[str]:
    return sorted(p.stem for p in fixture_dir(root).glob("*.alg"))


def _bool(text, lineno):
    if text == "true":
        return True
    if text == "false":
        return False
    raise MalformedFixture(f"line {lineno}: expected true or false, got {text!r}")


def parse_expect(text: str, fx: Fixture, registry: Registry | None = None) -> Fixture:
    registry = registry or default_registry()
    block = fx.expected
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("source:"):
                fx.source = body.partition(":")[2].strip()
            elif body.startswith("note:"):
                fx.notes.append(body.partition(":")[2].strip())
            continue
        if line == "[discrepancy]":
            block = fx.discrepancy
            continue
        if line == "[observed]":
            block = fx.observed
            continue
        if line.startswith("prime:"):
            fx.prime = line.partition(":")[2].strip()
            if fx.prime not in PRIME_FORMS:
                raise MalformedFixture(f"line {lineno}: unknown prime form {fx.prime!r}")
            continue
        if line.startswith("witness:"):
            parts = line.partition(":")[2].split()
            if len(parts) != 2 or parts[0] not in WITNESS_BASES or parts[1] not in WITNESS_BASES[parts[0]]:
                raise MalformedFixture(f"line {lineno}: bad witness line {line!r}")
            fx.witness = tuple(parts)
            continue
        name, sep, value = line.partition("=")
        name = name.strip()
        if not sep:
            raise MalformedFixture(f"line {lineno}: expected 'identity=true|false'")
        if name not in registry:
            raise MalformedFixture(f"line {lineno}: unknown identity {name!r}")
        block[name] = _bool(value.strip(), lineno)
    return fx


def format_expect(fx: Fixture) -> str:
    lines = [f"# source: {fx.source}"]
    lines += [f"# note: {n}" for n in fx.notes]
    if fx.prime != "left":
        lines.append(f"prime: {fx.prime}")
    if fx.witness:
        lines.append(f"witness: {fx.witness[0]} {fx.witness[1]}")
    fmt = lambda d: [f"{k}={'true' if v else 'false'}" for k, v in d.items()]
    lines += fmt(fx.expected)
    disc = {k: v for k, v in fx.observed.items() if k in fx.expected and fx.expected[k] != v}
    disc.update(fx.discrepancy)
    if disc:
        lines += ["[discrepancy]"] + fmt(disc)
    rest = {k: v for k, v in fx.observed.items() if k not in fx.expected}
    lines += ["[observed]"] + fmt(rest)
    return "\n".join(lines) + "\n"


def load_fixture(fid: str, root=None, registry: Registry | None = None) -> Fixture:
    d = fixture_dir(root)
    alg, exp = d / f"{fid}.alg", d / f"{fid}.expect"
    if not alg.exists():
        raise UnknownFixture(fid)
    algebra = parse_algebra(alg.read_text())
    fx = Fixture(fid, algebra, {})
    if exp.exists():
        parse_expect(exp.read_text(), fx, registry)
    return fx


def load_all(root=None) -> list[Fixture]:
    return [load_fixture(i, root) for i in fixture_ids(root)]


def observed_profile(fx: Fixture, registry: Registry | None = None) -> dict:
    """Verdict of every registry identity that makes sense on the fixture's algebra."""
    registry = registry or default_registry()
    out = {}
    for name, ident in registry.items():
        try:
            out[name] = holds(ident, fx.algebra, fx.prime)
        except SignatureMismatch:
            continue
    return out


@dataclass
class FixtureResult:
    id: str
    claim_mismatches: list = field(default_factory=list)   # (name, claimed, got, assignment)
    known: list = field(default_factory=list)              # names listed under [discrepancy]
    regressions: list = field(default_factory=list)        # (name, recorded, got)
    prime_sensitive: list = field(default_factory=list)    # names whose verdict depends on '

    @property
    def ok(self) -> bool:
        unexplained = [m for m in self.claim_mismatches if m[0] not in self.known]
        return not unexplained and not self.regressions

    @property
    def claims_hold(self) -> bool:
        return not self.claim_mismatches


@dataclass
class FixtureReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def claims_hold(self) -> bool:
        return all(r.claims_hold for r in self.results)

    def lines(self):
        for r in self.results:
            status = "PASS" if r.claims_hold and not r.regressions else "FAIL"
            detail = []
            for name, want, got, where in r.claim_mismatches:
                tag = "known discrepancy" if name in r.known else "mismatch"
                detail.append(f"{tag}: {name} claimed {want}, got {got}"
                              + (f" at {where}" if where else ""))
            for name, want, got in r.regressions:
                detail.append(f"regression: {name} recorded {want}, got {got}")
            if r.prime_sensitive:
                detail.append("verdict depends on the form of ': " + ",".join(r.prime_sensitive))
            yield f"fixture:{r.id} {status} {'; '.join(detail) or 'profile reproduced'}"


def verify_fixture(fx: Fixture, registry: Registry | None = None) -> FixtureResult:
    registry = registry or default_registry()
    res = FixtureResult(fx.id, known=sorted(fx.discrepancy))
    for name, want in fx.expected.items():
        got = holds(registry[name], fx.algebra, fx.prime)
        if got != want:
            where = find_violation(registry[name], fx.algebra, fx.prime)
            res.claim_mismatches.append((name, want, got, where))
    for name, want in {**fx.discrepancy, **fx.observed}.items():
        got = holds(registry[name], fx.algebra, fx.prime)
        if got != want:
            res.regressions.append((name, want, got))
    if fx.algebra.kind == "bimagma":
        for name in fx.profile():
            ident = registry[name]
            if holds(ident, fx.algebra, "left") != holds(ident, fx.algebra, "right"):
                res.prime_sensitive.append(name)
    return res


def verify_all_fixtures(root=None, registry: Registry | None = None) -> FixtureReport:
    return FixtureReport([verify_fixture(fx, registry) for fx in load_all(root)])
