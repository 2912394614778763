"""Checker for equational proofs by explicit rewriting.

A proof starts from the left side of its goal and rewrites one subterm
per step, citing a rule, a direction, a position and a substitution.  The
checker never searches: it instantiates the cited side, compares it with
the subterm at the position, and replaces it.

Proof file format::

    # comment lines attach to the next proof
    proof <name> from <hyp>,<hyp>,... goal <lhs> = <rhs>
      assume <name>: <identity>                  optional, see below
      <rule> <l2r|r2l> at <root|0.1.0> with x:=<term>, y:=<term> -> <term>
      ...

A step may end in ``(synthetic)`` to mark a micro step that a hand-written
argument would leave implicit.  ``assume`` introduces a condition on fixed
elements rather than an identity: its variables are constants of the proof
(``e*e = e`` makes ``e`` an idempotent), so it only applies with every one
of its variables substituted by itself.

Rules available to a proof:

* its hypotheses, by registry name or by the name of an earlier lemma;
* earlier lemmas whose hypotheses (and assumptions) it has too.  A lemma
  proved for bimagmas also transfers to a unary semigroup proof that
  assumes I1, since then ``x'`` agrees with both of its bimagma forms;
* ``prime-def-L`` and ``prime-def-R``, the two bimagma forms of ``x'``,
  when B1 is a hypothesis or the lemma ``same`` is available; in unary
  semigroup proofs they need I1;
* ``ld-def`` and ``rd-def`` in unary semigroup proofs (hypothesis
  ``assoc``), where ``\\`` and ``/`` are the derived divisions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .registry import GROUPS, Registry, default_registry
from .search import SearchSpec, enumerate_models
from .terms import (PRIME_FORMS, Identity, Mul, SignatureMismatch, Term, TermSyntaxError, _eval,
                    _ops, format_term, holds, parse_identity, parse_term, replace_at, substitute,
                    subterm_at, variables)

__all__ = [
    "ProofStep", "Proof", "Verdict", "SuiteReport", "ProofError", "NoMatch", "BadPosition",
    "UnknownRule", "UnavailableRule", "ResultMismatch", "StructuralError", "ProofSyntaxError",
    "BUILTIN_RULES", "Theory", "apply_step", "check_proof", "check_suite", "parse_proofs",
    "format_proof", "load_proofs", "proof_dir", "SHIPPED_SUITES", "shipped_suite", "run_paper_suite",
    "SoundnessReport", "soundness_check", "context_of",
]


class ProofError(Exception):
    pass


class NoMatch(ProofError):
    def __init__(self, position, rule, detail=""):
        self.position, self.rule = position, rule
        where = _fmt_path(position)
        super().__init__(f"{rule} does not match at {where}" + (f": {detail}" if detail else ""))


class BadPosition(ProofError):
    pass


class UnknownRule(ProofError):
    pass


class UnavailableRule(UnknownRule):
    """The rule exists but this proof may not use it."""


class ResultMismatch(ProofError):
    pass


class StructuralError(ProofError):
    pass


class ProofSyntaxError(ValueError):
    def __init__(self, lineno, msg):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


BUILTIN_RULES = {
    "prime-def-L": parse_identity("x' = (x\\x)/x", "prime-def-L"),
    "prime-def-R": parse_identity("x' = x\\(x/x)", "prime-def-R"),
    "ld-def": parse_identity("x\\y = x'*y", "ld-def"),
    "rd-def": parse_identity("x/y = x*y'", "rd-def"),
}


@dataclass(frozen=True)
class ProofStep:
    rule: str
    direction: str
    position: tuple
    substitution: dict
    result: Term | None = None
    synthetic: bool = False

    def __post_init__(self):
        if self.direction not in ("l2r", "r2l"):
            raise ValueError(f"direction must be l2r or r2l, not {self.direction!r}")
        object.__setattr__(self, "position", tuple(self.position))


@dataclass
class Proof:
    name: str
    hypotheses: tuple
    goal: Identity
    steps: list = field(default_factory=list)
    assumptions: dict = field(default_factory=dict)     # name -> Identity on fixed elements
    comments: list = field(default_factory=list)

    @property
    def start_term(self) -> Term:
        return self.goal.lhs


def context_of(hypotheses) -> str:
    return "unary_semigroup" if "assoc" in hypotheses else "bimagma"


@dataclass
class _Lemma:
    proof: Proof
    hyps: frozenset
    context: str


class Theory:
    """Registry plus the lemmas proven so far, in order."""

    def __init__(self, registry: Registry | None = None):
        self.registry = registry or default_registry()
        self.lemmas: dict[str, _Lemma] = {}
        self.pending: set = set()        # names of lemmas that come later in the suite

    def hypotheses(self, proof: Proof) -> dict[str, Identity]:
        out = {}
        for h in proof.hypotheses:
            if h in self.registry or h in GROUPS:
                for name in self.registry.expand([h]):
                    out[name] = self.registry[name]
            elif h in self.lemmas:
                out[h] = self.lemmas[h].proof.goal
            elif h in self.pending:
                raise StructuralError(f"hypothesis {h} is a lemma proven later")
            else:
                raise UnknownRule(f"unknown hypothesis {h}")
        return out

    def add(self, proof: Proof, hyps):
        self.lemmas[proof.name] = _Lemma(proof, frozenset(hyps), context_of(hyps))

    def _lemma_usable(self, lem: _Lemma, hyps, proof: Proof) -> str | None:
        if not lem.hyps <= set(hyps):
            return "needs hypotheses " + ",".join(sorted(lem.hyps - set(hyps)))
        for name, ident in lem.proof.assumptions.items():
            if proof.assumptions.get(name) != ident:
                return f"needs assumption {name}"
        if lem.context != context_of(hyps):
            if lem.context == "unary_semigroup":
                return "is a unary semigroup lemma"
            if "I1" not in hyps:
                return "transfers to unary semigroups only under I1"
        return None

    def rule(self, name: str, proof: Proof, hyps: dict) -> tuple[Identity, tuple]:
        """The identity a step may cite as ``name``, and the variables it must keep fixed."""
        ctx = context_of(hyps)
        if name in proof.assumptions:
            return proof.assumptions[name], proof.assumptions[name].variables
        if name in hyps:
            return hyps[name], ()
        if name in BUILTIN_RULES:
            why = self._builtin_blocked(name, ctx, hyps, proof)
            if why:
                raise UnavailableRule(f"{name} {why}")
            return BUILTIN_RULES[name], ()
        if name in self.lemmas:
            lem = self.lemmas[name]
            why = self._lemma_usable(lem, hyps, proof)
            if why:
                raise UnavailableRule(f"lemma {name} {why}")
            fixed = {v for a in lem.proof.assumptions.values() for v in a.variables}
            return lem.proof.goal, tuple(sorted(fixed))
        if name in self.pending:
            raise StructuralError(f"{name} is proven later in the suite")
        if name in self.registry:
            raise UnavailableRule(f"{name} is not a hypothesis of {proof.name}")
        raise UnknownRule(f"unknown rule {name}")

    def _builtin_blocked(self, name, ctx, hyps, proof):
        if name in ("ld-def", "rd-def"):
            return None if ctx == "unary_semigroup" else "needs the hypothesis assoc"
        if ctx == "unary_semigroup":
            return None if "I1" in hyps else "needs I1 in a unary semigroup"
        if "B1" in hyps:
            return None
        same = self.lemmas.get("same")
        if same is not None and self._lemma_usable(same, hyps, proof) is None:
            return None
        return "needs B1 or the lemma same"


def _fmt_path(path) -> str:
    return ".".join(map(str, path)) if path else "root"


def apply_step(t: Term, step: ProofStep, rule: Identity, fixed=()) -> Term:
    """Rewrite ``t`` by one instance of ``rule``; ``fixed`` variables must map to themselves."""
    src, tgt = (rule.lhs, rule.rhs) if step.direction == "l2r" else (rule.rhs, rule.lhs)
    try:
        sub = subterm_at(t, step.position)
    except IndexError as exc:
        raise BadPosition(f"no position {_fmt_path(step.position)} in {format_term(t, True)}") from exc
    sigma = dict(step.substitution)
    needed = set(rule.variables)
    if set(sigma) - needed:
        raise NoMatch(step.position, rule.name,
                      "substitution binds " + ",".join(sorted(set(sigma) - needed)))
    for v in fixed:
        if v in sigma and sigma[v] != parse_term(v):
            raise NoMatch(step.position, rule.name, f"{v} is a fixed element")
        sigma.setdefault(v, parse_term(v))
    if needed - set(sigma):
        raise NoMatch(step.position, rule.name,
                      "no value for " + ",".join(sorted(needed - set(sigma))))
    inst = substitute(src, sigma)
    if inst != sub:
        raise NoMatch(step.position, rule.name,
                      f"{format_term(inst, True)} is not {format_term(sub, True)}")
    return replace_at(t, step.position, substitute(tgt, sigma))


@dataclass
class Verdict:
    name: str
    accepted: bool
    steps: int
    failed_step: int | None = None        # 1-based; len(steps)+1 means the chain ends elsewhere
    reason: str = ""
    structural: bool = False

    def __str__(self):
        if self.accepted:
            return f"proof:{self.name} PASS {self.steps} steps"
        at = f" at step {self.failed_step}" if self.failed_step else ""
        return f"proof:{self.name} FAIL{at}: {self.reason}"


def check_proof(proof: Proof, theory: Theory | None = None, record: bool = True) -> Verdict:
    """Check every step in order; on success the proof becomes a lemma of ``theory``."""
    theory = theory or Theory()
    try:
        hyps = theory.hypotheses(proof)
    except ProofError as exc:
        return Verdict(proof.name, False, len(proof.steps), None, str(exc),
                       isinstance(exc, StructuralError))
    ctx = context_of(hyps)
    if ctx == "bimagma":
        terms = [proof.goal.lhs, proof.goal.rhs] + [s.result for s in proof.steps if s.result]
        if any(Mul in _ops(t) for t in terms):
            return Verdict(proof.name, False, len(proof.steps), None,
                           "products need the hypothesis assoc")
    t = proof.start_term
    for i, step in enumerate(proof.steps, 1):
        try:
            rule, fixed = theory.rule(step.rule, proof, hyps)
            t = apply_step(t, step, rule, fixed)
        except ProofError as exc:
            return Verdict(proof.name, False, len(proof.steps), i, str(exc),
                           isinstance(exc, StructuralError))
        if step.result is not None and t != step.result:
            return Verdict(proof.name, False, len(proof.steps), i,
                           f"{step.rule} gives {format_term(t, True)}, "
                           f"not the recorded {format_term(step.result, True)}")
    if t != proof.goal.rhs:
        return Verdict(proof.name, False, len(proof.steps), len(proof.steps) + 1,
                       f"chain ends at {format_term(t, True)}, "
                       f"not {format_term(proof.goal.rhs, True)}")
    if record:
        theory.add(proof, hyps)
    return Verdict(proof.name, True, len(proof.steps))


@dataclass
class SuiteReport:
    verdicts: list

    @property
    def ok(self) -> bool:
        return all(v.accepted for v in self.verdicts)

    def lines(self):
        return [str(v) for v in self.verdicts]


def check_suite(proofs, registry: Registry | None = None, stop_on_failure: bool = False,
                theory: Theory | None = None) -> SuiteReport:
    """Check ``proofs`` in order, each one seeing only the lemmas before it."""
    theory = theory or Theory(registry)
    names = [p.name for p in proofs]
    clashes = {n for n in names if n in theory.registry or n in BUILTIN_RULES or n in GROUPS}
    dupes = {n for n in names if names.count(n) > 1}
    if clashes or dupes:
        bad = sorted(clashes | dupes)
        return SuiteReport([Verdict(n, False, 0, None, "name is taken by a rule or another proof",
                                    True) for n in bad])
    verdicts = []
    for k, p in enumerate(proofs):
        theory.pending = set(names[k:])
        v = check_proof(p, theory)
        verdicts.append(v)
        if stop_on_failure and not v.accepted:
            break
    theory.pending = set()
    return SuiteReport(verdicts)


# -- files ----------------------------------------------------------------

_HEADER = re.compile(r"^proof\s+(\S+)\s+from\s+(.*?)\s+goal\s+(.+)$")
_ASSUME = re.compile(r"^assume\s+([\w-]+)\s*:\s*(.+)$")
_STEP = re.compile(r"^(\S+)\s+(l2r|r2l)\s+at\s+(\S+)(?:\s+with\s+(.*?))?\s+->\s+(.+?)"
                   r"(\s+\(synthetic\))?$")
_BINDING = re.compile(r",\s*(?=[A-Za-z]\w*\s*:=)")


def _parse_path(text, lineno):
    if text == "root":
        return ()
    try:
        return tuple(int(k) for k in text.split("."))
    except ValueError:
        raise ProofSyntaxError(lineno, f"bad position {text!r}") from None


def parse_proofs(text: str) -> list[Proof]:
    proofs, comments = [], []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        try:
            m = _HEADER.match(line)
            if m:
                hyps = tuple(h.strip() for h in m.group(2).split(",") if h.strip())
                current = Proof(m.group(1), hyps, parse_identity(m.group(3), m.group(1)),
                                comments=comments)
                comments = []
                proofs.append(current)
                continue
            if current is None:
                raise ProofSyntaxError(lineno, "step before any proof header")
            m = _ASSUME.match(line)
            if m:
                if current.steps:
                    raise ProofSyntaxError(lineno, "assumptions must precede the steps")
                current.assumptions[m.group(1)] = parse_identity(m.group(2), m.group(1))
                continue
            m = _STEP.match(line)
            if not m:
                raise ProofSyntaxError(lineno, f"cannot read step {line!r}")
            sigma = {}
            if m.group(4):
                for b in _BINDING.split(m.group(4)):
                    var, sep, term = b.partition(":=")
                    if not sep:
                        raise ProofSyntaxError(lineno, f"bad binding {b!r}")
                    sigma[var.strip()] = parse_term(term.strip())
            current.steps.append(ProofStep(m.group(1), m.group(2), _parse_path(m.group(3), lineno),
                                           sigma, parse_term(m.group(5)), bool(m.group(6))))
        except TermSyntaxError as exc:
            raise ProofSyntaxError(lineno, str(exc)) from None
    return proofs


def format_proof(p: Proof) -> str:
    lines = [f"# {c}" if c else "#" for c in p.comments]
    lines.append(f"proof {p.name} from {','.join(p.hypotheses)} goal {p.goal}")
    for name, ident in p.assumptions.items():
        lines.append(f"  assume {name}: {ident}")
    for s in p.steps:
        subst = ", ".join(f"{v}:={format_term(t, True)}" for v, t in sorted(s.substitution.items()))
        line = f"  {s.rule} {s.direction} at {_fmt_path(s.position)}"
        if subst:
            line += f" with {subst}"
        line += f" -> {format_term(s.result, True)}"
        if s.synthetic:
            line += " (synthetic)"
        lines.append(line)
    return "\n".join(lines) + "\n"


def proof_dir() -> Path:
    return Path(str(resources.files("divbimagma").joinpath("data/proofs")))


def load_proofs(path) -> list[Proof]:
    return parse_proofs(Path(path).read_text())


# suite files in dependency order
SHIPPED_SUITES = ("tamura", "einv", "doubleprime", "regular", "strange", "reginvoluted",
               "idem", "cr", "inverse")


def shipped_suite(root=None) -> list[Proof]:
    d = Path(root) if root is not None else proof_dir()
    out = []
    for name in SHIPPED_SUITES:
        out += load_proofs(d / f"{name}.proof")
    return out


def run_paper_suite(root=None, registry: Registry | None = None) -> SuiteReport:
    return check_suite(shipped_suite(root), registry)


# -- soundness at small sizes ----------------------------------------------

@dataclass
class SoundnessReport:
    name: str
    checked: dict = field(default_factory=dict)      # size -> models
    fixtures: list = field(default_factory=list)     # fixture ids satisfying the hypotheses
    violations: list = field(default_factory=list)   # (algebra or fixture id, assignment)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        sizes = ",".join(f"{n}:{c}" for n, c in sorted(self.checked.items()))
        return (f"sound:{self.name} {'PASS' if self.ok else 'FAIL'} models [{sizes}] "
                f"fixtures {len(self.fixtures)} violations {len(self.violations)}")


def _violation(goal, conditions, A, prime):
    names = sorted(set(goal.variables).union(*(c.variables for c in conditions)))
    k = len(names)
    env = {}
    for i, v in enumerate(names):
        shape = [1] * k
        shape[i] = A.size
        env[v] = np.arange(A.size).reshape(shape)
    full = (A.size,) * k
    bad = np.broadcast_to(_eval(goal.lhs, A, env, prime) != _eval(goal.rhs, A, env, prime), full)
    for c in conditions:
        bad = bad & np.broadcast_to(_eval(c.lhs, A, env, prime) == _eval(c.rhs, A, env, prime), full)
    hit = np.argwhere(bad)
    if not len(hit):
        return None
    return {v: int(x) for v, x in zip(names, hit[0])}


def soundness_check(proof: Proof, theory: Theory, max_size: int = 3, fixtures=None,
                    workers: int = 1) -> SoundnessReport:
    """The goal holds on every model of the hypotheses up to ``max_size``.

    ``fixtures`` is an optional list of Fixture objects; those satisfying the
    hypotheses are checked too.  Bimagma goals are checked under both forms
    of ``'``.
    """
    hyps = theory.hypotheses(proof)
    kind = context_of(hyps)
    require = tuple(i for n, i in hyps.items() if n != "assoc")
    conds = list(proof.assumptions.values())
    primes = PRIME_FORMS if kind == "bimagma" else ("left",)
    rep = SoundnessReport(proof.name)
    for n in range(1, max_size + 1):
        res = enumerate_models(SearchSpec(kind, n, require), registry=theory.registry,
                               bound=max(n, 1), workers=workers)
        rep.checked[n] = len(res.models)
        for A in res.models:
            for prime in primes:
                v = _violation(proof.goal, conds, A, prime)
                if v is not None:
                    rep.violations.append((A, v))
                    break
    for fx in fixtures or ():
        if fx.algebra.kind != kind:
            continue
        try:
            if not all(holds(i, fx.algebra, fx.prime) for i in require):
                continue
            v = _violation(proof.goal, conds, fx.algebra, fx.prime)
        except SignatureMismatch:
            continue
        rep.fixtures.append(fx.id)
        if v is not None:
            rep.violations.append((fx.id, v))
    return rep
