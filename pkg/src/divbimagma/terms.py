"""Terms and identities over the signature ``{\\, /, *, '}``.

Binary operators carry no precedence, so compound terms are written with
explicit parentheses; ``'`` is postfix and binds tightest.  Chains of ``*``
alone may be left unparenthesized and group to the left.

On a bimagma ``t'`` is shorthand for ``(t\\t)/t`` (``prime="left"``, the
default) or ``t\\(t/t)`` (``prime="right"``); on a unary semigroup
``x\\y`` and ``x/y`` stand for ``x'*y`` and ``x*y'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

__all__ = [
    "Term", "Var", "Ld", "Rd", "Mul", "Inv", "Identity",
    "TermSyntaxError", "AmbiguousTerm", "SignatureMismatch",
    "parse_term", "parse_identity", "format_term", "variables",
    "subterm_at", "replace_at", "positions", "substitute", "rename_canonically",
    "PRIME_FORMS", "expand_for", "eval_term", "evaluate_all", "holds", "find_violation",
]


class Term:
    __slots__ = ()

    def __str__(self):
        return format_term(self, top=True)


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Inv(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Ld(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Rd(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Mul(Term):
    left: Term
    right: Term


_BINARY = {"\\": Ld, "/": Rd, "*": Mul}
_SYMBOL = {Ld: "\\", Rd: "/", Mul: "*"}


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Term
    rhs: Term
    side: str = ""

    def __post_init__(self):
        if not self.side:
            object.__setattr__(self, "side", infer_side(self.lhs, self.rhs))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(variables(self.lhs)) | set(variables(self.rhs))))

    def __str__(self):
        return f"{format_term(self.lhs, top=True)} = {format_term(self.rhs, top=True)}"


class TermSyntaxError(ValueError):
    def __init__(self, text: str, position: int, expected: str):
        self.text, self.position, self.expected = text, position, expected
        super().__init__(f"expected {expected} at position {position} in {text!r}")


class AmbiguousTerm(TermSyntaxError):
    pass


class SignatureMismatch(TypeError):
    pass


# -- parsing --------------------------------------------------------------

_ALIASES = {"′": "'", "·": "*", "∖": "\\"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.src = "".join(_ALIASES.get(c, c) for c in text)
        self.pos = 0

    def peek(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def fail(self, expected):
        raise TermSyntaxError(self.text, self.pos, expected)

    def chain(self) -> Term:
        start = self.pos
        t = self.unit()
        ops = []
        while self.peek() in _BINARY:
            ops.append(self.src[self.pos])
            self.pos += 1
            rhs = self.unit()
            if len(ops) > 1 and not (ops[-1] == "*" and set(ops) == {"*"}):
                raise AmbiguousTerm(self.text, start, "parentheses around a binary subterm")
            t = _BINARY[ops[-1]](t, rhs)
        return t

    def unit(self) -> Term:
        c = self.peek()
        if c == "(":
            self.pos += 1
            t = self.chain()
            if self.peek() != ")":
                self.fail("')'")
            self.pos += 1
        elif "a" <= c <= "z":
            self.pos += 1
            t = Var(c)
        else:
            self.fail("a variable or '('")
        while self.peek() == "'":
            self.pos += 1
            t = Inv(t)
        return t


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.chain()
    if p.peek():
        p.fail("end of term")
    return t


def parse_identity(text: str, name: str = "", side: str = "") -> Identity:
    p = _Parser(text)
    lhs = p.chain()
    if p.peek() != "=":
        p.fail("'='")
    p.pos += 1
    rhs = p.chain()
    if p.peek():
        p.fail("end of identity")
    return Identity(name, lhs, rhs, side)


def format_term(t: Term, top: bool = False) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Inv):
        return format_term(t.arg) + "'"
    # products associate to the left, so a left-nested chain needs no parentheses
    left = format_term(t.left, top=isinstance(t, Mul) and isinstance(t.left, Mul))
    s = f"{left}{_SYMBOL[type(t)]}{format_term(t.right)}"
    return s if top else f"({s})"


# -- structure --------------------------------------------------------------

def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Var):
        return ()
    if isinstance(t, Inv):
        return (t.arg,)
    return (t.left, t.right)


def _rebuild(t: Term, kids) -> Term:
    if isinstance(t, Inv):
        return Inv(kids[0])
    return type(t)(*kids)


def variables(t: Term) -> list[str]:
    """Variables of ``t`` in order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            seen.setdefault(s.name)
        else:
            stack.extend(reversed(children(s)))
    return list(seen)


def subterm_at(t: Term, path) -> Term:
    for k in path:
        kids = children(t)
        if not 0 <= k < len(kids):
            raise IndexError(f"no child {k} in {format_term(t, top=True)}")
        t = kids[k]
    return t


def replace_at(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    k = path[0]
    if not 0 <= k < len(kids):
        raise IndexError(f"no child {k} in {format_term(t, top=True)}")
    kids[k] = replace_at(kids[k], path[1:], new)
    return _rebuild(t, kids)


def positions(t: Term, prefix=()):
    """All positions of ``t`` in pre-order, as tuples of child indices."""
    yield prefix
    for k, c in enumerate(children(t)):
        yield from positions(c, prefix + (k,))


def substitute(t: Term, sigma: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    return _rebuild(t, [substitute(c, sigma) for c in children(t)])


def rename_canonically(ident: Identity) -> tuple[Term, Term]:
    """Rename variables to a, b, c, ... in order of first occurrence."""
    order = variables(ident.lhs) + [v for v in variables(ident.rhs) if v not in variables(ident.lhs)]
    sigma = {v: Var(chr(ord("a") + i)) for i, v in enumerate(order)}
    return substitute(ident.lhs, sigma), substitute(ident.rhs, sigma)


def _ops(t: Term) -> set:
    out = set()
    stack = [t]
    while stack:
        s = stack.pop()
        out.add(type(s))
        stack.extend(children(s))
    return out


def infer_side(lhs: Term, rhs: Term) -> str:
    ops = _ops(lhs) | _ops(rhs)
    division = bool(ops & {Ld, Rd})
    if division and Mul in ops:
        return "mixed"
    return "bimagma" if division else "semigroup"


# -- evaluation -------------------------------------------------------------

PRIME_FORMS = ("left", "right")


def _check_prime(prime):
    if prime not in PRIME_FORMS:
        raise ValueError(f"unknown expansion of ' {prime!r}")


def expand_for(t: Term, kind: str, prime: str = "left") -> Term:
    """Rewrite ``t`` into the native signature of algebras of ``kind``."""
    _check_prime(prime)
    if isinstance(t, Var):
        return t
    if kind == "bimagma":
        if isinstance(t, Mul):
            raise SignatureMismatch("'*' is not an operation of a bimagma")
        if isinstance(t, Inv):
            a = expand_for(t.arg, kind, prime)
            return Rd(Ld(a, a), a) if prime == "left" else Ld(a, Rd(a, a))
    elif kind in ("unary_semigroup", "semigroup"):
        if isinstance(t, Ld):
            return Mul(Inv(expand_for(t.left, kind)), expand_for(t.right, kind))
        if isinstance(t, Rd):
            return Mul(expand_for(t.left, kind), Inv(expand_for(t.right, kind)))
        if kind == "semigroup" and isinstance(t, Inv):
            raise SignatureMismatch("a plain semigroup has no unary operation")
    else:
        raise ValueError(f"unknown algebra kind {kind!r}")
    return _rebuild(t, [expand_for(c, kind, prime) for c in children(t)])


def _eval(t: Term, A, env, prime="left"):
    # env values may be ints or broadcastable index arrays
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Inv):
        a = _eval(t.arg, A, env, prime)
        if A.kind == "bimagma":
            if prime == "right":
                return A.ld_array[a, A.rd_array[a, a]]
            return A.rd_array[A.ld_array[a, a], a]
        if A.kind == "semigroup":
            raise SignatureMismatch("a plain semigroup has no unary operation")
        return A.inv_array[a]
    a = _eval(t.left, A, env, prime)
    b = _eval(t.right, A, env, prime)
    if A.kind == "bimagma":
        if isinstance(t, Ld):
            return A.ld_array[a, b]
        if isinstance(t, Rd):
            return A.rd_array[a, b]
        raise SignatureMismatch("'*' is not an operation of a bimagma")
    mul = A.mul_array
    if isinstance(t, Ld):
        return mul[A.inv_array[a], b]
    if isinstance(t, Rd):
        return mul[a, A.inv_array[b]]
    return mul[a, b]


def eval_term(t: Term, A, assignment: Mapping[str, int], prime: str = "left") -> int:
    _check_prime(prime)
    missing = [v for v in variables(t) if v not in assignment]
    if missing:
        raise KeyError(f"no value for variable(s) {', '.join(missing)}")
    for v, x in assignment.items():
        if not 0 <= x < A.size:
            raise ValueError(f"{v}={x} is not an element")
    return int(_eval(t, A, {v: np.intp(x) for v, x in assignment.items()}, prime))


def evaluate_all(ident: Identity, A, prime: str = "left") -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``ident`` under every assignment.

    Axis k of the returned arrays ranges over the k-th variable of
    ``ident.variables``, so C-order is lexicographic assignment order.
    """
    _check_prime(prime)
    names = ident.variables
    k = len(names)
    env = {}
    for i, v in enumerate(names):
        shape = [1] * k
        shape[i] = A.size
        env[v] = np.arange(A.size).reshape(shape)
    full = (A.size,) * k
    lhs = np.broadcast_to(_eval(ident.lhs, A, env, prime), full)
    rhs = np.broadcast_to(_eval(ident.rhs, A, env, prime), full)
    return lhs, rhs


def find_violation(ident: Identity, A, prime: str = "left") -> dict[str, int] | None:
    """The lexicographically first assignment falsifying ``ident``, if any."""
    lhs, rhs = evaluate_all(ident, A, prime)
    bad = np.argwhere(lhs != rhs)
    if not len(bad):
        return None
    return {v: int(x) for v, x in zip(ident.variables, bad[0])}


def holds(ident: Identity, A, prime: str = "left") -> bool:
    lhs, rhs = evaluate_all(ident, A, prime)
    return bool(np.array_equal(lhs, rhs))
