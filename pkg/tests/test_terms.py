import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bimagma_terms, bimagmas, terms, unary_semigroups
from divbimagma.algebra import FiniteUnarySemigroup
from divbimagma.terms import (AmbiguousTerm, Identity, Inv, Ld, Mul, Rd, SignatureMismatch,
                              TermSyntaxError, Var, eval_term, find_violation, format_term,
                              holds, parse_identity, parse_term, positions, replace_at,
                              subterm_at, substitute, variables)

x, y, z = Var("x"), Var("y"), Var("z")


def oracle(t, A, env, prime="left"):
    """Straight recursion over the tuples, written from the definitions."""
    if isinstance(t, Var):
        return env[t.name]
    if A.kind == "bimagma":
        if isinstance(t, Inv):
            a = oracle(t.arg, A, env, prime)
            if prime == "left":
                return A.rd[A.ld[a][a]][a]
            return A.ld[a][A.rd[a][a]]
        a, b = oracle(t.left, A, env, prime), oracle(t.right, A, env, prime)
        return (A.ld if isinstance(t, Ld) else A.rd)[a][b]
    if isinstance(t, Inv):
        return A.inv[oracle(t.arg, A, env)]
    a, b = oracle(t.left, A, env), oracle(t.right, A, env)
    if isinstance(t, Ld):
        a = A.inv[a]
    if isinstance(t, Rd):
        b = A.inv[b]
    return A.mul[a][b]


def test_parse_basic_shapes():
    assert parse_term("x'") == Inv(x)
    assert parse_term("x\\y") == Ld(x, y)
    assert parse_term("(x/y)\\z") == Ld(Rd(x, y), z)
    assert parse_term("x*y*z") == Mul(Mul(x, y), z)
    assert parse_term("x''") == Inv(Inv(x))


def test_unicode_aliases():
    assert parse_term("x′·y") == parse_term("x'*y")


@pytest.mark.parametrize("text", ["x\\y/z", "x/y\\z", "x*y\\z"])
def test_mixed_chain_is_ambiguous(text):
    with pytest.raises(AmbiguousTerm):
        parse_term(text)


@pytest.mark.parametrize("text", ["", "(x", "x)", "x\\", "*y", "x y"])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_term(text)


@given(terms())
def test_format_parse_round_trip(t):
    assert parse_term(format_term(t, top=True)) == t


@given(terms())
def test_positions_address_subterms(t):
    for p in positions(t):
        assert replace_at(t, p, subterm_at(t, p)) == t


@given(terms(), terms())
def test_replace_at_root(t, u):
    assert replace_at(t, (), u) == u


@given(terms())
def test_substitution_identity_and_composition(t):
    assert substitute(t, {}) == t
    s1 = {"x": Inv(y)}
    s2 = {"y": Ld(z, x)}
    composed = {k: substitute(v, s2) for k, v in s1.items()}
    composed.update({k: v for k, v in s2.items() if k not in composed})
    assert substitute(substitute(t, s1), s2) == substitute(t, composed)


@given(terms())
def test_variables_in_order_of_occurrence(t):
    vs = variables(t)
    assert len(vs) == len(set(vs))
    text = format_term(t, top=True)
    assert vs == sorted(vs, key=text.index)


@given(bimagma_terms, bimagmas(), st.sampled_from(["left", "right"]), st.data())
def test_bimagma_evaluation_matches_oracle(t, B, prime, data):
    env = {v: data.draw(st.integers(0, B.size - 1)) for v in "xyz"}
    assert eval_term(t, B, env, prime) == oracle(t, B, env, prime)


@given(terms(), unary_semigroups(), st.data())
def test_semigroup_evaluation_matches_oracle(t, S, data):
    env = {v: data.draw(st.integers(0, S.size - 1)) for v in "xyz"}
    assert eval_term(t, S, env) == oracle(t, S, env)


def test_product_on_bimagma_is_a_signature_mismatch():
    B = parse_identity("x*y = y*x")
    from divbimagma.algebra import FiniteBimagma
    with pytest.raises(SignatureMismatch):
        holds(B, FiniteBimagma([[0]], [[0]]))


@given(bimagmas(max_size=2), bimagma_terms, bimagma_terms)
def test_find_violation_agrees_with_exhaustive_scan(B, lhs, rhs):
    ident = Identity("t", lhs, rhs)
    names = ident.variables
    bad = [dict(zip(names, vals)) for vals in itertools.product(range(B.size), repeat=len(names))
           if oracle(lhs, B, {**dict.fromkeys("xyz", 0), **dict(zip(names, vals))})
           != oracle(rhs, B, {**dict.fromkeys("xyz", 0), **dict(zip(names, vals))})]
    v = find_violation(ident, B)
    assert (v is None) == (not bad)
    assert holds(ident, B) == (not bad)
    if bad:
        assert v == bad[0]


def test_z2_is_a_group():
    S = FiniteUnarySemigroup([[0, 1], [1, 0]], [0, 1])
    for text in ("x*x' = y*y'", "x'' = x", "(x*y)' = y'*x'"):
        assert holds(parse_identity(text), S)
    assert not holds(parse_identity("x*y = x"), S)
