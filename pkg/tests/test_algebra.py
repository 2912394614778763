import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bimagmas, unary_semigroups
from divbimagma.algebra import (FiniteBimagma, FiniteSemigroup, FiniteUnarySemigroup,
                                MalformedAlgebra, NonAssociative, OutOfRangeEntry, anti,
                                canonical_form, format_algebra, idempotents, is_isomorphic,
                                parse_algebra, read_algebra, relabel, validate, write_algebra)
from divbimagma.naive import naive_canonical
from divbimagma.terms import holds, parse_identity

perms = lambda n: st.permutations(list(range(n)))


def test_out_of_range_entry():
    with pytest.raises(OutOfRangeEntry):
        FiniteBimagma([[0, 2], [0, 0]], [[0, 0], [0, 0]])
    with pytest.raises(OutOfRangeEntry):
        FiniteUnarySemigroup([[0, 0], [0, 0]], [0, 5])


def test_nonassociative_table_is_rejected():
    # x*y = 1 - x is not associative on {0, 1}
    with pytest.raises(NonAssociative):
        FiniteUnarySemigroup([[1, 1], [0, 0]], [0, 1])
    with pytest.raises(NonAssociative):
        FiniteSemigroup([[1, 1], [0, 0]])


def test_validate_dispatch():
    assert validate([[0]], [0]).kind == "unary_semigroup"
    assert validate([[0]]).kind == "semigroup"
    assert validate(ld=[[0]], rd=[[0]]).kind == "bimagma"
    with pytest.raises(MalformedAlgebra):
        validate([[0]], ld=[[0]], rd=[[0]])
    with pytest.raises(MalformedAlgebra):
        validate()


def test_ragged_table():
    with pytest.raises(MalformedAlgebra):
        FiniteBimagma([[0, 1], [0]], [[0, 0], [0, 0]])


def test_idempotents_of_z2():
    S = FiniteUnarySemigroup([[0, 1], [1, 0]], [0, 1])
    assert idempotents(S) == [0]


@given(st.one_of(bimagmas(), unary_semigroups()))
def test_text_round_trip(A):
    assert parse_algebra(format_algebra(A)) == A


def test_file_round_trip(tmp_path):
    S = FiniteUnarySemigroup([[0, 1], [1, 0]], [0, 1])
    write_algebra(S, tmp_path / "z2.alg")
    assert read_algebra(tmp_path / "z2.alg") == S


@pytest.mark.parametrize("text", ["", "group 2\n0 1\n1 0", "bimagma 2\n0 1\n1 0",
                                  "unary_semigroup 1\n0", "bimagma x\n0\n0", "bimagma 1\na\n0"])
def test_malformed_text(text):
    with pytest.raises(MalformedAlgebra):
        parse_algebra(text)


@given(st.one_of(bimagmas(), unary_semigroups()), st.data())
def test_canonical_form_is_relabeling_invariant(A, data):
    p = data.draw(perms(A.size))
    B = relabel(A, p)
    assert canonical_form(A) == canonical_form(B)
    assert is_isomorphic(A, B)


@given(st.one_of(bimagmas(), unary_semigroups()))
def test_canonical_form_matches_naive_minimum(A):
    key = tuple(canonical_form(A).data)
    assert key == naive_canonical(A.cells(), A.kind, A.size)


@given(st.one_of(bimagmas(), unary_semigroups()))
def test_canonical_representative_is_isomorphic(A):
    assert is_isomorphic(canonical_form(A).algebra(), A)


@given(st.one_of(bimagmas(), unary_semigroups()))
def test_anti_is_an_involution(A):
    assert anti(anti(A)) == A
    assert canonical_form(A, anti_iso=True) == canonical_form(anti(A), anti_iso=True)


@given(unary_semigroups(), st.data())
def test_relabel_preserves_identities(S, data):
    T = relabel(S, data.draw(perms(S.size)))
    for text in ("x*x'*x = x", "x'' = x", "x*y = y*x", "(x*y)' = y'*x'"):
        ident = parse_identity(text)
        assert holds(ident, S) == holds(ident, T)


@given(unary_semigroups())
def test_anti_mirrors_products(S):
    R = anti(S)
    n = S.size
    assert all(R.mul[i][j] == S.mul[j][i] for i, j in itertools.product(range(n), repeat=2))


def test_relabel_rejects_non_permutation():
    with pytest.raises(ValueError):
        relabel(FiniteBimagma([[0, 0], [0, 0]], [[0, 0], [0, 0]]), [0, 0])


def test_tables_are_read_only():
    S = FiniteUnarySemigroup([[0, 1], [1, 0]], [0, 1])
    with pytest.raises(ValueError):
        S.mul_array[0, 0] = 1
    assert np.array_equal(S.cells(), [0, 1, 1, 0, 0, 1])
