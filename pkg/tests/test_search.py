import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divbimagma.algebra import canonical_form
from divbimagma.naive import naive_classes, naive_models, naive_semigroup_count
from divbimagma.registry import default_registry
from divbimagma.search import (BoundExceeded, SearchSpec, count_models, enumerate_models,
                               find_witness, find_witnesses, labeled_count, raw_models)
from divbimagma.terms import holds

REG = default_registry()
BIMAGMA = REG.side("bimagma")
SEMIGROUP = [k for k in REG.side("semigroup") if k != "assoc"]


def keys(result):
    return {tuple(canonical_form(M).data) for M in result.models}


def test_semigroup_counts():
    # orders 1, 2, 3: 1, 5, 24 up to isomorphism; 1, 4, 18 up to (anti-)isomorphism
    assert [count_models("semigroup", n) for n in (1, 2, 3)] == [1, 5, 24]
    assert [count_models("semigroup", n, "iso+anti-iso") for n in (1, 2, 3)] == [1, 4, 18]
    assert [labeled_count("semigroup", n) for n in (1, 2, 3)] == [1, 8, 113]


def test_unary_semigroup_count_against_naive():
    for n in (1, 2):
        assert labeled_count("unary_semigroup", n) == len(naive_models("unary_semigroup", n))


@settings(max_examples=25)
@given(st.sampled_from(["bimagma", "unary_semigroup"]), st.integers(1, 2), st.data())
def test_pruned_equals_naive_at_small_sizes(kind, n, data):
    pool = BIMAGMA if kind == "bimagma" else SEMIGROUP
    require = data.draw(st.lists(st.sampled_from(pool), max_size=3, unique=True))
    forbid = data.draw(st.none() | st.sampled_from(pool))
    prime = data.draw(st.sampled_from(["left", "right"])) if kind == "bimagma" else "left"
    res = enumerate_models(SearchSpec(kind, n, require, forbid, prime=prime))
    assert keys(res) == naive_classes(kind, n, require, forbid, prime=prime)
    labeled = enumerate_models(SearchSpec(kind, n, require, forbid, "none", prime))
    assert len(labeled.models) == len(naive_models(kind, n, require, forbid, prime=prime))


@pytest.mark.parametrize("spec", [
    SearchSpec("bimagma", 3, ("B1", "B2", "B3")),
    SearchSpec("bimagma", 3, ("B1", "B2", "B3"), "cr4"),
    SearchSpec("unary_semigroup", 3, ("I1", "I2")),
])
def test_dedup_soundness_and_membership(spec):
    res = enumerate_models(spec)
    ks = [canonical_form(M).data for M in res.models]
    assert len(ks) == len(set(ks))
    assert ks == sorted(ks)
    for M in res.models:
        assert all(holds(REG[r], M, spec.prime) for r in REG.expand(spec.require))
        if spec.forbid:
            assert not holds(REG[spec.forbid], M, spec.prime)


def test_deterministic_across_workers():
    spec = SearchSpec("bimagma", 3, ("B1", "B2"))
    one = enumerate_models(spec, workers=1)
    four = enumerate_models(spec, workers=4)
    assert one.models == four.models and one.keys == four.keys


def test_symmetry_breaking_keeps_every_class():
    spec = SearchSpec("bimagma", 3, ("B1", "B3"))
    a = enumerate_models(spec, symmetry_breaking=True)
    b = enumerate_models(spec, symmetry_breaking=False)
    assert a.keys == b.keys
    assert a.count_raw < b.count_raw


def test_cell_orders_agree():
    spec = SearchSpec("bimagma", 3, ("B1", "reg2"))
    assert enumerate_models(spec, order="rows").keys == enumerate_models(spec, order="diagonal").keys


def test_labeled_mode_refuses_symmetry_breaking():
    with pytest.raises(ValueError):
        enumerate_models(SearchSpec("bimagma", 2, dedup="none"), symmetry_breaking=True)


def test_bound():
    with pytest.raises(BoundExceeded):
        enumerate_models(SearchSpec("bimagma", 6))
    with pytest.raises(BoundExceeded):
        enumerate_models(SearchSpec("bimagma", 3), bound=2)


def test_spec_validation():
    for bad in (dict(kind="group", size=2), dict(kind="bimagma", size=0),
                dict(kind="bimagma", size=2, dedup="all"), dict(kind="bimagma", size=2, prime="middle")):
        with pytest.raises(ValueError):
            SearchSpec(**bad)


def test_witness_search():
    w = find_witness(SearchSpec("bimagma", 2, ("B1", "B2"), "reg2"))
    assert w is not None
    assert holds(REG["B1"], w) and holds(REG["B2"], w) and not holds(REG["reg2"], w)
    assert find_witness(SearchSpec("bimagma", 3, ("T1", "T2", "T3"), "T4")) is None
    with pytest.raises(ValueError):
        find_witness(SearchSpec("bimagma", 2))
    with pytest.raises(ValueError):
        find_witnesses(SearchSpec("bimagma", 2))


def test_limit():
    cells, exhausted = raw_models("bimagma", 3, ("B1",), limit=5)
    assert len(cells) == 5 and not exhausted


def test_semigroup_counts_against_pure_python():
    for n in (1, 2, 3):
        assert count_models("semigroup", n) == naive_semigroup_count(n)
    assert naive_semigroup_count(2, "none") == 8
