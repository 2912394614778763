import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from divbimagma.algebra import FiniteBimagma
from divbimagma.search import SearchSpec, enumerate_models
from divbimagma.terms import Inv, Ld, Mul, Rd, Var

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

VARS = st.sampled_from([Var("x"), Var("y"), Var("z")])


def terms(ops=(Inv, Ld, Rd, Mul)):
    def extend(sub):
        out = []
        if Inv in ops:
            out.append(sub.map(Inv))
        for op in ops:
            if op is not Inv:
                out.append(st.tuples(sub, sub).map(lambda p, op=op: op(*p)))
        return st.one_of(*out)
    return st.recursive(VARS, extend, max_leaves=8)


bimagma_terms = terms((Inv, Ld, Rd))


@st.composite
def bimagmas(draw, max_size=3):
    n = draw(st.integers(1, max_size))
    cell = st.integers(0, n - 1)
    table = st.lists(st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n)
    return FiniteBimagma(draw(table), draw(table))


_US = {}


def unary_semigroups_of(n, require=()):
    key = (n, tuple(require))
    if key not in _US:
        _US[key] = enumerate_models(SearchSpec("unary_semigroup", n, require, dedup="none")).models
    return _US[key]


@st.composite
def unary_semigroups(draw, max_size=3, require=()):
    n = draw(st.integers(1, max_size))
    return draw(st.sampled_from(unary_semigroups_of(n, require)))


# -- acceptance report ------------------------------------------------------

_CRITERIA = {}


@pytest.fixture(scope="session")
def criteria():
    return _CRITERIA


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        ok, detail = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k} {'PASS' if ok else 'FAIL'} {detail}")
