import shutil

import pytest

from divbimagma.fixtures import (ENV_VAR, Fixture, MalformedFixture, UnknownFixture, fixture_dir,
                                 fixture_ids, format_expect, load_all, load_fixture,
                                 observed_profile, parse_expect, verify_all_fixtures,
                                 verify_fixture)
from divbimagma.registry import default_registry
from divbimagma.terms import holds

KNOWN_DISCREPANCIES = {"band4", "reg-not-B1"}


def test_inventory():
    ids = fixture_ids()
    assert len(ids) == 22
    assert {"z2", "band4", "cliffindep-not-cr4", "indep-not-ir4"} <= set(ids)


def test_every_recorded_verdict_is_reproduced():
    rep = verify_all_fixtures()
    assert rep.ok
    assert {r.id for r in rep.results if not r.claims_hold} == KNOWN_DISCREPANCIES


def test_cliffindep_five_element_pair():
    fx = load_fixture("cliffindep-not-cr4")
    reg = default_registry()
    assert fx.algebra.size == 5
    for name in ("B1", "B2", "B3", "invcase"):
        assert holds(reg[name], fx.algebra)
    assert not holds(reg["cr4"], fx.algebra)


def test_indep_four_element_pair_violates_exactly_ir4():
    fx = load_fixture("indep-not-ir4")
    reg = default_registry()
    basis = ("B1", "B2", "B3", "reginv1", "ir4")
    assert [n for n in basis if not holds(reg[n], fx.algebra)] == ["ir4"]


def test_witness_fixtures_separate_their_identity():
    reg = default_registry()
    from divbimagma.fixtures import WITNESS_BASES
    for fx in load_all():
        if not fx.witness or fx.id in KNOWN_DISCREPANCIES:
            continue
        basis, missing = fx.witness
        for name in WITNESS_BASES[basis]:
            assert holds(reg[name], fx.algebra, fx.prime) == (name != missing), (fx.id, name)


def test_expect_round_trip():
    for fx in load_all():
        again = parse_expect(format_expect(fx), Fixture(fx.id, fx.algebra, {}))
        assert again.expected == fx.expected
        assert again.profile() == fx.profile()
        assert again.witness == fx.witness and again.prime == fx.prime


def test_observed_profile_reads_divisions_through_the_unary_map():
    fx = load_fixture("z2")
    prof = observed_profile(fx)
    assert prof["I1"] and prof["assoc"]
    assert prof["B1"] and prof["KS2"]


def test_environment_override(tmp_path, monkeypatch):
    for suffix in (".alg", ".expect"):
        shutil.copy(fixture_dir() / f"z2{suffix}", tmp_path / f"z2{suffix}")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert fixture_ids() == ["z2"]
    assert verify_fixture(load_fixture("z2")).ok


def test_mismatch_is_reported(tmp_path):
    shutil.copy(fixture_dir() / "z2.alg", tmp_path / "z2.alg")
    (tmp_path / "z2.expect").write_text("I7=false\n")
    res = verify_fixture(load_fixture("z2", tmp_path))
    assert not res.ok and res.claim_mismatches[0][:3] == ("I7", False, True)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        load_fixture("nope")


@pytest.mark.parametrize("text", ["B1=maybe", "Q9=true", "witness: reg cr4", "prime: middle",
                                  "B1"])
def test_malformed_expect(text):
    with pytest.raises(MalformedFixture):
        parse_expect(text, Fixture("t", None, {}))
