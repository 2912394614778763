import copy
import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import terms
from divbimagma.proofs import (SHIPPED_SUITES, BadPosition, NoMatch, Proof, ProofStep,
                               ProofSyntaxError, Theory, apply_step, check_proof, check_suite,
                               format_proof, load_proofs, shipped_suite, parse_proofs, proof_dir,
                               run_paper_suite, soundness_check)
from divbimagma.registry import default_registry
from divbimagma.terms import Identity, Var, parse_identity, parse_term, positions, subterm_at

REG = default_registry()
x = Var("x")

T2A = """\
proof t2a from T1,T2 goal x/(x\\x) = x
  T1 r2l at root with x:=x, y:=x, z:=x -> (x/x)\\x
  T2 l2r at root with x:=x -> x
"""


def suite():
    return shipped_suite()


def by_name(proofs, name):
    return next(i for i, p in enumerate(proofs) if p.name == name)


def replace_step(proof, i, **kw):
    p = copy.deepcopy(proof)
    p.steps[i] = dataclasses.replace(p.steps[i], **kw)
    return p


def test_t2a_is_accepted():
    (p,) = parse_proofs(T2A)
    v = check_proof(p)
    assert v.accepted and v.steps == 2
    assert str(v) == "proof:t2a PASS 2 steps"


def test_t1_step_rewrites_as_expected():
    rule = REG["T1"]
    step = ProofStep("T1", "r2l", (), {"x": x, "y": x, "z": x})
    assert apply_step(parse_term("x/(x\\x)"), step, rule) == parse_term("(x/x)\\x")


def test_whole_suite_is_accepted():
    rep = run_paper_suite()
    assert rep.ok, "\n".join(rep.lines())
    names = [v.name for v in rep.verdicts]
    assert "tamura-T4" in names and len(names) == len(set(names))


def test_tamura_t4_chain():
    proofs = suite()
    k = by_name(proofs, "tamura-T4")
    th = Theory()
    check_suite(proofs[:k], theory=th)
    v = check_proof(proofs[k], th)
    assert v.accepted
    assert proofs[k].goal.lhs == parse_term("(x/y)'") and proofs[k].goal.rhs == parse_term("y/x")


def test_swapped_rule_name_is_rejected_at_that_step():
    (p,) = parse_proofs(T2A)
    bad = replace_step(p, 0, rule="T2")
    v = check_proof(bad)
    assert not v.accepted and v.failed_step == 1


def test_removing_a_lemma_breaks_its_users():
    proofs = [p for p in suite() if p.name != "reg-45"]
    rep = check_suite(proofs)
    v = next(v for v in rep.verdicts if v.name == "reg-46a")
    assert not v.accepted and v.failed_step == 3
    assert "reg-45" in v.reason


def test_using_a_later_lemma_is_structural():
    proofs = suite()
    i, j = by_name(proofs, "reg-45"), by_name(proofs, "reg-46a")
    proofs[i], proofs[j] = proofs[j], proofs[i]
    rep = check_suite(proofs)
    v = next(v for v in rep.verdicts if v.name == "reg-46a")
    assert not v.accepted and v.structural


def test_identity_rule_leaves_the_term_unchanged():
    refl = Identity("refl", x, x)
    t = parse_term("(x/y)\\z'")
    assert apply_step(t, ProofStep("refl", "l2r", (), {"x": t}), refl) == t


def test_mismatched_substitution():
    step = ProofStep("T2", "l2r", (), {"x": Var("y")})
    with pytest.raises(NoMatch):
        apply_step(parse_term("(x/x)\\x"), step, REG["T2"])
    with pytest.raises(NoMatch):
        apply_step(parse_term("(x/x)\\x"), ProofStep("T2", "l2r", (), {}), REG["T2"])
    with pytest.raises(NoMatch):
        apply_step(parse_term("(x/x)\\x"), ProofStep("T2", "l2r", (), {"x": x, "w": x}), REG["T2"])


def test_bad_position():
    with pytest.raises(BadPosition):
        apply_step(x, ProofStep("T2", "l2r", (0, 1), {"x": x}), REG["T2"])


def test_wrong_recorded_result():
    (p,) = parse_proofs(T2A)
    bad = replace_step(p, 0, result=parse_term("x/x"))
    v = check_proof(bad)
    assert v.failed_step == 1 and "recorded" in v.reason


def test_chain_ending_elsewhere():
    (p,) = parse_proofs(T2A)
    p.steps = p.steps[:1]
    v = check_proof(p)
    assert v.failed_step == 2 and "chain ends" in v.reason


def test_non_hypothesis_is_unavailable():
    (p,) = parse_proofs(T2A)
    p.hypotheses = ("T1",)
    v = check_proof(p)
    assert not v.accepted and v.failed_step == 2 and "not a hypothesis" in v.reason


def test_prime_expansion_needs_b1_or_same():
    (p,) = parse_proofs("proof p from T2 goal x' = (x\\x)/x\n"
                        "  prime-def-L l2r at root with x:=x -> (x\\x)/x\n")
    assert "needs B1" in check_proof(p).reason
    p.hypotheses = ("B1",)
    assert check_proof(p).accepted


def test_products_need_assoc():
    (p,) = parse_proofs("proof p from B1 goal x*y = x*y\n")
    assert "assoc" in check_proof(p).reason


def test_name_clash_is_structural():
    (p,) = parse_proofs(T2A)
    q = dataclasses.replace(p, name="B1")
    rep = check_suite([p, q])
    assert not rep.ok and all(v.structural for v in rep.verdicts)
    rep = check_suite([p, copy.deepcopy(p)])
    assert not rep.ok


def test_fixed_elements_of_an_assumption():
    proofs = suite()
    k = by_name(proofs, "ir-fix")
    p = proofs[k]
    assert p.assumptions
    th = Theory()
    check_suite(proofs[:k], theory=th)
    assert check_proof(p, th, record=False).accepted
    e = next(iter(p.assumptions.values())).variables[0]
    for i, s in enumerate(p.steps):
        if s.rule in p.assumptions:
            moved = replace_step(p, i, substitution={e: Var("z")})
            assert not check_proof(moved, th, record=False).accepted
            break


def test_format_parse_round_trip():
    for stem in SHIPPED_SUITES:
        text = (proof_dir() / f"{stem}.proof").read_text()
        again = "\n".join(format_proof(p) for p in parse_proofs(text))
        assert again == text


def test_check_is_deterministic():
    a = run_paper_suite().lines()
    b = run_paper_suite().lines()
    assert a == b


@pytest.mark.parametrize("text", ["proof p goal x = x", "proof p from T1 goal x = x\n  T1 sideways at root -> x",
                                  "proof p from T1 goal x = x\n  T1 l2r at 0.a -> x",
                                  "  T1 l2r at root -> x"])
def test_syntax_errors(text):
    with pytest.raises(ProofSyntaxError):
        parse_proofs(text)


def test_load_from_file(tmp_path):
    f = tmp_path / "one.proof"
    f.write_text(T2A)
    assert [p.name for p in load_proofs(f)] == ["t2a"]


@given(terms(), st.data())
def test_steps_are_local(t, data):
    """A rewrite changes only the addressed subterm."""
    pos = data.draw(st.sampled_from(list(positions(t))))
    sub = subterm_at(t, pos)
    refl = Identity("refl", x, x)
    out = apply_step(t, ProofStep("refl", "l2r", pos, {"x": sub}), refl)
    assert out == t
    swap = Identity("wrap", x, parse_term("x''"))
    out = apply_step(t, ProofStep("wrap", "l2r", pos, {"x": sub}), swap)
    assert subterm_at(out, pos + (0, 0)) == sub
    for q in positions(t):
        if q[:len(pos)] != pos and pos[:len(q)] != q:
            assert subterm_at(out, q) == subterm_at(t, q)


def test_soundness_on_small_models():
    proofs = suite()
    th = Theory()
    check_suite(proofs, theory=th)
    for name in ("t2a", "tamura-T4", "reg-I3", "inv-I8"):
        rep = soundness_check(proofs[by_name(proofs, name)], th, 3)
        assert rep.ok and rep.checked[3] > 0, str(rep)


def test_soundness_detects_a_false_goal():
    (p,) = parse_proofs("proof bogus from T1,T2 goal x/y = x\n")
    rep = soundness_check(p, Theory(), 2)
    assert not rep.ok
