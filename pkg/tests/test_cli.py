import pytest

from divbimagma.algebra import FiniteUnarySemigroup, read_algebra, write_algebra
from divbimagma.cli import main
from divbimagma.fixtures import fixture_dir
from divbimagma.registry import default_registry
from divbimagma.terms import holds

FX = fixture_dir()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_holds(capsys):
    code, out, _ = run(capsys, "check", str(FX / "z2.alg"), "--identity", "I1,I4,B1")
    assert code == 0
    assert out.splitlines() == ["I1 holds", "I4a holds", "I4b holds", "B1 holds"]


def test_check_reports_a_witness(capsys):
    code, out, _ = run(capsys, "check", str(FX / "indep-not-ir4.alg"), "--identity", "B1,ir4")
    assert code == 1
    assert "ir4 fails at" in out


def test_check_literal_identity_and_prime(capsys):
    code, out, _ = run(capsys, "check", str(FX / "cliffindep-not-B1.alg"),
                       "--identity", "B2", "--prime", "right")
    assert code == 0
    code, _, _ = run(capsys, "check", str(FX / "z2.alg"), "--identity", "x*y = y*x")
    assert code == 0


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--in", str(FX / "indep-not-ir4.alg"), "--axioms")
    assert code == 0
    assert "regular-involuted+I5: not a member (fails ir4)" in out
    assert "ir4=false" in out


def test_convert_both_ways(capsys, tmp_path):
    S = FiniteUnarySemigroup([[0, 0], [0, 1]], [0, 1])
    write_algebra(S, tmp_path / "s.alg")
    code, _, _ = run(capsys, "convert", "--in", str(tmp_path / "s.alg"),
                     "--direction", "to-bimagma", "--out", str(tmp_path / "b.alg"))
    assert code == 0
    code, out, _ = run(capsys, "convert", "--in", str(tmp_path / "b.alg"), "--direction", "to-semigroup")
    assert code == 0 and out.startswith("unary_semigroup 2")


def test_convert_failure_prints_the_report(capsys):
    code, _, err = run(capsys, "convert", "--in", str(FX / "einv-not-B1.alg"),
                       "--direction", "to-semigroup")
    assert code == 1 and "not associative" in err


def test_convert_wrong_kind(capsys):
    code, _, _ = run(capsys, "convert", "--in", str(FX / "z2.alg"), "--direction", "to-semigroup")
    assert code == 2


def test_search_to_directory(capsys, tmp_path):
    code, _, err = run(capsys, "search", "--kind", "bimagma", "--size", "3", "--require", "B1,B2,B3",
                       "--forbid", "cr4", "--dedup", "iso", "--limit", "10", "--out", str(tmp_path))
    assert code == 0 and "written" in err
    files = sorted(tmp_path.glob("*.alg"))
    assert files
    reg = default_registry()
    for f in files:
        B = read_algebra(f)
        assert holds(reg["B3"], B) and not holds(reg["cr4"], B)


def test_search_bound(capsys):
    code, _, err = run(capsys, "search", "--kind", "bimagma", "--size", "6")
    assert code == 2 and "bound" in err


def test_prove_default_suite(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "--out", str(tmp_path))
    assert code == 0
    assert "proof:tamura-T4 PASS" in out
    assert (tmp_path / "proofs.txt").exists()


def test_prove_rejects_a_bad_suite(capsys, tmp_path):
    f = tmp_path / "bad.proof"
    f.write_text("proof p from T1 goal x = x'\n")
    code, out, _ = run(capsys, "prove", "--suite", str(f))
    assert code == 1 and "FAIL" in out


def test_global_flags_before_command(capsys):
    code, out, _ = run(capsys, "--workers", "2", "search", "--kind", "semigroup", "--size", "2")
    assert code == 0 and out.count("semigroup 2") == 5


def test_fixture_flag(capsys, tmp_path, monkeypatch):
    import shutil
    monkeypatch.delenv("DIVBIMAGMA_FIXTURES", raising=False)
    for s in (".alg", ".expect"):
        shutil.copy(FX / f"z2{s}", tmp_path / f"z2{s}")
    code, out, _ = run(capsys, "--fixtures", str(tmp_path), "prove", "--soundness")
    assert code == 0 and "sound:t2a PASS" in out


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
