"""Command line entry point: ``divbimagma <command> ...``.

Commands::

    check FILE --identity B1,B2,...     exit 0 iff every identity holds
    classify --in FILE [--axioms]       identity and class verdicts
    convert --in FILE --direction to-bimagma|to-semigroup [--out FILE]
    search --kind K --size N [--require ...] [--forbid NAME] [--dedup ...] [--limit N]
    prove [--suite FILE] [--soundness]
    verify-paper

Global options (before or after the command): ``--workers``, ``--bound``,
``--deep``, ``--out`` and ``--fixtures`` (overrides DIVBIMAGMA_FIXTURES).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import AlgebraError, NonAssociative, format_algebra, read_algebra, write_algebra
from .classes import CLASSES, classify_bimagma, classify_semigroup
from .fixtures import ENV_VAR, load_all
from .functors import IllDefined, reconstruction_report, to_division_bimagma, to_unary_semigroup
from .proofs import (ProofSyntaxError, Theory, check_suite, load_proofs, shipped_suite,
                     soundness_check)
from .registry import default_registry
from .search import BoundExceeded, SearchSpec, enumerate_models
from .terms import PRIME_FORMS, SignatureMismatch, TermSyntaxError, find_violation, parse_identity
from .verify import verify_paper


def _names(text):
    return [s.strip() for s in text.split(",") if s.strip()] if text else []


def _identities(items, reg):
    """Registry names (groups expanded) or literal identities containing '='."""
    out = []
    for item in items:
        if "=" in item:
            out.append(parse_identity(item, item))
        else:
            out += [reg[n] for n in reg.expand([item])]
    return out


def _fmt_assignment(a):
    return ", ".join(f"{k}={v}" for k, v in a.items())


def cmd_check(args):
    reg = default_registry()
    A = read_algebra(args.file)
    failed = 0
    for ident in _identities(_names(args.identity), reg):
        v = find_violation(ident, A, args.prime)
        if v is None:
            print(f"{ident.name} holds")
        else:
            failed += 1
            print(f"{ident.name} fails at {_fmt_assignment(v)}")
    return 1 if failed else 0


def cmd_classify(args):
    A = read_algebra(args.input)
    reg = default_registry()
    if A.kind == "unary_semigroup":
        prof = classify_semigroup(A, reg)
    elif A.kind == "bimagma":
        prof = classify_bimagma(A, reg)
    else:
        print("classify needs a unary semigroup or a bimagma", file=sys.stderr)
        return 2
    idents = [k for k in prof if k in reg]
    for k in idents:
        print(f"{k}={'true' if prof[k] else 'false'}")
    print()
    for name, spec in CLASSES.items():
        line = f"{name}: {'member' if prof[name] else 'not a member'}"
        if args.axioms and not prof[name]:
            axioms = spec.semigroup_axioms if A.kind == "unary_semigroup" else spec.bimagma_axioms
            fails = [a for a in reg.expand(axioms) if not prof[a]]
            line += f" (fails {','.join(fails)})" if fails else " (fails the group condition)"
        print(line)
    return 0


def cmd_convert(args):
    A = read_algebra(args.input)
    if args.direction == "to-bimagma":
        if A.kind != "unary_semigroup":
            print("to-bimagma needs a unary semigroup", file=sys.stderr)
            return 2
        out = to_division_bimagma(A)
    else:
        if A.kind != "bimagma":
            print("to-semigroup needs a bimagma", file=sys.stderr)
            return 2
        try:
            out, _ = to_unary_semigroup(A)
        except IllDefined as exc:
            print(exc.report, file=sys.stderr)
            return 1
        except NonAssociative:
            print(reconstruction_report(A), file=sys.stderr)
            print("well defined but not associative (a pre-semigroup)", file=sys.stderr)
            return 1
    if args.out:
        write_algebra(out, args.out)
    else:
        sys.stdout.write(format_algebra(out))
    return 0


def cmd_search(args):
    spec = SearchSpec(args.kind, args.size, tuple(_names(args.require)), args.forbid,
                      args.dedup, args.prime)
    res = enumerate_models(spec, bound=args.bound, workers=args.workers)
    models = res.models[:args.limit] if args.limit else res.models
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for i, M in enumerate(models, 1):
            write_algebra(M, d / f"model-{i:04d}.alg")
    else:
        sys.stdout.write("\n".join(format_algebra(M) for M in models))
    print(f"{len(res.models)} models ({args.dedup}), {res.count_raw} raw, "
          f"{len(models)} written", file=sys.stderr)
    return 0


def cmd_prove(args):
    proofs = load_proofs(args.suite) if args.suite else shipped_suite()
    theory = Theory()
    rep = check_suite(proofs, theory=theory)
    lines = list(rep.lines())
    ok = rep.ok
    if args.soundness:
        fixtures = load_all(args.fixtures)
        for p, v in zip(proofs, rep.verdicts):
            if v.accepted:
                s = soundness_check(p, theory, args.bound or 3, fixtures, workers=args.workers)
                lines.append(str(s))
                ok = ok and s.ok
    print("\n".join(lines))
    _save(args.out, "proofs.txt", lines)
    return 0 if ok else 1


def cmd_verify(args):
    rep = verify_paper(bound=args.bound or 3, deep=args.deep, workers=args.workers,
                       fixture_root=args.fixtures, progress=lambda c: print(c.line(), flush=True))
    print()
    print(rep.table())
    n = len(rep.failures)
    print(f"\n{len(rep.checks) - n} passed, {n} failed")
    _save(args.out, "verify.txt", rep.lines() + ["", rep.table()])
    return 0 if rep.ok else 1


def _save(out, name, lines):
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text("\n".join(lines) + "\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--workers", type=int, default=S, help="parallel search workers")
    common.add_argument("--bound", type=int, default=S, help="size bound for searches and sweeps")
    common.add_argument("--deep", action="store_true", default=S, help="run the size-4 searches")
    common.add_argument("--out", default=S, help="output file or directory")
    common.add_argument("--fixtures", default=S, help=f"fixture directory (overrides {ENV_VAR})")

    ap = argparse.ArgumentParser(prog="divbimagma", parents=[common],
                                 description="Unary semigroups and division bimagmas.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check identities on an algebra")
    p.add_argument("file")
    p.add_argument("--identity", required=True, help="comma separated names or identities")
    p.add_argument("--prime", choices=PRIME_FORMS, default="left")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="identity and class verdicts")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--axioms", action="store_true", help="list the failing axioms of each class")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("convert", parents=[common], help="apply one of the two constructions")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--direction", choices=("to-bimagma", "to-semigroup"), required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("search", parents=[common], help="enumerate models")
    p.add_argument("--kind", choices=("bimagma", "unary_semigroup", "semigroup"), required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--require", default="")
    p.add_argument("--forbid")
    p.add_argument("--dedup", choices=("none", "iso", "iso+anti-iso"), default="iso")
    p.add_argument("--limit", type=int, default=0)
    p.add_argument("--prime", choices=PRIME_FORMS, default="left")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("prove", parents=[common], help="check a proof suite")
    p.add_argument("--suite", help="proof file (default: the shipped suite)")
    p.add_argument("--soundness", action="store_true",
                   help="also check each goal on all small models of its hypotheses")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    for k, v in (("workers", 1), ("bound", None), ("deep", False), ("out", None), ("fixtures", None)):
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        return args.func(args)
    except (AlgebraError, TermSyntaxError, ProofSyntaxError, BoundExceeded, KeyError,
            SignatureMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
