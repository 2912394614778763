"""Turn proof sketches into explicit proof files.

A sketch gives, for each displayed equality, the cited rule and the term it
produces.  This script finds the position and substitution of each
rewrite, inserting up to two extra applications of the cited rule and, in
unary semigroup proofs, the re-bracketing steps around each rewrite; the
inserted steps are marked synthetic.  Every generated file is then run
through the checker.

Sketch syntax (tools/proof_sketches.txt)::

    suite <file stem>
    # comments are copied into the proof file
    ## comments starting with ## are not
    proof <name> from <hyps> goal <identity>
      assume <name>: <identity>
      <rule>[+<rule>...] -> <term>

Rule aliases: ``reconstruct`` (both forms of x', plus the two divisions in
unary semigroup proofs), ``ldrd``, ``I4``, ``tech`` and any lemma family
listed in FAMILIES.

    python3 tools/author_proofs.py [--check] [--only NAME]
"""

import argparse
import itertools
import sys
from collections import deque
from pathlib import Path

from divbimagma.proofs import (Proof, ProofStep, Theory, check_proof, context_of, format_proof,
                               parse_proofs, proof_dir)
from divbimagma.terms import (Mul, Var, children, format_term, parse_identity, parse_term,
                              positions, replace_at, substitute, subterm_at, _rebuild)

HERE = Path(__file__).resolve().parent
SKETCHES = HERE / "proof_sketches.txt"

FAMILIES = {
    "I4": ["I4a", "I4b"],
    "tech": ["tech-left", "tech-right"],
    "ldrd": ["ld-def", "rd-def"],
    "t4-goal4": ["t4-goal4-ld", "t4-goal4-rd"],
    "e-inv-tmp1": ["e-inv-tmp1a", "e-inv-tmp1b"],
}


def match(pat, t, sigma):
    if isinstance(pat, Var):
        if pat.name in sigma:
            return sigma if sigma[pat.name] == t else None
        out = dict(sigma)
        out[pat.name] = t
        return out
    if type(pat) is not type(t):
        return None
    for p, c in zip(children(pat), children(t)):
        sigma = match(p, c, sigma)
        if sigma is None:
            return None
    return sigma


def subterms(t):
    seen = {}
    for p in positions(t):
        seen.setdefault(subterm_at(t, p), None)
    return list(seen)


# -- bracketing --------------------------------------------------------------

def _factors(t):
    if isinstance(t, Mul):
        return _factors(t.left) + _factors(t.right)
    return [t]


def _bracketings(fs):
    if len(fs) == 1:
        yield fs[0]
        return
    for k in range(1, len(fs)):
        for a in _bracketings(fs[:k]):
            for b in _bracketings(fs[k:]):
                yield Mul(a, b)


def variants(t, cap=400):
    """Terms equal to ``t`` up to re-bracketing products."""
    if isinstance(t, Var):
        return [t]
    if isinstance(t, Mul):
        fs = _factors(t)
        opts = [variants(f, cap) for f in fs]
        out = []
        for combo in itertools.product(*opts):
            for b in _bracketings(list(combo)):
                out.append(b)
                if len(out) >= cap:
                    return out
        return out
    kids = [variants(c, cap) for c in children(t)]
    return [_rebuild(t, list(c)) for c in itertools.islice(itertools.product(*kids), cap)]


ASSOC = parse_identity("(x*y)*z = x*(y*z)", "assoc")


def normalize(t):
    """Left-bracket every product; returns the final term and the assoc steps taken."""
    steps = []
    while True:
        for p in positions(t):
            s = subterm_at(t, p)
            if isinstance(s, Mul) and isinstance(s.right, Mul):
                sigma = {"x": s.left, "y": s.right.left, "z": s.right.right}
                t = replace_at(t, p, substitute(ASSOC.lhs, sigma))
                steps.append(ProofStep("assoc", "r2l", p, sigma, t, True))
                break
        else:
            return t, steps


def reverse(start, steps):
    """Undo ``steps`` (which led from ``start``), returning the reversed step list."""
    terms = [start] + [s.result for s in steps]
    out = []
    for i in range(len(steps) - 1, -1, -1):
        s = steps[i]
        d = "l2r" if s.direction == "r2l" else "r2l"
        out.append(ProofStep(s.rule, d, s.position, s.substitution, terms[i], True))
    return out


# -- search --------------------------------------------------------------------

def rewrites(t, rules, target):
    """Every single rewrite of ``t`` by one of ``rules`` (name -> Identity)."""
    pool = None
    for p in positions(t):
        sub = subterm_at(t, p)
        for name, ident in rules.items():
            for d in ("l2r", "r2l"):
                src, tgt = (ident.lhs, ident.rhs) if d == "l2r" else (ident.rhs, ident.lhs)
                sigma = match(src, sub, {})
                if sigma is None:
                    continue
                extra = [v for v in ident.variables if v not in sigma]
                if not extra:
                    new = replace_at(t, p, substitute(tgt, sigma))
                    yield ProofStep(name, d, p, sigma, new)
                    continue
                if pool is None:
                    pool = subterms(target) + subterms(t)
                for vals in itertools.product(pool, repeat=len(extra)):
                    s2 = dict(sigma, **dict(zip(extra, vals)))
                    new = replace_at(t, p, substitute(tgt, s2))
                    yield ProofStep(name, d, p, s2, new)


def find_link(a, b, rules, semigroup, depth=3):
    """Steps from ``a`` to ``b`` using at most ``depth`` rewrites from ``rules``."""
    key = (lambda t: normalize(t)[0]) if semigroup else (lambda t: t)
    goal = key(b)
    start = key(a)
    prefix = normalize(a)[1] if semigroup else []
    queue = deque([(start, [], 0)])
    seen = {start}
    while queue:
        t, path, k = queue.popleft()
        if k >= depth:
            continue
        for v in (variants(t) if semigroup else [t]):
            pre = reverse(v, normalize(v)[1]) if semigroup else []
            for step in rewrites(v, rules, b):
                nxt = key(step.result)
                post = normalize(step.result)[1] if semigroup else []
                new_path = path + pre + [step] + post
                if nxt == goal:
                    tail = reverse(b, normalize(b)[1]) if semigroup else []
                    return prefix + new_path + tail
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, new_path, k + 1))
    return None


def _cancel(start, steps):
    """Drop each step that is immediately undone by the next one."""
    out, terms = [], [start]
    for s in steps:
        if len(terms) >= 2 and s.result == terms[-2]:
            out.pop()
            terms.pop()
        else:
            out.append(s)
            terms.append(s.result)
    return out


def _mark(steps, rulenames):
    """Only the last rewrite by a cited rule stays unmarked."""
    last = max((i for i, s in enumerate(steps) if s.rule in rulenames), default=-1)
    return [ProofStep(s.rule, s.direction, s.position, s.substitution, s.result,
                      i != last) for i, s in enumerate(steps)]


# -- sketches ---------------------------------------------------------------

def read_sketches(text):
    suites, comments = {}, []
    suite = proof = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("##"):
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.startswith("suite "):
            suite = suites.setdefault(line.split()[1], [])
        elif line.startswith("proof "):
            proof = parse_proofs(line)[0]
            proof.comments, comments = comments, []
            proof.sketch = []
            suite.append(proof)
        elif line.startswith("assume "):
            name, _, ident = line[len("assume "):].partition(":")
            proof.assumptions[name.strip()] = parse_identity(ident.strip(), name.strip())
        else:
            rule, sep, term = line.partition("->")
            if not sep:
                sys.exit(f"sketch line {lineno}: expected '<rule> -> <term>'")
            proof.sketch.append((rule.strip(), parse_term(term.strip()), lineno))
    return suites


def _candidates(spec, theory, proof, hyps):
    """Rules named by ``spec``; the optional parts of ``reconstruct`` drop out when unavailable."""
    names, optional = [], set()
    for part in spec.split("+"):
        if part == "reconstruct":
            extra = ["prime-def-L", "prime-def-R"]
            if context_of(hyps) == "unary_semigroup":
                extra += ["ld-def", "rd-def"]
            names += extra
            optional.update(extra)
        else:
            names += FAMILIES.get(part, [part])
    out = {}
    for n in names:
        try:
            out[n] = theory.rule(n, proof, hyps)[0]
        except Exception:
            if n not in optional:
                raise
    return out


def author(proof, theory):
    hyps = theory.hypotheses(proof)
    semigroup = context_of(hyps) == "unary_semigroup"
    t = proof.goal.lhs
    steps = []
    for spec, term, lineno in proof.sketch:
        rules = _candidates(spec, theory, proof, hyps)
        fixed = {v for a in proof.assumptions.values() for v in a.variables}
        link = None
        for depth in (1, 2, 3):
            link = find_link(t, term, rules, semigroup, depth)
            if link is not None:
                break
        if link is None:
            raise SystemExit(f"{proof.name}: no link by {spec} (line {lineno})\n"
                             f"  from {format_term(t, True)}\n  to   {format_term(term, True)}")
        link = _mark(_cancel(t, link), set(rules))
        bad = [s for s in link if s.rule in proof.assumptions
               and any(s.substitution.get(v, Var(v)) != Var(v) for v in fixed)]
        if bad:
            raise SystemExit(f"{proof.name}: line {lineno} moves a fixed element")
        steps += link
        t = term
    if t != proof.goal.rhs:
        raise SystemExit(f"{proof.name}: sketch ends at {format_term(t, True)}")
    out = Proof(proof.name, proof.hypotheses, proof.goal, steps, dict(proof.assumptions),
                proof.comments)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the files on disk")
    ap.add_argument("--only", help="author a single proof and print it")
    args = ap.parse_args(argv)
    suites = read_sketches(SKETCHES.read_text())
    theory = Theory()
    stale = []
    for suite, proofs in suites.items():
        written = []
        for p in proofs:
            full = author(p, theory)
            v = check_proof(full, theory)
            if not v.accepted:
                sys.exit(f"generated proof rejected: {v}")
            if args.only == p.name:
                print(format_proof(full))
            written.append(format_proof(full))
        path = proof_dir() / f"{suite}.proof"
        text = "\n".join(written)
        if args.only:
            continue
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(path.name)
        else:
            path.write_text(text)
            print(f"{path.name}: {len(proofs)} proofs")
    if stale:
        sys.exit("stale: " + " ".join(stale))


if __name__ == "__main__":
    main()
