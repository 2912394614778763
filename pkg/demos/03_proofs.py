"""
Checking equational proofs step by step
=======================================

Every step names a rule, a direction, a position and a substitution.  The
checker only instantiates and compares, so a wrong citation is caught at
the step where it happens.
"""

import copy
import dataclasses

from divbimagma.proofs import (Theory, check_proof, check_suite, format_proof, shipped_suite,
                               parse_proofs, soundness_check)

text = r"""
proof t2a from T1,T2 goal x/(x\x) = x
  T1 r2l at root with x:=x, y:=x, z:=x -> (x/x)\x
  T2 l2r at root with x:=x -> x
"""
(p,) = parse_proofs(text)
print(check_proof(p))

# cite T2 where T1 is needed
bad = copy.deepcopy(p)
bad.steps[0] = dataclasses.replace(bad.steps[0], rule="T2")
print(check_proof(bad))

# %%
# The shipped suites, checked in order; later proofs cite earlier ones.
proofs = shipped_suite()
theory = Theory()
report = check_suite(proofs, theory=theory)
print(f"{sum(v.accepted for v in report.verdicts)}/{len(proofs)} accepted")
final = next(q for q in proofs if q.name == "tamura-T4")
print(format_proof(final))

# %%
# A cheap sanity check: the goal holds on every model of the hypotheses up
# to size 3.
print(soundness_check(final, theory, 3))
