"""
A tour of SR6
=============

The six-element semiring, the identities it satisfies, and the one
inequality that tells it apart from S_c(ab).
"""

import numpy as np

from aisr import catalog, eval_term, named, satisfies, validate

S = catalog.sr6()
labels = np.array(S.labels)

# Cayley tables, printed with the 1-based labels
print("+ table")
print(labels[S.add])
print("* table")
print(labels[S.mul])
print("axiom violations:", validate(S))

# identities that hold, by exhaustive enumeration
for lab in ["SR02", "SR03", "SR04", "sigma:1", "sigma:2", "sigma:3"]:
    v = satisfies(S, named(lab))
    print(f"{lab:8s} {named(lab)!s:45s} holds={v.holds} ({v.checked} assignments)")

# x1x4 <= x1x2 + x2x3 + x3x4 fails; look at the witness
d1 = named("I26022301")
v = satisfies(S, d1)
print(d1, "->", v.describe(S))
lhs = eval_term(S, d1.lhs, v.witness)
rhs = eval_term(S, d1.rhs, v.witness)
print(f"lhs = {S.label(lhs)}, rhs = {S.label(rhs)}, lhs + rhs = {S.label(S.add[lhs, rhs])}")

# ...while in S_c(ab) it holds
print("in Sc(ab):", satisfies(catalog.scab(), d1).holds)
