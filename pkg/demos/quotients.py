"""
Recovering S_c(ab) and SR6 inside SR6 x SR6
==========================================

Pick elements satisfying the right non-inequality, generate a
subalgebra, glue the prescribed classes, and compare the quotient with
the small algebra it should be.
"""

from aisr import catalog, direct_product, quotient
from aisr.algebra import Partition, subalgebra
from aisr.structure import ab_pairs, ab_quotient, abcd_quads, abcd_quotient

S = catalog.sr6()
P = direct_product(S, S)
print(P.name, "has", P.size, "elements")

a, b = next(ab_pairs(P))
r = ab_quotient(P, a, b)
print("a, b =", P.label(a), P.label(b))
print("<a,b> has", len(r.generated), "elements; I =", sorted(P.label(x) for x in r.ideal))
print("congruence:", r.congruence, " quotient = Sc(ab) via", r.isomorphism)

quads = abcd_quads(P)
print(len(quads), "quadruples with ad not below ab + bc + cd")
res = abcd_quotient(P, *map(int, quads[0]))
print("a, b, c, d =", [P.label(x) for x in res.quad])
for i, cls in enumerate(res.classes, start=1):
    print(f"  R{i}: {sorted(P.label(x) for x in cls)}")
print("congruence:", res.congruence, " isomorphic to SR6:", res.isomorphic)

# the quotient table itself
sub, elems = subalgebra(P, res.generated)
pos = {e: i for i, e in enumerate(elems)}
Q = quotient(sub, Partition([[pos[x] for x in c] for c in res.classes], sub.size))
print(Q.labels)
print(Q.mul)
