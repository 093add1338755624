"""
Freeness and derivations
========================

Odd cycles of different lengths do not contain instances of each other,
which is what blocks a finite basis.  Inequalities that do follow get an
explicit, machine-checked chain.
"""

from aisr import format_term, is_free, named, parse_basis, search_derivation, u_n
from aisr.certify import certify
from aisr.freeness import instance_subterm
from aisr.terms import parse_statement, parse_term

# row m, column n: is u_m free of instances of u_n?
for m in range(1, 5):
    row = ["free" if is_free(u_n(m), u_n(n)) else "----" for n in range(1, 5)]
    print(f"u{m}:", " ".join(row))

# when an instance exists the witness says where it sits
v = parse_term("a*c + b*c + d")
wit = instance_subterm(parse_term("x*y"), v)
print(wit.describe(parse_term("x*y")))

# a chain for an inequality of the S_c(ab) theory
goal = parse_statement("z <= x1*x2 + x2*x3 + x3*x1")
chain = certify("Scab", goal.lhs, goal.rhs)
for t, just in chain.links:
    print("  >=", format_term(t), "" if just is None else f"[{type(just).__name__}]")
print("chain proves goal:", chain.proves(goal))

# delta_2 from delta_1 by bounded search
B = parse_basis({"I26022301": "I26022301"})
script = search_derivation(B, named("delta:2"), depth=4)
for i, t in enumerate(script.replay()):
    print(f"  t{i} = {format_term(t)}")
