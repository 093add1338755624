"""
Deciding inequalities by looking at graphs
==========================================

The syntactic deciders only read the shape of ``u``: long words, letters
touching edges, and the graph of the length-2 words.  Here they are run
next to brute force on a slice of the exhaustive corpus.
"""

import time
from collections import Counter

from aisr import build, catalog, decide_scab, decide_sr6, has_odd_cycle, odd_closure, parse_term
from aisr.corpus import InequalityCorpus, truth_table

u = parse_term("x1*x2 + x2*x3 + x3*x4")
G = build(u)
print("edges:", G.sorted_edges())
print("odd cycle:", has_odd_cycle(G))
print("odd pairs:", sorted(tuple(sorted(p)) for p in odd_closure(G)))
print("x1*x4 reason in Sc(ab):", decide_scab(parse_term("x1*x4").words[0], u).reason)

corpus = InequalityCorpus(max_vars=3, max_len=3, max_summands=3)
ineqs = list(corpus)
print(len(ineqs), "inequalities up to renaming")

for name, A, decide in [("Sc(ab)", catalog.scab(), decide_scab), ("SR6", catalog.sr6(), decide_sr6)]:
    t0 = time.perf_counter()
    truth = truth_table(A, corpus)
    agree = sum(bool(decide(i.lhs, i.rhs)) == truth[j] for j, i in enumerate(ineqs))
    print(f"{name:7s} holds for {truth.sum()}, decider agrees on {agree}/{len(ineqs)} ({time.perf_counter() - t0:.2f}s)")

# the reasons behind the Sc(ab) verdicts
print(Counter(decide_scab(i.lhs, i.rhs).reason for i in ineqs))
