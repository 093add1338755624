"""Syntactic decision procedures for the equational theories along the chain.

Each ``decide_*`` takes a word ``q`` and a term ``u`` and answers whether
``q ⪯ u`` holds in the corresponding algebra.  They are checked against
brute-force satisfaction in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import catalog
from .algebra import satisfies
from .graph import build, has_odd_cycle, odd_closure
from .terms import Inequality, Statement, Term, Word, split_identity

REASONS = ("trivial", "cond_i", "cond_ii", "cond_iii", "cond_iv", "none")


@dataclass(frozen=True)
class ScabVerdict:
    holds: bool
    reason: str

    def __post_init__(self):
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason!r}")
        if self.holds != (self.reason != "none"):
            raise ValueError("holds must agree with reason")

    def __bool__(self) -> bool:
        return self.holds


def _long_word(u: Term) -> bool:
    return any(w.length >= 3 for w in u.words)


def _letter_meets_edge(u: Term) -> bool:
    ones = frozenset().union(*(w.content for w in u.layer(1)))
    twos = frozenset().union(*(w.content for w in u.layer(2)))
    return bool(ones & twos)


def decide_scab(q: Word, u: Term) -> ScabVerdict:
    """Conditions are tried in a fixed order; the first that fires is the reason."""
    if q in u:
        return ScabVerdict(True, "trivial")
    if _long_word(u):
        return ScabVerdict(True, "cond_i")
    if _letter_meets_edge(u):
        return ScabVerdict(True, "cond_ii")
    G = build(u)
    if has_odd_cycle(G):
        return ScabVerdict(True, "cond_iii")
    # no odd cycle, so walk parity equals path parity here
    if q.length == 2 and frozenset(q.content) in odd_closure(G):
        return ScabVerdict(True, "cond_iv")
    return ScabVerdict(False, "none")


def decide_sr6(q: Word, u: Term) -> bool:
    if q in u or _long_word(u) or _letter_meets_edge(u):
        return True
    return has_odd_cycle(build(u))


def decide_d2(q: Word, u: Term) -> bool:
    cq = q.content
    return q in u or any(w.content <= cq for w in u.words)


def dq_filter(q: Word, u: Term) -> frozenset[Word]:
    """Summands of ``u`` whose variables all occur in ``q`` (possibly none)."""
    cq = q.content
    return frozenset(w for w in u.words if w.content <= cq)


Decider = Callable[[Word, Term], object]


def decide_s0(base: Decider, q: Word, u: Term) -> bool:
    """Zero extension: ``q ⪯ u`` holds in S⁰ iff ``q ⪯ D_q(u)`` holds in S."""
    kept = dq_filter(q, u)
    if not kept:
        return False
    return bool(base(q, Term(kept)))


def decide_scab0(q: Word, u: Term) -> bool:
    return decide_s0(decide_scab, q, u)


def decide_scabd2(q: Word, u: Term) -> bool:
    return bool(decide_scab(q, u)) and decide_d2(q, u)


@lru_cache(maxsize=1)
def _sca():
    return catalog.sca()


def decide_sca(q: Word, u: Term) -> bool:
    # no syntactic criterion is used for S_c(a): brute force on two elements
    return satisfies(_sca(), Inequality(q, u)).holds


DECIDERS: dict[str, Decider] = {
    "SR6": decide_sr6,
    "Scab": decide_scab,
    "D2": decide_d2,
    "ScabD2": decide_scabd2,
    "Scab0": decide_scab0,
    "Sca": decide_sca,
}


def decide_variety(tag: str, stmt: Statement) -> bool:
    try:
        decide = DECIDERS[tag]
    except KeyError:
        raise KeyError(f"unknown variety {tag!r}; expected one of {', '.join(DECIDERS)}") from None
    return all(bool(decide(i.lhs, i.rhs)) for i in split_identity(stmt))


def explain(tag: str, stmt: Statement) -> list[tuple[Inequality, bool, str]]:
    """Per-inequality verdicts, with the S_c(ab) reason where one applies."""
    out = []
    for ineq in split_identity(stmt):
        ok = bool(DECIDERS[tag](ineq.lhs, ineq.rhs))
        reason = ""
        if tag in ("Scab", "SR6", "ScabD2"):
            reason = decide_scab(ineq.lhs, ineq.rhs).reason
        elif tag == "Scab0":
            kept = dq_filter(ineq.lhs, ineq.rhs)
            reason = decide_scab(ineq.lhs, Term(kept)).reason if kept else "empty D_q(u)"
        out.append((ineq, ok, reason))
    return out
