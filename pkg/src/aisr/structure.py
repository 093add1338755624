"""Generated subalgebras and the quotients that recover S_c(ab) and SR_6.

Given ``a, b`` with ``a² ≠ ab`` in a member of V(SR_6), collapsing
``I = {a², a+b}`` in ``⟨a, b⟩`` gives S_c(ab).  Given ``a, b, c, d`` with
``ad ≰ ab + bc + cd``, the classes R_1..R_6 of ``⟨a, b, c, d⟩`` give SR_6
with ``R_i ↦ i``.  These helpers compute both constructions and check them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import catalog
from .algebra import (
    FiniteAiSemiring,
    Partition,
    find_isomorphism,
    is_congruence,
    is_homomorphism,
    quotient,
    subalgebra,
    subalgebra_closure,
)


@dataclass(frozen=True)
class AbResult:
    a: int
    b: int
    generated: frozenset[int]
    ideal: frozenset[int]
    congruence: bool
    isomorphism: Optional[dict[int, int]]

    @property
    def ok(self) -> bool:
        return self.congruence and self.isomorphism is not None


def ab_pairs(S: FiniteAiSemiring) -> Iterator[tuple[int, int]]:
    """All ``(a, b)`` with ``a² ≠ ab``."""
    sq = np.diagonal(S.mul)
    for a, b in zip(*np.nonzero(S.mul != sq[:, None])):
        yield int(a), int(b)


def ab_quotient(S: FiniteAiSemiring, a: int, b: int) -> AbResult:
    gen = subalgebra_closure(S, (a, b))
    sub, elems = subalgebra(S, gen)
    pos = {e: i for i, e in enumerate(elems)}
    ideal = frozenset({int(S.mul[a, a]), int(S.add[a, b])})
    P = Partition.collapse(sub.size, (pos[x] for x in ideal))
    chk = is_congruence(sub, P)
    iso = find_isomorphism(quotient(sub, P), catalog.scab()) if chk else None
    return AbResult(a, b, gen, ideal, bool(chk), iso)


def _r_classes(S: FiniteAiSemiring, a: int, b: int, c: int, d: int) -> list[set[int]]:
    add, mul = S.add, S.mul
    ab, bc, cd = int(mul[a, b]), int(mul[b, c]), int(mul[c, d])
    r2 = {a, int(add[a, c])}
    r3 = {ab, bc, cd, int(add[ab, bc]), int(add[ab, cd]), int(add[bc, cd]), int(add[add[ab, bc], cd])}
    r4 = {d, int(add[b, d])}
    return [r2, r3, r4, {c}, {b}]


@dataclass(frozen=True)
class AbcdResult:
    quad: tuple[int, int, int, int]
    generated: frozenset[int]
    classes: tuple[frozenset[int], ...]  # R_1 .. R_6
    disjoint: bool
    congruence: bool
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.disjoint and self.congruence and self.isomorphic


def abcd_quotient(S: FiniteAiSemiring, a: int, b: int, c: int, d: int) -> AbcdResult:
    gen = subalgebra_closure(S, (a, b, c, d))
    rest = _r_classes(S, a, b, c, d)
    r1 = set(gen) - set().union(*rest)
    classes = [r1] + rest
    disjoint = all(not (x & y) for x, y in itertools.combinations(classes, 2)) and all(classes)
    frozen = tuple(frozenset(r) for r in classes)
    if not disjoint:
        return AbcdResult((a, b, c, d), gen, frozen, False, False, False)
    sub, elems = subalgebra(S, gen)
    pos = {e: i for i, e in enumerate(elems)}
    P = Partition([[pos[x] for x in r] for r in classes], sub.size)
    if not is_congruence(sub, P):
        return AbcdResult((a, b, c, d), gen, frozen, True, False, False)
    Q = quotient(sub, P)
    # quotient blocks are ordered by least member; send the block of R_i to i
    index_of = {frozenset(pos[x] for x in r): i for i, r in enumerate(classes)}
    f = {k: index_of[blk] for k, blk in enumerate(P.blocks)}
    iso = is_homomorphism(Q, catalog.sr6(), f) and sorted(f.values()) == list(range(6))
    return AbcdResult((a, b, c, d), gen, frozen, True, True, iso)


def abcd_quads(S: FiniteAiSemiring) -> np.ndarray:
    """All ``(a, b, c, d)`` with ``ad ≰ ab + bc + cd``, as rows, in lexicographic order."""
    n = S.size
    a, b, c, d = np.indices((n,) * 4).reshape(4, -1)
    lhs = S.mul[a, d]
    rhs = S.add[S.add[S.mul[a, b], S.mul[b, c]], S.mul[c, d]]
    bad = S.add[lhs, rhs] != rhs
    return np.stack([a[bad], b[bad], c[bad], d[bad]], axis=1)
