"""Exhaustive inequality corpora, one representative per variable renaming."""

from __future__ import annotations

import itertools

import numpy as np
from typing import Iterator

from .terms import Inequality, Term, Word


def words_up_to(names: list[str], max_len: int) -> list[Word]:
    out = []
    for k in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(names, k):
            out.append(Word.of(*combo))
    return sorted(out, key=Word.sort_key)


class InequalityCorpus:
    """All ``q ⪯ u`` over ``max_vars`` variables, canonical up to renaming.

    ``q`` and every summand of ``u`` have length at most ``max_len``;
    ``u`` has at most ``max_summands`` words.  A representative is the
    lexicographically least image under all permutations of the variables
    (words compared by their index in :attr:`words`).
    """

    def __init__(self, max_vars: int = 4, max_len: int = 3, max_summands: int = 4, prefix: str = "x"):
        self.names = [f"{prefix}{i}" for i in range(1, max_vars + 1)]
        self.words = words_up_to(self.names, max_len)
        index = {w: i for i, w in enumerate(self.words)}
        self.perms = []
        for perm in itertools.permutations(self.names):
            ren = dict(zip(self.names, perm))
            self.perms.append(tuple(index[Word((ren[n], e) for n, e in w.items)] for w in self.words))
        self.max_summands = max_summands
        self._pairs: list[tuple[int, tuple[int, ...]]] | None = None

    def _canonical_terms(self) -> Iterator[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
        n = len(self.words)
        for k in range(1, self.max_summands + 1):
            for combo in itertools.combinations(range(n), k):
                images = [tuple(sorted(p[i] for i in combo)) for p in self.perms]
                if min(images) == combo:
                    stab = [p for p, img in zip(self.perms, images) if img == combo]
                    yield combo, stab

    def pairs(self) -> list[tuple[int, tuple[int, ...]]]:
        if self._pairs is None:
            out = []
            for u, stab in self._canonical_terms():
                for q in range(len(self.words)):
                    if min(p[q] for p in stab) == q:
                        out.append((q, u))
            self._pairs = out
        return self._pairs

    def __len__(self) -> int:
        return len(self.pairs())

    def __iter__(self) -> Iterator[Inequality]:
        for q, u in self.pairs():
            yield Inequality(self.words[q], Term(self.words[i] for i in u))

    def terms(self) -> Iterator[Term]:
        for u, _ in self._canonical_terms():
            yield Term(self.words[i] for i in u)


def truth_table(A, corpus: InequalityCorpus) -> np.ndarray:
    """Brute-force verdict of every corpus inequality in ``A``, in
    :meth:`InequalityCorpus.pairs` order.

    All ``|A|^k`` assignments of the corpus variables are tabulated once;
    each word becomes a value vector and each inequality is a single
    vectorized comparison.
    """
    n, k = A.size, len(corpus.names)
    grid = np.indices((n,) * k).reshape(k, -1)
    col = dict(zip(corpus.names, grid))
    values = np.empty((len(corpus.words), grid.shape[1]), dtype=np.intp)
    for i, w in enumerate(corpus.words):
        letters = [name for name, e in w.items for _ in range(e)]
        acc = col[letters[0]]
        for name in letters[1:]:
            acc = A.mul[acc, col[name]]
        values[i] = acc
    out = np.empty(len(corpus), dtype=bool)
    cache: dict[tuple[int, ...], np.ndarray] = {}
    for j, (q, u) in enumerate(corpus.pairs()):
        uv = cache.get(u)
        if uv is None:
            uv = values[u[0]]
            for i in u[1:]:
                uv = A.add[uv, values[i]]
            cache = {u: uv}
        out[j] = np.array_equal(A.add[values[q], uv], uv)
    return out
