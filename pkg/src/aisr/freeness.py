"""Subterm and substitution-instance search.

``u`` is a subterm of ``v`` when ``v = p·u + r`` for a context ``p``
(a term, or the empty word) and a remainder ``r`` (a term, or empty).
``v`` is ``u``-free when no substitution instance of ``u`` is a subterm.

Single-word contexts are enough.  If ``v = P·u' + r`` with ``P`` a term,
pick any word ``p1`` of ``P``: then ``p1·u' ⊆ P·u' ⊆ v``, so
``v = p1·u' + (v ∖ p1·u')``.  Conversely a word context is a term
context.  So subterm-ness is decided by the word contexts ``p`` with
``p·u' ⊆ v`` and it suffices to search those.

Every image ``φ(x)`` of a witness consists of words ``a`` with
``p·a·(cofactor) ∈ v``, i.e. nonempty divisors of words of ``v``; and
since multiplying by a fixed word is injective, ``|φ(x)| ≤ |v|``.  The
search below is therefore finite and complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .terms import (
    EMPTY_WORD,
    Substitution,
    Term,
    Word,
    WordOrEmpty,
    divisors,
    var_key,
    word_divides,
)

DEFAULT_CAP = 10**7


class SearchBoundExceeded(RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"instance search gave up after {cap} candidates")


@dataclass(frozen=True)
class SubtermWitness:
    context: WordOrEmpty
    substitution: Substitution
    remainder: frozenset[Word]

    def instance(self, pattern: Term) -> Term:
        return self.context * self.substitution(pattern)

    def reconstruct(self, pattern: Term) -> Term:
        return Term(self.instance(pattern).word_set | self.remainder)

    def describe(self, pattern: Term) -> str:
        from .terms import format_term, format_word

        lines = [f"context   : {format_word(self.context)}"]
        for name in sorted(pattern.content, key=var_key):
            lines.append(f"  {name} -> {format_term(self.substitution[name])}")
        rem = format_term(self.remainder) if self.remainder else "(empty)"
        lines.append(f"remainder : {rem}")
        return "\n".join(lines)


def _contexts(v: Term) -> list[WordOrEmpty]:
    """The empty word, then every proper divisor of a word of ``v``."""
    found = set()
    for w in v.words:
        for d in divisors(w):
            if d != w:
                found.add(d)
    return [EMPTY_WORD] + sorted(found, key=Word.sort_key)


def is_subterm(u: Term, v: Term) -> Optional[SubtermWitness]:
    """Witness ``(p, identity, v ∖ p·u)`` if ``u`` is a subterm of ``v``."""
    vs = v.word_set
    ident = Substitution.identity(u.content)
    first = u.words[0]
    tried = set()
    for w in v.words:
        p = word_divides(first, w)
        if p is None or p in tried:
            continue
        tried.add(p)
        inst = (p * u).word_set
        if inst <= vs:
            return SubtermWitness(p, ident, vs - inst)
    return None


class _Search:
    def __init__(self, u: Term, v: Term, cap: int):
        self.u = u
        self.v = v
        self.vs = v.word_set
        self.cap = cap
        self.count = 0
        self.all_div = set()
        # longest cofactor each divisor leaves inside some word of v
        self.room: dict[Word, int] = {}
        for w in v.words:
            for d in divisors(w):
                self.all_div.add(d)
                self.room[d] = max(self.room.get(d, 0), w.length - d.length)
        self.max_len = max(w.length for w in v.words)
        self.atoms = sorted(self.all_div, key=Word.sort_key)
        self.order = self._variable_order()
        self.words_of = {x: [w for w in u.words if x in w.content] for x in self.order}

    def _variable_order(self) -> list[str]:
        remaining = set(self.u.content)
        order: list[str] = []
        while remaining:
            def score(x):
                linked = sum(1 for w in self.u.words if x in w.content and w.content & set(order))
                closes = sum(1 for w in self.u.words if x in w.content and w.content - {x} <= set(order))
                occurs = sum(1 for w in self.u.words if x in w.content)
                return (-closes, -linked, -occurs, var_key(x))

            x = min(remaining, key=score)
            order.append(x)
            remaining.remove(x)
        return order

    def _tick(self):
        self.count += 1
        if self.count > self.cap:
            raise SearchBoundExceeded(self.cap)

    def _partial(self, p, w: Word, images: dict) -> tuple[list, int]:
        """Products of the assigned factors of ``p·φ(w)``, and the number of
        variable occurrences of ``w`` still unassigned."""
        prods = [p]
        missing = 0
        for name, e in w.items:
            img = images.get(name)
            if img is None:
                missing += e
                continue
            power = img
            for _ in range(e - 1):
                power = [a * b for a in power for b in img]
            prods = [a * b for a in prods for b in power]
        return prods, missing

    def _ok(self, p, w: Word, images: dict) -> bool:
        prods, missing = self._partial(p, w, images)
        if not missing:
            return all(x in self.vs for x in prods)
        # each unassigned occurrence still contributes at least one letter
        if p is EMPTY_WORD and len(prods) == 1 and prods[0] is EMPTY_WORD:
            return missing <= self.max_len
        return all(self.room.get(x, -1) >= missing for x in prods)

    def feasible(self, p) -> bool:
        """Every variable has at least one admissible atom on its own."""
        for x in self.order:
            if not any(all(self._ok(p, w, {x: [a]}) for w in self.words_of[x]) for a in self.atoms):
                return False
        return True

    def run(self, p) -> Iterator[dict]:
        images: dict[str, list[Word]] = {}

        def assign(i: int):
            if i == len(self.order):
                yield dict(images)
                return
            x = self.order[i]
            allowed = []
            for a in self.atoms:
                images[x] = [a]
                if all(self._ok(p, w, images) for w in self.words_of[x]):
                    allowed.append(a)
            del images[x]
            limit = min(len(allowed), len(self.vs))
            for size in range(1, limit + 1):
                for subset in itertools.combinations(allowed, size):
                    self._tick()
                    images[x] = list(subset)
                    if size == 1 or all(self._ok(p, w, images) for w in self.words_of[x]):
                        yield from assign(i + 1)
                    del images[x]

        yield from assign(0)


def iter_instances(u: Term, v: Term, cap: int = DEFAULT_CAP) -> Iterator[SubtermWitness]:
    """Every ``(p, φ)`` with ``p·φ(u) ⊆ v``, contexts by increasing length."""
    search = _Search(u, v, cap)
    for p in _contexts(v):
        if not search.feasible(p):
            continue
        for images in search.run(p):
            phi = Substitution({x: Term(imgs) for x, imgs in images.items()})
            inst = (p * phi(u)).word_set
            if not inst <= search.vs:
                raise AssertionError("instance search produced a non-instance")
            yield SubtermWitness(p, phi, search.vs - inst)


def instance_subterm(u: Term, v: Term, cap: int = DEFAULT_CAP) -> Optional[SubtermWitness]:
    """A witness that some ``φ(u)`` is a subterm of ``v``, or None."""
    for wit in iter_instances(u, v, cap):
        if wit.reconstruct(u) != v:
            raise AssertionError("witness does not reconstruct the target")
        return wit
    return None


def is_free(v: Term, u: Term, cap: int = DEFAULT_CAP) -> bool:
    """True iff ``v`` is ``u``-free."""
    return instance_subterm(u, v, cap) is None
