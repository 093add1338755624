"""The specific algebras: SR6, flat semirings S_c(W), D2 and zero extensions."""

from __future__ import annotations

import string
from typing import Iterable, Union

from .algebra import FiniteAiSemiring, adjoin_zero, trivial
from .terms import Word, divisors, format_word, word_divides

# Cayley tables of SR6 in its 1..6 labels; sr6() shifts them to 0..5.
_SR6_ADD = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 1, 1, 2, 1],
    [1, 1, 3, 1, 1, 1],
    [1, 1, 1, 4, 1, 4],
    [1, 2, 1, 1, 5, 1],
    [1, 1, 1, 4, 1, 6],
]
_SR6_MUL = [
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 3],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 3, 1],
    [1, 1, 1, 3, 1, 3],
    [1, 3, 1, 1, 3, 1],
]

SR6_LABEL_OFFSET = 1


def sr6() -> FiniteAiSemiring:
    add = [[v - SR6_LABEL_OFFSET for v in row] for row in _SR6_ADD]
    mul = [[v - SR6_LABEL_OFFSET for v in row] for row in _SR6_MUL]
    return FiniteAiSemiring(add, mul, "SR6", [str(i + SR6_LABEL_OFFSET) for i in range(6)])


def _as_word(w: Union[Word, str]) -> Word:
    if isinstance(w, Word):
        return w
    if not w or any(ch not in string.ascii_letters for ch in w):
        raise ValueError(f"flat words are written as letter strings, got {w!r}")
    return Word.of(*w)


def flat(words: Iterable[Union[Word, str]], name: str = "") -> FiniteAiSemiring:
    """S_c(W): nonempty subwords of W plus an absorbing top 0."""
    W = {_as_word(w) for w in words}
    if not W:
        raise ValueError("a flat semiring needs a nonempty word set")
    alphabet = set().union(*(w.content for w in W))
    if len(alphabet) > 26:
        raise ValueError("flat semirings are limited to 26 letters")
    carrier = sorted({d for w in W for d in divisors(w)}, key=Word.sort_key)
    n = len(carrier)
    zero = n
    pos = {w: i for i, w in enumerate(carrier)}
    add = [[zero] * (n + 1) for _ in range(n + 1)]
    mul = [[zero] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        add[i][i] = i
    for i, u in enumerate(carrier):
        for j, v in enumerate(carrier):
            mul[i][j] = pos.get(u * v, zero)
    labels = [format_word(w, sep="") for w in carrier] + ["0"]
    if not name:
        name = "Sc(" + ",".join(format_word(w, sep="") for w in sorted(W, key=Word.sort_key)) + ")"
    return FiniteAiSemiring(add, mul, name, labels)


def d2() -> FiniteAiSemiring:
    return adjoin_zero(trivial(), "D2")


def sca() -> FiniteAiSemiring:
    return flat(["a"], "Sc(a)")


def scab() -> FiniteAiSemiring:
    return flat(["ab"], "Sc(ab)")


def scabc() -> FiniteAiSemiring:
    return flat(["abc"], "Sc(abc)")


def scab0() -> FiniteAiSemiring:
    return adjoin_zero(scab(), "Sc(ab)^0")


CATALOG_NAMES = ("SR6", "D2", "T", "Sc:a", "Sc:ab", "Sc:abc", "Sc:ab0")


def by_name(name: str) -> FiniteAiSemiring:
    """Catalog lookup: SR6, D2, T, Sc:<w1,w2,...> with an optional trailing 0."""
    if name == "SR6":
        return sr6()
    if name == "D2":
        return d2()
    if name == "T":
        return trivial()
    if name.startswith("Sc:"):
        body = name[3:]
        zero = body.endswith("0")
        if zero:
            body = body[:-1]
        words = [w.strip() for w in body.split(",") if w.strip()]
        A = flat(words)
        return adjoin_zero(A, A.name + "^0") if zero else A
    raise KeyError(f"unknown algebra {name!r}; expected one of {', '.join(CATALOG_NAMES)} or Sc:<words>")


def flat_element(A: FiniteAiSemiring, w: Union[Word, str]) -> int:
    """Index of a subword in a flat semiring built by :func:`flat`."""
    return A.element(format_word(_as_word(w), sep=""))


__all__ = [
    "sr6", "flat", "d2", "sca", "scab", "scabc", "scab0", "by_name", "flat_element",
    "CATALOG_NAMES", "SR6_LABEL_OFFSET", "word_divides",
]
