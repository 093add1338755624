"""Commutative words, terms and the statement forms built from them.

A word is a nonempty monomial over named variables, stored as a sorted
tuple of ``(name, exponent)`` pairs.  A term is a nonempty finite set of
words, written as a formal sum.  Both are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union


class TermError(ValueError):
    pass


class EmptyTermError(TermError):
    pass


class ParseError(TermError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        where = f" at position {position}" if text else ""
        super().__init__(f"{message}{where}")


class UndefinedVariableError(LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no image for variable {name!r}")


_DIGITS = re.compile(r"(\d+)")


def var_key(name: str) -> tuple:
    """Natural sort key: ``x2`` sorts before ``x10``."""
    parts = _DIGITS.split(name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


class VarTable:
    """Interns variable names to small integer ids.

    Ids are handed out in order of first use.  Canonical orderings elsewhere
    use :func:`var_key` on the names, so output does not depend on the
    interning order.
    """

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._names: list[str] = []

    def intern(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            self._ids[name] = len(self._names)
            self._names.append(name)
            return self._ids[name]

    def name(self, var_id: int) -> str:
        return self._names[var_id]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids


VARIABLES = VarTable()


class Word:
    """A nonempty element of the free commutative semigroup."""

    __slots__ = ("items", "_hash", "length", "_key")

    def __init__(self, exponents: Union[Mapping[str, int], Iterable[tuple[str, int]]]):
        pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[str, int] = {}
        for name, e in pairs:
            if e < 0:
                raise TermError(f"negative exponent for {name}")
            if e:
                merged[name] = merged.get(name, 0) + e
        if not merged:
            raise EmptyTermError("a word needs at least one variable")
        for name in merged:
            VARIABLES.intern(name)
        self.items: tuple[tuple[str, int], ...] = tuple(
            sorted(merged.items(), key=lambda kv: var_key(kv[0]))
        )
        self.length = sum(merged.values())
        self._hash = hash(self.items)
        self._key = None

    @classmethod
    def var(cls, name: str) -> "Word":
        return cls(((name, 1),))

    @classmethod
    def of(cls, *names: str) -> "Word":
        """``Word.of("x", "x", "y")`` is x²y."""
        return cls((n, 1) for n in names)

    @property
    def content(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.items)

    @property
    def is_linear(self) -> bool:
        return all(e == 1 for _, e in self.items)

    def exponent(self, name: str) -> int:
        for n, e in self.items:
            if n == name:
                return e
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def sort_key(self) -> tuple:
        # length first, then lexicographic on the expanded variable sequence
        if self._key is None:
            seq = tuple(var_key(n) for n, e in self.items for _ in range(e))
            self._key = (self.length, seq)
        return self._key

    def __mul__(self, other):
        if other is EMPTY_WORD:
            return self
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.items + other.items)

    def __rmul__(self, other):
        if other is EMPTY_WORD:
            return self
        return NotImplemented

    def __pow__(self, k: int) -> "Word":
        if k < 1:
            raise TermError("words only have positive powers")
        return Word((n, e * k) for n, e in self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


class _EmptyWord:
    """The multiplicative identity, used only as a context marker."""

    __slots__ = ()
    length = 0
    items = ()
    content = frozenset()

    def __mul__(self, other):
        return other

    __rmul__ = __mul__

    def sort_key(self) -> tuple:
        return (0, ())

    def __repr__(self) -> str:
        return "EMPTY_WORD"

    def __str__(self) -> str:
        return "1"

    def __reduce__(self):
        return "EMPTY_WORD"


EMPTY_WORD = _EmptyWord()

WordOrEmpty = Union[Word, _EmptyWord]


class Term:
    """A nonempty finite set of words, kept in length-lexicographic order."""

    __slots__ = ("words", "_set", "_hash")

    def __init__(self, words: Iterable[Word]):
        s = frozenset(words)
        if not s:
            raise EmptyTermError("a term needs at least one word")
        self._set = s
        self.words: tuple[Word, ...] = tuple(sorted(s, key=Word.sort_key))
        self._hash = hash(s)

    @classmethod
    def of(cls, *words: Union[Word, str]) -> "Term":
        return cls(Word.var(w) if isinstance(w, str) else w for w in words)

    @property
    def word_set(self) -> frozenset[Word]:
        return self._set

    @property
    def content(self) -> frozenset[str]:
        return frozenset().union(*(w.content for w in self.words))

    def layer(self, k: int) -> frozenset[Word]:
        return frozenset(w for w in self.words if w.length == k)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w) -> bool:
        return w in self._set

    def __add__(self, other):
        if isinstance(other, Word):
            return Term(self._set | {other})
        if isinstance(other, Term):
            return Term(self._set | other._set)
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if other is EMPTY_WORD:
            return self
        if isinstance(other, Word):
            return Term(w * other for w in self.words)
        if isinstance(other, Term):
            return Term(a * b for a in self.words for b in other.words)
        return NotImplemented

    def __rmul__(self, other):
        if other is EMPTY_WORD or isinstance(other, Word):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Term":
        if k < 1:
            raise TermError("terms only have positive powers")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __le__(self, other: "Term") -> bool:
        return self._set <= other._set

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self._set == other._set

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Term({format_term(self)!r})"

    def __str__(self) -> str:
        return format_term(self)


# -- arithmetic --------------------------------------------------------------


def word_mul(a: Word, b: Word) -> Word:
    return a * b


def word_divides(p: Word, w: Word):
    """Return ``w / p``, :data:`EMPTY_WORD` when ``p == w``, or None."""
    rest = dict(w.items)
    for name, e in p.items:
        have = rest.get(name, 0)
        if have < e:
            return None
        rest[name] = have - e
    rest = {n: e for n, e in rest.items() if e}
    return Word(rest) if rest else EMPTY_WORD


def divisors(w: Word) -> list[Word]:
    """All nonempty divisors of ``w``, including ``w`` itself."""
    out: list[dict[str, int]] = [{}]
    for name, e in w.items:
        out = [dict(d, **{name: k}) if k else d for d in out for k in range(e + 1)]
    return [Word(d) for d in out if d]


def term_add(s: Term, t: Term) -> Term:
    return s + t


def term_mul(s: Term, t: Term) -> Term:
    return s * t


def content(t: Union[Term, Word]) -> frozenset[str]:
    return t.content


def layer(t: Term, k: int) -> frozenset[Word]:
    if k < 1:
        raise ValueError("layer index must be positive")
    return t.layer(k)


def as_term(x: Union[Term, Word, Iterable[Word]]) -> Term:
    if isinstance(x, Term):
        return x
    if isinstance(x, Word):
        return Term((x,))
    return Term(x)


# -- substitutions -----------------------------------------------------------


class Substitution:
    """A map from variables to terms, extended homomorphically."""

    __slots__ = ("images",)

    def __init__(self, images: Mapping[str, Union[Term, Word, str]] = ()):
        self.images: dict[str, Term] = {}
        for name, img in dict(images).items():
            if isinstance(img, str):
                img = parse_term(img)
            self.images[name] = as_term(img)

    @classmethod
    def identity(cls, names: Iterable[str]) -> "Substitution":
        return cls({n: Term.of(n) for n in names})

    def __getitem__(self, name: str) -> Term:
        try:
            return self.images[name]
        except KeyError:
            raise UndefinedVariableError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.images

    def word(self, w: WordOrEmpty):
        """Image of a single word (the empty word maps to itself)."""
        if w is EMPTY_WORD:
            return EMPTY_WORD
        out = None
        for name, e in w.items:
            img = self[name] ** e
            out = img if out is None else out * img
        return out

    def __call__(self, t: Union[Term, Word]) -> Term:
        if isinstance(t, Word):
            return self.word(t)
        words: set[Word] = set()
        for w in t.words:
            words |= self.word(w).word_set
        return Term(words)

    def extended(self, more: Mapping[str, Union[Term, Word]]) -> "Substitution":
        return Substitution({**self.images, **more})

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self.images == other.images

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {v}" for k, v in sorted(self.images.items(), key=lambda kv: var_key(kv[0])))
        return f"Substitution({{{inner}}})"


def apply_subst(sigma: Substitution, t: Term) -> Term:
    return sigma(t)


# -- statements --------------------------------------------------------------


@dataclass(frozen=True)
class Inequality:
    """``lhs ⪯ rhs`` for a word ``lhs``: shorthand for ``rhs ≈ rhs + lhs``."""

    lhs: Word
    rhs: Term

    @property
    def is_trivial(self) -> bool:
        return self.lhs in self.rhs

    @property
    def content(self) -> frozenset[str]:
        return self.lhs.content | self.rhs.content

    def as_identity(self) -> "Identity":
        return Identity(self.rhs, self.rhs + self.lhs)

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} <= {format_term(self.rhs)}"


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @property
    def content(self) -> frozenset[str]:
        return self.lhs.content | self.rhs.content

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def as_identity(self) -> "Identity":
        return self

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


Statement = Union[Inequality, Identity]


def split_identity(identity: Statement) -> list[Inequality]:
    """Reduce an identity to word-on-the-left inequalities.

    ``u ≈ v`` holds iff every ``u_i ⪯ v`` and every ``v_j ⪯ u`` holds.
    An inequality is returned as a one-element list.
    """
    if isinstance(identity, Inequality):
        return [identity]
    u, v = identity.lhs, identity.rhs
    out = [Inequality(w, v) for w in u.words]
    out += [Inequality(w, u) for w in v.words if Inequality(w, u) not in out]
    return out


# -- text I/O ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>\^|\*|\+))"
)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse_word(text: str) -> Word:
    t = parse_term(text)
    if len(t) != 1:
        raise ParseError("expected a single word", text, 0)
    return t.words[0]


def parse_term(text: str) -> Term:
    toks = _tokens(text)
    if not toks:
        raise EmptyTermError("empty term")
    words: list[Word] = []
    i = 0

    def expect_ident(i):
        if i >= len(toks):
            raise ParseError("expected a variable", text, len(text))
        kind, val, pos = toks[i]
        if kind != "ident":
            raise ParseError(f"expected a variable, got {val!r}", text, pos)
        return val

    while True:
        factors: list[tuple[str, int]] = []
        while True:
            name = expect_ident(i)
            i += 1
            e = 1
            if i < len(toks) and toks[i][1] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "int":
                    pos = toks[i + 1][2] if i + 1 < len(toks) else len(text)
                    raise ParseError("expected a positive exponent", text, pos)
                e = int(toks[i + 1][1])
                if e < 1:
                    raise ParseError("exponent must be positive", text, toks[i + 1][2])
                i += 2
            factors.append((name, e))
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                continue
            if i < len(toks) and toks[i][0] == "ident":
                continue
            break
        words.append(Word(factors))
        if i == len(toks):
            break
        kind, val, pos = toks[i]
        if val != "+":
            raise ParseError(f"unexpected {val!r}", text, pos)
        i += 1
    return Term(words)


def format_word(w: WordOrEmpty, sep: str = "*") -> str:
    if w is EMPTY_WORD:
        return "1"
    return sep.join(n if e == 1 else f"{n}^{e}" for n, e in w.items)


def format_term(t: Union[Term, Iterable[Word]]) -> str:
    words = t.words if isinstance(t, Term) else sorted(t, key=Word.sort_key)
    return " + ".join(format_word(w) for w in words)


_RELATIONS = [("<=", "le"), ("⪯", "le"), (">=", "ge"), ("⪰", "ge"), ("≈", "eq"), ("=", "eq")]


def parse_statement(text: str) -> Statement:
    """Parse ``q <= u``, ``u >= q`` or ``u = v`` (also ``⪯``, ``⪰``, ``≈``).

    A ``<=`` whose smaller side has several words becomes the identity
    ``v ≈ v + u`` it abbreviates.
    """
    for sym, rel in _RELATIONS:
        idx = text.find(sym)
        if idx < 0:
            continue
        left, right = text[:idx], text[idx + len(sym):]
        if any(s in right for s, _ in _RELATIONS if s != "="):
            raise ParseError("more than one relation symbol", text, idx)
        try:
            a = parse_term(left)
        except EmptyTermError:
            raise ParseError("missing left-hand side", text, 0) from None
        try:
            b = parse_term(right)
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, idx + len(sym) + exc.position) from None
        except EmptyTermError:
            raise ParseError("missing right-hand side", text, len(text)) from None
        if rel == "eq":
            return Identity(a, b)
        small, big = (a, b) if rel == "le" else (b, a)
        if len(small) == 1:
            return Inequality(small.words[0], big)
        return Identity(big, big + small)
    raise ParseError("no relation symbol (<=, >=, =) found", text, 0)


def format_statement(s: Statement) -> str:
    return str(s)
