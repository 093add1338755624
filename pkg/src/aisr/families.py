"""Named identities, the cycle/path inequality families, and the bases built from them."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .terms import Inequality, Identity, Statement, Term, Word, parse_statement


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"family index must be a positive integer, got {n!r}")


def _x(i: int) -> str:
    return f"x{i}"


def q_n(n: int) -> Word:
    """The linear word x1·x2···x_{2n+1}."""
    _check_n(n)
    return Word.of(*(_x(i) for i in range(1, 2 * n + 2)))


def u_n(n: int) -> Term:
    """The odd cycle x1x2 + x2x3 + ... + x_{2n+1}x1."""
    _check_n(n)
    k = 2 * n + 1
    return Term(Word.of(_x(i), _x(i % k + 1)) for i in range(1, k + 1))


def path_term(n: int) -> Term:
    """x1x2 + x2x3 + ... + x_{2n+1}x_{2n+2}, the path with 2n+1 edges."""
    _check_n(n)
    return Term(Word.of(_x(i), _x(i + 1)) for i in range(1, 2 * n + 2))


def sigma(n: int) -> Inequality:
    return Inequality(q_n(n), u_n(n))


def delta(n: int) -> Inequality:
    _check_n(n)
    return Inequality(Word.of(_x(1), _x(2 * n + 2)), path_term(n))


_NAMED_TEXT = {
    "SR02": "x^3 = x^2",
    "SR03": "x^2 = x + x*y",
    "SR04": "x1 <= x2*x3*x4",
    "SR06": "y <= x^2",
    "I26022301": "x1*x4 <= x1*x2 + x2*x3 + x3*x4",
    "ScabD201": "x1*x5 <= x1 + x2*x3*x4",
    "ab01": "x <= x^2",
    "ab02": "x*y*z*t <= x*y*z",
    "ab03": "x^2*y^2 <= x + x*y",
    "t01": "x^2 = x*y",
}

FIXED_LABELS = tuple(_NAMED_TEXT)

_FAMILY = re.compile(r"^(sigma|delta):(\d+)$")


def named(label: str) -> Statement:
    """Look up a named identity or a family member such as ``sigma:3``."""
    if label in _NAMED_TEXT:
        return parse_statement(_NAMED_TEXT[label])
    m = _FAMILY.match(label)
    if m:
        n = int(m.group(2))
        return sigma(n) if m.group(1) == "sigma" else delta(n)
    raise KeyError(f"unknown identity label {label!r}")


def is_label(text: str) -> bool:
    return text in _NAMED_TEXT or bool(_FAMILY.match(text))


@dataclass(frozen=True)
class NamedBasis:
    """A finite prefix of an equational basis, keyed by label."""

    tag: str
    members: tuple[tuple[str, Statement], ...]
    sigma_bound: int = 0
    derived: tuple[str, ...] = field(default=())

    def __post_init__(self):
        labels = [lab for lab, _ in self.members]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in basis {self.tag}")

    def __getitem__(self, label: str) -> Statement:
        for lab, stmt in self.members:
            if lab == label:
                return stmt
        raise KeyError(f"{label!r} is not in basis {self.tag}")

    def __contains__(self, label: str) -> bool:
        return any(lab == label for lab, _ in self.members)

    def __iter__(self) -> Iterator[tuple[str, Statement]]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.members]

    def extended(self, extra: Iterable[tuple[str, Statement]]) -> "NamedBasis":
        """Add derived members (e.g. ``delta:2`` once it has been proved)."""
        extra = tuple(extra)
        return NamedBasis(
            self.tag,
            self.members + extra,
            self.sigma_bound,
            self.derived + tuple(lab for lab, _ in extra),
        )

    def non_family_inequalities(self) -> list[tuple[str, Inequality]]:
        """Members outside the σ family, split into word inequalities."""
        from .terms import split_identity

        out = []
        for lab, stmt in self.members:
            if lab.startswith("sigma:"):
                continue
            for ineq in split_identity(stmt):
                out.append((lab, ineq))
        return out


BASIS_TAGS = ("SR6", "Scab", "ScabD2", "Scab0", "Sca")

_FIXED_PART = {
    "SR6": ("SR02", "SR03", "SR04"),
    "Scab": ("SR02", "SR03", "SR04", "I26022301"),
    "ScabD2": ("SR02", "SR03", "ScabD201"),
    "Scab0": ("SR02", "ab01", "ab02", "ab03"),
    "Sca": ("SR02", "SR03", "SR04", "t01"),
}


def basis(tag: str, sigma_bound: int = 4) -> NamedBasis:
    if tag not in _FIXED_PART:
        raise KeyError(f"unknown basis tag {tag!r}; expected one of {', '.join(BASIS_TAGS)}")
    _check_n(sigma_bound)
    members = [(lab, named(lab)) for lab in _FIXED_PART[tag]]
    if tag != "Scab":
        members += [(f"sigma:{n}", sigma(n)) for n in range(1, sigma_bound + 1)]
    return NamedBasis(tag, tuple(members), sigma_bound if tag != "Scab" else 0)


def parse_basis(source, sigma_bound: int = 4) -> NamedBasis:
    """A tag, or an inline ``{label: statement text}`` mapping."""
    if isinstance(source, str):
        return basis(source, sigma_bound)
    members = []
    for lab, text in dict(source).items():
        members.append((lab, named(text) if is_label(text) else parse_statement(text)))
    return NamedBasis("inline", tuple(members))
