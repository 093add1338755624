"""Checking and searching equational derivations.

A derivation step rewrites ``t = p·φ(s) + r`` into ``p·φ(s') + r`` where
``s ≈ s'`` (or ``s' ≈ s``) is a basis member.  An inequality ``q ⪯ u``
in a basis is used as the identity ``u ≈ u + q`` it abbreviates.
Contexts are single words or the empty word; see :mod:`aisr.freeness`
for why that loses nothing.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .families import NamedBasis, is_label, named, parse_basis
from .freeness import SearchBoundExceeded, iter_instances
from .terms import (
    EMPTY_WORD,
    Identity,
    Inequality,
    Statement,
    Substitution,
    Term,
    UndefinedVariableError,
    Word,
    WordOrEmpty,
    format_term,
    format_word,
    parse_statement,
    parse_term,
    parse_word,
    var_key,
)

FWD, BWD = "fwd", "bwd"


class StepError(ValueError):
    def __init__(self, message: str, index: Optional[int] = None):
        self.index = index
        where = f"step {index}: " if index is not None else ""
        super().__init__(where + message)


Rule = Union[str, Statement]


@dataclass(frozen=True)
class Step:
    rule: Rule
    direction: str = FWD
    substitution: Substitution = field(default_factory=Substitution)
    context: WordOrEmpty = EMPTY_WORD
    remainder: frozenset = frozenset()

    def __post_init__(self):
        if self.direction not in (FWD, BWD):
            raise ValueError(f"direction must be {FWD!r} or {BWD!r}")
        object.__setattr__(self, "remainder", frozenset(self.remainder))


def resolve(basis: NamedBasis, rule: Rule) -> tuple[str, Statement]:
    if isinstance(rule, str):
        try:
            return rule, basis[rule]
        except KeyError:
            raise StepError(f"rule {rule!r} is not in basis {basis.tag}") from None
    return str(rule), rule


def _sides(stmt: Statement, direction: str) -> tuple[Term, Term]:
    ident = stmt.as_identity()
    s, s2 = ident.lhs, ident.rhs
    return (s, s2) if direction == FWD else (s2, s)


def check_step(basis: NamedBasis, t: Term, step: Step) -> Term:
    """Verify ``t = p·φ(s) + r`` exactly and return ``p·φ(s') + r``."""
    label, stmt = resolve(basis, step.rule)
    s, s2 = _sides(stmt, step.direction)
    try:
        before = step.context * step.substitution(s)
        after = step.context * step.substitution(s2)
    except UndefinedVariableError as exc:
        raise StepError(f"substitution for {label} has no image for {exc.name}") from None
    expected = before.word_set | step.remainder
    if expected != t.word_set:
        raise StepError(
            f"{label} ({step.direction}) expects {format_term(expected)} "
            f"= {format_word(step.context)}·({format_term(before)}) + "
            f"[{format_term(step.remainder) if step.remainder else ''}], "
            f"but the term is {format_term(t)}"
        )
    return Term(after.word_set | step.remainder)


@dataclass(frozen=True)
class ProofScript:
    basis: NamedBasis
    start: Term
    steps: tuple[Step, ...]

    def replay(self) -> list[Term]:
        terms = [self.start]
        for i, step in enumerate(self.steps):
            try:
                terms.append(check_step(self.basis, terms[-1], step))
            except StepError as exc:
                raise StepError(str(exc), i) from None
        return terms


def check_proof(script: ProofScript, goal: Statement) -> bool:
    """Replay the script; True iff it runs from ``goal.lhs`` to ``goal.rhs``.

    Inequality goals ``q ⪯ u`` are read as ``u ≈ u + q``.  A step that does
    not match raises :class:`StepError` carrying the step index.
    """
    ident = goal.as_identity()
    if script.start != ident.lhs:
        return False
    return script.replay()[-1] == ident.rhs


# -- ⪰ chains ----------------------------------------------------------------


@dataclass(frozen=True)
class Drop:
    """``t ⪰ t'`` for ``t' ⊆ t``."""


@dataclass(frozen=True)
class Same:
    """The two terms are equal."""


@dataclass(frozen=True)
class Rewrite:
    """An equational step, as in a proof script."""

    step: Step


@dataclass(frozen=True)
class Apply:
    """``p·φ(u) + r ⪰ p·φ(q) + r`` from a basis inequality ``q ⪯ u``."""

    rule: Rule
    substitution: Substitution
    context: WordOrEmpty = EMPTY_WORD
    remainder: frozenset = frozenset()


Justification = Union[Drop, Same, Rewrite, Apply]


@dataclass(frozen=True)
class LeqChain:
    """``links[0]`` ⪰ ``links[1]`` ⪰ ...; the first justification is ignored."""

    basis: NamedBasis
    links: tuple[tuple[Term, Optional[Justification]], ...]
    note: str = ""

    @property
    def top(self) -> Term:
        return self.links[0][0]

    @property
    def bottom(self) -> Term:
        return self.links[-1][0]

    def proves(self, goal: Inequality) -> bool:
        return bool(check_leq_chain(self)) and self.top == goal.rhs and self.bottom == Term((goal.lhs,))


@dataclass(frozen=True)
class ChainCheck:
    ok: bool
    index: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _check_link(basis: NamedBasis, t: Term, nxt: Term, just: Justification) -> Optional[str]:
    if isinstance(just, Same):
        return None if t == nxt else "terms differ"
    if isinstance(just, Drop):
        return None if nxt.word_set <= t.word_set else "dropped term is not a subset"
    if isinstance(just, Rewrite):
        try:
            got = check_step(basis, t, just.step)
        except StepError as exc:
            return str(exc)
        return None if got == nxt else f"rewrite gives {format_term(got)}"
    if isinstance(just, Apply):
        try:
            label, stmt = resolve(basis, just.rule)
        except StepError as exc:
            return str(exc)
        if not isinstance(stmt, Inequality):
            return f"{label} is an identity; use a rewrite"
        try:
            big = just.context * just.substitution(stmt.rhs)
            small = just.context * just.substitution(stmt.lhs)
        except UndefinedVariableError as exc:
            return f"substitution for {label} has no image for {exc.name}"
        if big.word_set | just.remainder != t.word_set:
            return f"{label} needs {format_term(big.word_set | just.remainder)} on the larger side"
        want = small.word_set | just.remainder
        if want != nxt.word_set:
            return f"{label} yields {format_term(want)}"
        return None
    return f"unknown justification {just!r}"


def check_leq_chain(chain: LeqChain) -> ChainCheck:
    for i in range(1, len(chain.links)):
        t, _ = chain.links[i - 1]
        nxt, just = chain.links[i]
        err = _check_link(chain.basis, t, nxt, just)
        if err is not None:
            return ChainCheck(False, i, f"link {i}: {format_term(t)}  ⪰  {format_term(nxt)}: {err}")
    return ChainCheck(True)


# -- bounded search ----------------------------------------------------------


def _fresh_pool(goal: Inequality) -> list[Term]:
    atoms = {Word.var(x) for x in goal.content} | {goal.lhs} | set(goal.rhs.words)
    return [Term((a,)) for a in sorted(atoms, key=Word.sort_key)]


def successors(basis: NamedBasis, t: Term, pool: Sequence[Term], cap: int = 10**5):
    """One-step rewrites of ``t``: (step, result) pairs.

    The remainder is either the untouched part of ``t`` or all of ``t``;
    variables of the new side that the matched side does not bind take
    images from ``pool``.
    """
    import itertools

    for label, stmt in basis:
        for direction in (FWD, BWD):
            s, s2 = _sides(stmt, direction)
            free = sorted(s2.content - s.content, key=var_key)
            try:
                witnesses = list(iter_instances(s, t, cap))
            except SearchBoundExceeded:
                continue
            for wit in witnesses:
                matched = (wit.context * wit.substitution(s)).word_set
                rest = t.word_set - matched
                for imgs in itertools.product(pool, repeat=len(free)):
                    phi = wit.substitution.extended(dict(zip(free, imgs)))
                    for rem in {rest, t.word_set}:
                        step = Step(label, direction, phi, wit.context, rem)
                        yield step, Term((wit.context * phi(s2)).word_set | rem)


def search_derivation(
    basis: NamedBasis,
    goal: Inequality,
    depth: int = 4,
    size_bound: Optional[int] = None,
) -> Optional[ProofScript]:
    """Breadth-first search for a script turning ``u`` into ``u + q``.

    None means nothing was found within the bounds, not that the goal is
    underivable.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    start = goal.rhs
    target = goal.rhs + goal.lhs
    if start == target:
        return ProofScript(basis, start, ())
    size_bound = size_bound or 3 * len(target)
    pool = _fresh_pool(goal)
    seen = {start}
    frontier = deque([(start, ())])
    while frontier:
        t, steps = frontier.popleft()
        if len(steps) >= depth:
            continue
        for step, nxt in successors(basis, t, pool):
            if nxt in seen or len(nxt) > size_bound:
                continue
            path = steps + (step,)
            if nxt == target:
                return ProofScript(basis, start, path)
            seen.add(nxt)
            frontier.append((nxt, path))
    return None


# -- JSON --------------------------------------------------------------------


def _rule_from_json(text: str, basis: NamedBasis) -> Rule:
    if text in basis:
        return text
    if is_label(text):
        return named(text)
    return parse_statement(text)


def step_from_json(doc: dict, basis: NamedBasis) -> Step:
    ctx = doc.get("context")
    return Step(
        _rule_from_json(doc["rule"], basis),
        doc.get("dir", FWD),
        Substitution({k: parse_term(v) for k, v in doc.get("subst", {}).items()}),
        EMPTY_WORD if ctx in (None, "", "1") else parse_word(ctx),
        frozenset(parse_word(w) for w in doc.get("remainder", [])),
    )


def script_from_json(doc: Union[dict, str]) -> tuple[ProofScript, Optional[Statement]]:
    if isinstance(doc, str):
        doc = json.loads(doc)
    basis = parse_basis(doc["basis"], doc.get("sigma_bound", 4))
    steps = tuple(step_from_json(s, basis) for s in doc.get("steps", []))
    goal = doc.get("goal")
    if goal is not None:
        goal = named(goal) if is_label(goal) else parse_statement(goal)
    return ProofScript(basis, parse_term(doc["start"]), steps), goal


def step_to_json(step: Step) -> dict:
    return {
        "rule": step.rule if isinstance(step.rule, str) else str(step.rule),
        "dir": step.direction,
        "subst": {k: format_term(v) for k, v in sorted(step.substitution.images.items(), key=lambda kv: var_key(kv[0]))},
        "context": None if step.context is EMPTY_WORD else format_word(step.context),
        "remainder": [format_word(w) for w in sorted(step.remainder, key=Word.sort_key)],
    }


def script_to_json(script: ProofScript, goal: Optional[Statement] = None) -> dict:
    doc = {
        "basis": script.basis.tag if script.basis.tag != "inline" else {lab: str(s) for lab, s in script.basis},
        "start": format_term(script.start),
        "steps": [step_to_json(s) for s in script.steps],
    }
    if script.basis.sigma_bound:
        doc["sigma_bound"] = script.basis.sigma_bound
    if goal is not None:
        doc["goal"] = str(goal)
    return doc
