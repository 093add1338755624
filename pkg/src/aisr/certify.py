"""Build checkable ⪰-chains for inequalities, following the same case split as
the syntactic deciders.

``certify(tag, q, u)`` returns a :class:`~aisr.proof.LeqChain` from ``u``
down to ``q`` using only the members of ``basis(tag)`` (plus δ_k members
for S_c(ab), which :func:`delta_chain` derives from δ_1), or raises
:class:`NotCertifiable` when the decider says the inequality fails.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .characterize import decide_d2, decide_scab, dq_filter
from .families import NamedBasis, basis, delta, sigma
from .graph import build, odd_cycle
from .proof import BWD, FWD, Apply, Drop, LeqChain, Rewrite, Step, check_step
from .terms import EMPTY_WORD, Inequality, Substitution, Term, Word, word_divides


class NotCertifiable(ValueError):
    pass


def letters(w: Word) -> list[str]:
    return [name for name, e in w.items for _ in range(e)]


def split3(w: Word) -> tuple[Word, Word, Word]:
    """``w = a·b·c`` with nonempty factors; needs ``ℓ(w) ≥ 3``."""
    xs = letters(w)
    if len(xs) < 3:
        raise ValueError(f"{w} is shorter than 3")
    return Word.of(xs[0]), Word.of(xs[1]), Word.of(*xs[2:])


def _x(i: int) -> str:
    return f"x{i}"


class ChainBuilder:
    """Accumulates links; each method computes the next term."""

    def __init__(self, B: NamedBasis, start: Term, note: str = ""):
        self.B = B
        self.links: list = [(start, None)]
        self.note = note

    @property
    def term(self) -> Term:
        return self.links[-1][0]

    def drop(self, *words: Word) -> "ChainBuilder":
        kept = Term(words)
        if kept != self.term:
            self.links.append((kept, Drop()))
        return self

    def rewrite(self, rule, direction, images: dict, context=EMPTY_WORD, remainder=()) -> "ChainBuilder":
        step = Step(rule, direction, Substitution(images), context, frozenset(remainder))
        self.links.append((check_step(self.B, self.term, step), Rewrite(step)))
        return self

    def apply(self, rule, images: dict, context=EMPTY_WORD, remainder=()) -> "ChainBuilder":
        stmt = self.B[rule]
        phi = Substitution(images)
        nxt = Term((context * phi(Term((stmt.lhs,)))).word_set | frozenset(remainder))
        self.links.append((nxt, Apply(rule, phi, context, frozenset(remainder))))
        return self

    def build(self) -> LeqChain:
        return LeqChain(self.B, tuple(self.links), self.note)


# -- building blocks ---------------------------------------------------------


def _sr04(c: ChainBuilder, w: Word, q: Word, rest=()) -> None:
    a, b, d = split3(w)
    c.apply("SR04", {"x1": q, "x2": a, "x3": b, "x4": d}, remainder=rest)


def _square_to_cube(c: ChainBuilder, x: Word, rest=()) -> None:
    c.rewrite("SR02", BWD, {"x": x}, remainder=rest)


def _cycle_images(cycle: list[str]) -> dict:
    return {_x(i + 1): Word.var(v) for i, v in enumerate(cycle)}


def _cycle_words(cycle: list[str]) -> list[Word]:
    k = len(cycle)
    return [Word.of(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def _need_family(c: ChainBuilder, label: str) -> None:
    if label not in c.B:
        raise NotCertifiable(f"{label} is beyond the basis bound of {c.B.tag}")


def _sigma_step(c: ChainBuilder, cycle: list[str], rest=()) -> Word:
    k = (len(cycle) - 1) // 2
    _need_family(c, f"sigma:{k}")
    c.apply(f"sigma:{k}", _cycle_images(cycle), remainder=rest)
    return Word.of(*cycle)


def _absorb_sr03(c: ChainBuilder, p: Word, q: Word) -> None:
    """``p·q ⪰ q`` for ``c(p) ⊆ c(q)``, one letter of ``p`` at a time:
    ``x²·r ≈ x·r + x²·r ⪰ x·r`` by (SR03) with ``y ↦ x``."""
    cur = p
    while cur is not EMPTY_WORD:
        x = letters(cur)[0]
        xw = Word.var(x)
        cur = word_divides(xw, cur)
        ctx = word_divides(xw * xw, c.term.words[0])
        c.rewrite("SR03", FWD, {"x": xw, "y": xw}, EMPTY_WORD if ctx is EMPTY_WORD else ctx)
        kept = xw if ctx is EMPTY_WORD else ctx * xw
        c.drop(kept)


def _power_down(c: ChainBuilder, q: Word, n: int) -> None:
    """``q^n ≈ q²`` by repeated (SR02) in context."""
    while n > 2:
        ctx = EMPTY_WORD if n == 3 else q ** (n - 3)
        c.rewrite("SR02", FWD, {"x": q}, ctx)
        n -= 1


def _ab02_to_q(c: ChainBuilder, w: Word, q: Word) -> None:
    """``w ⪰ q`` for a word of length ≥ 3 with ``c(w) ⊆ c(q)``:
    ``w ⪰(ab02) q^n ≈(SR02) q² ⪰(ab01) q``."""
    n = w.length
    m = word_divides(w, q**n)
    if m is None:
        raise NotCertifiable(f"c({w}) is not inside c({q})")
    if m is EMPTY_WORD:
        n += 1
        m = word_divides(w, q**n)
    a, b, d = split3(w)
    c.apply("ab02", {"x": a, "y": b, "z": d, "t": m})
    _power_down(c, q, n)
    c.apply("ab01", {"x": q})


def _d201_to_q(c: ChainBuilder, long: Word, ui: Word, q: Word, rest=()) -> None:
    """``long + u_i ⪰(ScabD201) u_i·q ⪰ q``."""
    a, b, d = split3(long)
    c.apply("ScabD201", {"x1": ui, "x2": a, "x3": b, "x4": d, "x5": q})
    _absorb_sr03(c, ui, q)


def _odd_path(u: Term, x: str, y: str) -> list[str]:
    """A shortest path from x to y in G_u (vertices, both ends included)."""
    G = build(u)
    adj = G.adjacency()
    prev = {x: None}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    if y not in prev:
        raise NotCertifiable(f"{x} and {y} are not connected")
    path = [y]
    while path[-1] != x:
        path.append(prev[path[-1]])
    return path[::-1]


def _delta_step(c: ChainBuilder, path: list[str]) -> None:
    n = (len(path) - 2) // 2
    _need_family(c, f"delta:{n}" if n > 1 else "I26022301")
    label = "I26022301" if n == 1 else f"delta:{n}"
    c.apply(label, _cycle_images(path))


def _first_l1_l2(u: Term) -> tuple[Word, Word]:
    ones = sorted(u.layer(1), key=Word.sort_key)
    twos = sorted(u.layer(2), key=Word.sort_key)
    for w1 in ones:
        for w2 in twos:
            if w1.content <= w2.content:
                return w1, w2
    raise AssertionError("no shared letter")


def _long_word(u: Term) -> Word:
    return next(w for w in u.words if w.length >= 3)


# -- per-variety certificates ------------------------------------------------


def _scab_like(B: NamedBasis, q: Word, u: Term, use_sigma: bool) -> LeqChain:
    verdict = decide_scab(q, u)
    c = ChainBuilder(B, u, verdict.reason)
    if verdict.reason == "trivial":
        c.drop(q)
    elif verdict.reason == "cond_i":
        w = _long_word(u)
        c.drop(w)
        _sr04(c, w, q)
    elif verdict.reason == "cond_ii":
        x, xy = _first_l1_l2(u)
        c.drop(x, xy)
        c.rewrite("SR03", BWD, {"x": x, "y": word_divides(x, xy)})
        _square_to_cube(c, x)
        _sr04(c, x**3, q)
    elif verdict.reason == "cond_iii":
        cycle = odd_cycle(build(u))
        if len(cycle) == 1:
            x = Word.var(cycle[0])
            c.drop(x * x)
        else:
            c.drop(*_cycle_words(cycle))
            if use_sigma:
                _sr04(c, _sigma_step(c, cycle), q)
                return c.build()
            _delta_step(c, cycle + [cycle[0]])
            x = Word.var(cycle[0])
        _square_to_cube(c, x)
        _sr04(c, x**3, q)
    elif verdict.reason == "cond_iv" and not use_sigma:
        x, y = letters(q)
        path = _odd_path(u, x, y)
        c.drop(*(Word.of(a, b) for a, b in zip(path, path[1:])))
        _delta_step(c, path)
    else:
        raise NotCertifiable(f"{q} ⪯ {u} fails in {B.tag}")
    return c.build()


def _scabd2(B: NamedBasis, q: Word, u: Term) -> LeqChain:
    verdict = decide_scab(q, u)
    kept = dq_filter(q, u)
    if not verdict or not kept:
        raise NotCertifiable(f"{q} ⪯ {u} fails in {B.tag}")
    ui = min(kept, key=Word.sort_key)
    c = ChainBuilder(B, u, verdict.reason)
    if verdict.reason == "trivial":
        c.drop(q)
    elif verdict.reason == "cond_i":
        w = _long_word(u)
        c.drop(w, ui)
        _d201_to_q(c, w, ui, q)
    elif verdict.reason == "cond_ii":
        x, xy = _first_l1_l2(u)
        c.drop(x, xy, ui)
        c.rewrite("SR03", BWD, {"x": x, "y": word_divides(x, xy)}, remainder={ui})
        _square_to_cube(c, x, rest={ui})
        _d201_to_q(c, x**3, ui, q)
    elif verdict.reason == "cond_iii":
        cycle = odd_cycle(build(u))
        if len(cycle) == 1:
            x = Word.var(cycle[0])
            c.drop(x * x, ui)
            _square_to_cube(c, x, rest={ui})
            long = x**3
        else:
            c.drop(*_cycle_words(cycle), ui)
            long = _sigma_step(c, cycle, rest={ui})
        _d201_to_q(c, long, ui, q)
    else:
        # an odd path joins q's letters, so D_q(u) ⊆ L_2(u) forces q ∈ u
        raise AssertionError(f"unexpected reason {verdict.reason} for {q} ⪯ {u}")
    return c.build()


def _scab0(B: NamedBasis, q: Word, u: Term) -> LeqChain:
    kept = dq_filter(q, u)
    if not kept:
        raise NotCertifiable(f"{q} ⪯ {u} fails in {B.tag}: D_q(u) is empty")
    D = Term(kept)
    verdict = decide_scab(q, D)
    c = ChainBuilder(B, u, verdict.reason)
    if verdict.reason == "trivial":
        c.drop(q)
    elif verdict.reason == "cond_i":
        w = _long_word(D)
        c.drop(w)
        _ab02_to_q(c, w, q)
    elif verdict.reason == "cond_ii":
        x, xy = _first_l1_l2(D)
        c.drop(x, xy)
        c.apply("ab03", {"x": x, "y": word_divides(x, xy)})
        _ab02_to_q(c, xy * xy, q)
    elif verdict.reason == "cond_iii":
        cycle = odd_cycle(build(D))
        if len(cycle) == 1:
            x = Word.var(cycle[0])
            c.drop(x * x)
            _square_to_cube(c, x)
            _ab02_to_q(c, x**3, q)
        else:
            c.drop(*_cycle_words(cycle))
            _ab02_to_q(c, _sigma_step(c, cycle), q)
    elif verdict.reason == "cond_iv":
        raise AssertionError(f"odd path inside D_q(u) for {q} ⪯ {u}")
    else:
        raise NotCertifiable(f"{q} ⪯ {u} fails in {B.tag}")
    return c.build()


CERTIFIED_TAGS = ("SR6", "Scab", "ScabD2", "Scab0")


def certificate_basis(tag: str, bound: int = 4) -> NamedBasis:
    """``basis(tag, bound)``; for S_c(ab) with δ_2..δ_bound added as derived."""
    B = basis(tag, bound)
    if tag == "Scab":
        B = B.extended((f"delta:{n}", delta(n)) for n in range(2, bound + 1))
    return B


def certify(tag: str, q: Word, u: Term, bound: int = 4) -> LeqChain:
    B = certificate_basis(tag, bound)
    if tag == "SR6":
        return _scab_like(B, q, u, use_sigma=True)
    if tag == "Scab":
        return _scab_like(B, q, u, use_sigma=False)
    if tag == "ScabD2":
        return _scabd2(B, q, u)
    if tag == "Scab0":
        return _scab0(B, q, u)
    raise KeyError(f"no certificates for {tag!r}; expected one of {', '.join(CERTIFIED_TAGS)}")


# -- derived members ---------------------------------------------------------


def delta_chain(n: int, B: Optional[NamedBasis] = None) -> LeqChain:
    """δ_n from δ_1: fold the path two edges at a time from the left."""
    B = B or basis("Scab")
    path = [_x(i) for i in range(1, 2 * n + 3)]
    c = ChainBuilder(B, delta(n).rhs, f"delta:{n} from I26022301")
    rest = [Word.of(a, b) for a, b in zip(path, path[1:])]
    head = path[0]
    i = 1
    while i + 2 < len(path):
        images = {"x1": Word.var(head), "x2": Word.var(path[i]), "x3": Word.var(path[i + 1]), "x4": Word.var(path[i + 2])}
        c.apply("I26022301", images, remainder=rest[i + 2 :])
        i += 2
    return c.build()


def sr06_chain(B: Optional[NamedBasis] = None) -> LeqChain:
    """``y ⪯ x²`` from (SR02) and (SR04)."""
    B = B or basis("SR6")
    x, y = Word.var("x"), Word.var("y")
    c = ChainBuilder(B, Term((x * x,)), "SR06")
    _square_to_cube(c, x)
    _sr04(c, x**3, y)
    return c.build()


def ab01_from_sr03(B: Optional[NamedBasis] = None) -> LeqChain:
    """``x ⪯ x²`` from (SR03): ``x² ≈ x + x² ⪰ x``."""
    B = B or basis("Sca")
    x = Word.var("x")
    c = ChainBuilder(B, Term((x * x,)), "x <= x^2")
    c.rewrite("SR03", FWD, {"x": x, "y": x})
    c.drop(x)
    return c.build()


def sca_chains(B: Optional[NamedBasis] = None) -> tuple[LeqChain, LeqChain]:
    """Both halves of ``x1x2 ≈ y1y2`` from (t01), (SR02), (SR04)."""
    B = B or basis("Sca")

    def one(a1: str, a2: str, b1: str, b2: str) -> LeqChain:
        x1, x2, y1, y2 = (Word.var(v) for v in (a1, a2, b1, b2))
        c = ChainBuilder(B, Term((x1 * x2,)), f"{a1}{a2} >= {b1}{b2}")
        c.rewrite("t01", BWD, {"x": x1, "y": x2})
        _square_to_cube(c, x1)
        _sr04(c, x1**3, y1**3)
        c.rewrite("SR02", FWD, {"x": y1})
        c.rewrite("t01", FWD, {"x": y1, "y": y2})
        return c.build()

    return one("x1", "x2", "y1", "y2"), one("y1", "y2", "x1", "x2")


def proves(chain: LeqChain, ineq: Inequality) -> bool:
    return chain.proves(ineq)


# -- the displayed derivations, instantiated -----------------------------------

# (tag, case, inequality): one concrete instance per displayed case
DISPLAYED = (
    ("Scab", "case 1", "y <= x1*x2*x3 + z"),
    ("Scab", "case 2", "z*t <= x + x*y + w"),
    ("Scab", "case 3, k=1", "z <= x1*x2 + x2*x3 + x3*x1"),
    ("Scab", "case 3, k=2", "z <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1"),
    ("Scab", "case 4, n=1", "x1*x4 <= x1*x2 + x2*x3 + x3*x4 + y"),
    ("Scab", "case 4, n=2", "x1*x6 <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x6"),
    ("SR6", "case 1", "y <= x1*x2*x3 + z"),
    ("SR6", "case 2", "z*t <= x + x*y + w"),
    ("SR6", "case 3, k=1", "z <= x1*x2 + x2*x3 + x3*x1"),
    ("SR6", "case 3, k=2", "z <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1"),
    ("ScabD2", "case 1", "x*y <= x + z*t*w"),
    ("ScabD2", "case 2", "x*y <= x + x*z"),
    ("ScabD2", "case 3", "x*y <= x + z1*z2 + z2*z3 + z3*z1"),
    ("Scab0", "case 1", "x*y <= x*y^2 + z"),
    ("Scab0", "case 2", "x*y*z <= x + x*y + t"),
    ("Scab0", "case 3", "x1*x2*x3 <= x1*x2 + x2*x3 + x3*x1 + y"),
)


def displayed_chains() -> list[tuple[str, Inequality, LeqChain]]:
    """Every displayed chain as (name, goal, chain); goals are inequalities."""
    from .terms import parse_statement

    out = []
    for tag, case, text in DISPLAYED:
        goal = parse_statement(text)
        out.append((f"{tag} {case}", goal, certify(tag, goal.lhs, goal.rhs)))
    x, y = Word.var("x"), Word.var("y")
    out.append(("SR06 from SR02, SR04", Inequality(y, Term((x * x,))), sr06_chain()))
    out.append(("x <= x^2 from SR03", Inequality(x, Term((x * x,))), ab01_from_sr03()))
    for ch in sca_chains():
        out.append((f"Sca {ch.note}", Inequality(ch.bottom.words[0], ch.top), ch))
    for n in (2, 3):
        out.append((f"delta:{n} from delta:1", delta(n), delta_chain(n)))
    return out
