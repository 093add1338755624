"""Finite commutative ai-semirings given by Cayley tables.

Elements are the integers ``0..n-1``; ``labels`` carries the display name
of each element (SR6 uses ``"1".."6"``, flat semirings use their words).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .terms import Identity, Inequality, Statement, Term, Word, split_identity, var_key

DEFAULT_BUDGET = 10**8


class AlgebraError(ValueError):
    pass


class NonCommutativeError(AlgebraError):
    pass


class NotACongruenceError(AlgebraError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} assignments exceed the budget of {budget}")


def assignment_budget() -> int:
    env = os.environ.get("AISR_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


class FiniteAiSemiring:
    def __init__(self, add, mul, name: str = "", labels: Optional[Sequence[str]] = None):
        add = np.asarray(add)
        mul = np.asarray(mul)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
            raise AlgebraError(f"addition table must be a nonempty square matrix, got shape {add.shape}")
        if mul.shape != add.shape:
            raise AlgebraError(f"multiplication table has shape {mul.shape}, expected {add.shape}")
        n = add.shape[0]
        for tab, op in ((add, "addition"), (mul, "multiplication")):
            if not np.issubdtype(tab.dtype, np.integer):
                raise AlgebraError(f"{op} table must contain integers")
            if tab.min() < 0 or tab.max() >= n:
                raise AlgebraError(f"{op} table has entries outside 0..{n - 1}")
        self.add = add.astype(np.intp)
        self.mul = mul.astype(np.intp)
        self.add.flags.writeable = False
        self.mul.flags.writeable = False
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise AlgebraError("one label per element is required")

    @property
    def size(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteAiSemiring({self.name or '?'}, size={self.size})"

    def label(self, a: int) -> str:
        return self.labels[a]

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def same_tables(self, other: "FiniteAiSemiring") -> bool:
        return np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)

    @property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "size": self.size,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
        }
        if self.labels != tuple(str(i) for i in range(self.size)):
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_json(cls, doc: Union[dict, str]) -> "FiniteAiSemiring":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            add, mul = doc["add"], doc["mul"]
        except KeyError as exc:
            raise AlgebraError(f"algebra document lacks {exc.args[0]!r}") from None
        alg = cls(add, mul, doc.get("name", ""), doc.get("labels"))
        if "size" in doc and doc["size"] != alg.size:
            raise AlgebraError(f"size field says {doc['size']} but tables are {alg.size}x{alg.size}")
        return alg


def trivial() -> FiniteAiSemiring:
    return FiniteAiSemiring([[0]], [[0]], "T", ["e"])


# -- axioms ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def describe(self, A: FiniteAiSemiring) -> str:
        return f"{self.axiom} fails at ({', '.join(A.label(a) for a in self.witness)})"


def _first(mask) -> Optional[tuple[int, ...]]:
    idx = np.argwhere(~mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def validate(A: FiniteAiSemiring) -> list[Violation]:
    """Every violated commutative ai-semiring axiom, with a witness tuple."""
    n = A.size
    add, mul = A.add, A.mul
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    checks = [
        ("additive idempotence", add[np.arange(n), np.arange(n)] == np.arange(n)),
        ("additive commutativity", add == add.T),
        ("additive associativity", add[add[a, b], c] == add[a, add[b, c]]),
        ("multiplicative commutativity", mul == mul.T),
        ("multiplicative associativity", mul[mul[a, b], c] == mul[a, mul[b, c]]),
        ("left distributivity", mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]),
        ("right distributivity", mul[add[a, b], c] == add[mul[a, c], mul[b, c]]),
    ]
    out = []
    for axiom, mask in checks:
        w = _first(mask)
        if w is not None:
            out.append(Violation(axiom, w))
    return out


def is_ai_semiring(A: FiniteAiSemiring, commutative: bool = True) -> bool:
    bad = validate(A)
    if not commutative:
        bad = [v for v in bad if v.axiom != "multiplicative commutativity"]
    return not bad


# -- order -------------------------------------------------------------------


def leq(A: FiniteAiSemiring, a: int, b: int) -> bool:
    return int(A.add[a, b]) == b


def top(A: FiniteAiSemiring) -> Optional[int]:
    for t in range(A.size):
        if (A.add[t] == t).all():
            return t
    return None


def bottom(A: FiniteAiSemiring) -> Optional[int]:
    for z in range(A.size):
        if (A.add[z] == np.arange(A.size)).all():
            return z
    return None


# -- evaluation --------------------------------------------------------------


def _word_value(A: FiniteAiSemiring, w: Word, cols: dict, powers: dict):
    acc = None
    for name, e in w.items:
        key = (name, e)
        if key not in powers:
            x = cols[name]
            p = x
            for _ in range(e - 1):
                p = A.mul[p, x]
            powers[key] = p
        p = powers[key]
        acc = p if acc is None else A.mul[acc, p]
    return acc


def _term_value(A: FiniteAiSemiring, t: Term, cols: dict, powers: dict):
    acc = None
    for w in t.words:
        v = _word_value(A, w, cols, powers)
        acc = v if acc is None else A.add[acc, v]
    return acc


def eval_term(A: FiniteAiSemiring, t: Union[Term, Word], assignment: dict) -> int:
    missing = (t.content if isinstance(t, Term) else t.content) - assignment.keys()
    if missing:
        from .terms import UndefinedVariableError

        raise UndefinedVariableError(sorted(missing, key=var_key)[0])
    cols = {k: int(v) for k, v in assignment.items()}
    if isinstance(t, Word):
        return int(_word_value(A, t, cols, {}))
    return int(_term_value(A, t, cols, {}))


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[dict] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, A: FiniteAiSemiring) -> str:
        if self.holds:
            return "holds"
        inner = ", ".join(f"{k}={A.label(v)}" for k, v in sorted(self.witness.items(), key=lambda kv: var_key(kv[0])))
        return f"fails at {inner}"


def _assignments(n: int, k: int, chunk: int) -> Iterator[tuple[int, list[np.ndarray]]]:
    """Mixed-radix enumeration of all n**k assignments, in chunks."""
    total = n**k
    weights = [n ** (k - 1 - i) for i in range(k)]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield start, [(idx // w) % n for w in weights]


def satisfies(
    A: FiniteAiSemiring,
    stmt: Statement,
    budget: Optional[int] = None,
    chunk: int = 1 << 20,
) -> Verdict:
    """Exhaustively check ``stmt`` under every assignment of its variables.

    On failure the witness is the first violating assignment in
    mixed-radix order (variables in natural order, first one most
    significant).
    """
    if not A.is_commutative:
        raise NonCommutativeError(f"{A.name or 'algebra'} has noncommutative multiplication")
    names = sorted(stmt.content, key=var_key)
    k = len(names)
    n = A.size
    total = n**k
    budget = assignment_budget() if budget is None else budget
    if total > budget:
        raise BudgetExceeded(total, budget)
    if isinstance(stmt, Inequality):
        left, right = Term((stmt.lhs,)), stmt.rhs
    else:
        left, right = stmt.lhs, stmt.rhs
    for start, digits in _assignments(n, k, chunk):
        cols = dict(zip(names, digits))
        powers: dict = {}
        lv = _term_value(A, left, cols, powers)
        rv = _term_value(A, right, cols, powers)
        if isinstance(stmt, Inequality):
            ok = A.add[lv, rv] == rv
        else:
            ok = lv == rv
        if not ok.all():
            i = int(np.argmin(ok))
            return Verdict(False, {nm: int(d[i]) for nm, d in zip(names, digits)}, start + i + 1)
    return Verdict(True, None, total)


# -- substructures -------------------------------------------------------------


def subalgebra_closure(A: FiniteAiSemiring, generators: Iterable[int]) -> frozenset[int]:
    found = set(int(g) for g in generators)
    if not found:
        raise AlgebraError("need at least one generator")
    frontier = list(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                for c in (A.add[a, b], A.mul[a, b], A.mul[b, a]):
                    c = int(c)
                    if c not in found:
                        new.add(c)
        found |= new
        frontier = list(new)
    return frozenset(found)


def subalgebra(A: FiniteAiSemiring, elements: Iterable[int], name: str = "") -> tuple[FiniteAiSemiring, list[int]]:
    """The subalgebra on a closed subset, with the list of original elements."""
    elems = sorted(set(int(e) for e in elements))
    pos = {e: i for i, e in enumerate(elems)}
    try:
        add = [[pos[int(A.add[a, b])] for b in elems] for a in elems]
        mul = [[pos[int(A.mul[a, b])] for b in elems] for a in elems]
    except KeyError as exc:
        raise AlgebraError(f"subset is not closed: produces element {A.label(exc.args[0])}") from None
    return FiniteAiSemiring(add, mul, name or f"sub({A.name})", [A.label(e) for e in elems]), elems


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]

    def __init__(self, blocks: Iterable[Iterable[int]], size: Optional[int] = None):
        bl = [frozenset(int(x) for x in b) for b in blocks]
        if any(not b for b in bl):
            raise AlgebraError("partition blocks must be nonempty")
        seen: set[int] = set()
        for b in bl:
            if seen & b:
                raise AlgebraError(f"partition blocks overlap on {sorted(seen & b)}")
            seen |= b
        if size is not None and seen != set(range(size)):
            raise AlgebraError(f"blocks do not cover 0..{size - 1}")
        object.__setattr__(self, "blocks", tuple(sorted(bl, key=min)))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls([[i] for i in range(n)], n)

    @classmethod
    def collapse(cls, n: int, block: Iterable[int]) -> "Partition":
        """One block glued together, everything else a singleton."""
        block = set(block)
        return cls([block] + [[i] for i in range(n) if i not in block], n)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def class_map(self) -> np.ndarray:
        cls = np.empty(self.size, dtype=np.intp)
        for i, b in enumerate(self.blocks):
            for x in b:
                cls[x] = i
        return cls

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _as_partition(A: FiniteAiSemiring, P: Partition) -> Partition:
    if set().union(*P.blocks) != set(range(A.size)):
        raise AlgebraError(f"partition does not cover the {A.size} elements of {A.name or 'the algebra'}")
    return P


def is_congruence(A: FiniteAiSemiring, P: Partition) -> Check:
    """Witness on failure: ``(op, a, b, c)`` with a ≡ b but a∘c ≢ b∘c."""
    _as_partition(A, P)
    cls = P.class_map()
    for block in P.blocks:
        members = sorted(block)
        rep = members[0]
        for b in members[1:]:
            for op, tab in (("+", A.add), ("*", A.mul)):
                bad = np.nonzero(cls[tab[rep]] != cls[tab[b]])[0]
                if len(bad):
                    return Check(False, (op, rep, b, int(bad[0])))
                bad = np.nonzero(cls[tab[:, rep]] != cls[tab[:, b]])[0]
                if len(bad):
                    return Check(False, (op, rep, b, int(bad[0])))
    return Check(True)


def quotient(A: FiniteAiSemiring, P: Partition, name: str = "") -> FiniteAiSemiring:
    chk = is_congruence(A, P)
    if not chk:
        op, a, b, c = chk.witness
        raise NotACongruenceError(
            f"{A.label(a)} ~ {A.label(b)} but {A.label(a)}{op}{A.label(c)} and {A.label(b)}{op}{A.label(c)} are in different blocks"
        )
    cls = P.class_map()
    reps = [min(b) for b in P.blocks]
    add = [[int(cls[A.add[r, s]]) for s in reps] for r in reps]
    mul = [[int(cls[A.mul[r, s]]) for s in reps] for r in reps]
    labels = ["{" + ",".join(A.label(x) for x in sorted(b)) + "}" for b in P.blocks]
    return FiniteAiSemiring(add, mul, name or f"{A.name}/~", labels)


def direct_product(A: FiniteAiSemiring, B: FiniteAiSemiring) -> FiniteAiSemiring:
    """Componentwise operations; the pair (i, j) is element ``i * |B| + j``."""
    m = B.size
    add = (A.add[:, None, :, None] * m + B.add[None, :, None, :]).reshape(A.size * m, A.size * m)
    mul = (A.mul[:, None, :, None] * m + B.mul[None, :, None, :]).reshape(A.size * m, A.size * m)
    labels = [f"({a},{b})" for a in A.labels for b in B.labels]
    return FiniteAiSemiring(add, mul, f"{A.name}x{B.name}", labels)


def adjoin_zero(A: FiniteAiSemiring, name: str = "") -> FiniteAiSemiring:
    """Add a new element that is the additive identity and multiplicative zero."""
    n = A.size
    add = np.empty((n + 1, n + 1), dtype=np.intp)
    mul = np.empty((n + 1, n + 1), dtype=np.intp)
    add[:n, :n] = A.add
    mul[:n, :n] = A.mul
    add[n, :] = np.arange(n + 1)
    add[:, n] = np.arange(n + 1)
    mul[n, :] = n
    mul[:, n] = n
    zero = "0" if "0" not in A.labels else "0'"
    return FiniteAiSemiring(add, mul, name or f"{A.name}^0", list(A.labels) + [zero])


# -- homomorphisms -------------------------------------------------------------


def _signature(A: FiniteAiSemiring, a: int) -> tuple:
    n = A.size
    below = int(sum(1 for b in range(n) if A.add[b, a] == a))
    above = int(sum(1 for b in range(n) if A.add[a, b] == b))
    annihilated = int(sum(1 for b in range(n) if A.mul[a, b] == a))
    sq = int(A.mul[a, a])
    return (below, above, annihilated, sq == a, int(A.mul[sq, a]) == sq)


def _propagate(A: FiniteAiSemiring, B: FiniteAiSemiring, f: dict, used: dict) -> bool:
    """Close the partial map under the operations; False on conflict."""
    changed = True
    while changed:
        changed = False
        items = list(f.items())
        for a, fa in items:
            for b, fb in items:
                for tabA, tabB in ((A.add, B.add), (A.mul, B.mul)):
                    c = int(tabA[a, b])
                    fc = int(tabB[fa, fb])
                    if c in f:
                        if f[c] != fc:
                            return False
                    else:
                        if fc in used:
                            return False
                        f[c] = fc
                        used[fc] = c
                        changed = True
        # keep the product loop bounded: restart with the enlarged map
    return True


def iter_embeddings(A: FiniteAiSemiring, B: FiniteAiSemiring, surjective: bool = False) -> Iterator[dict[int, int]]:
    """All injective homomorphisms A -> B (bijections when ``surjective``)."""
    if A.size > B.size or (surjective and A.size != B.size):
        return
    sigA = [_signature(A, a) for a in range(A.size)]
    sigB = [_signature(B, b) for b in range(B.size)]
    idemA = [int(A.mul[a, a]) == a for a in range(A.size)]
    idemB = [int(B.mul[b, b]) == b for b in range(B.size)]

    def candidates(a):
        if surjective:
            return [b for b in range(B.size) if sigB[b] == sigA[a]]
        return [b for b in range(B.size) if idemB[b] == idemA[a]]

    cands = [candidates(a) for a in range(A.size)]
    if any(not c for c in cands):
        return
    order = sorted(range(A.size), key=lambda a: (len(cands[a]), a))

    def extend(f: dict, used: dict):
        pending = [a for a in order if a not in f]
        if not pending:
            yield dict(sorted(f.items()))
            return
        a = pending[0]
        for b in cands[a]:
            if b in used:
                continue
            f2, used2 = dict(f), dict(used)
            f2[a] = b
            used2[b] = a
            if _propagate(A, B, f2, used2) and all(f2[x] in cands[x] for x in f2):
                yield from extend(f2, used2)

    seen = set()
    for emb in extend({}, {}):
        key = tuple(emb[a] for a in range(A.size))
        if key not in seen:
            seen.add(key)
            yield emb


def is_homomorphism(A: FiniteAiSemiring, B: FiniteAiSemiring, f: dict) -> bool:
    fa = np.array([f[a] for a in range(A.size)])
    return bool((fa[A.add] == B.add[np.ix_(fa, fa)]).all() and (fa[A.mul] == B.mul[np.ix_(fa, fa)]).all())


def find_embedding(A: FiniteAiSemiring, B: FiniteAiSemiring) -> Optional[dict[int, int]]:
    return next(iter_embeddings(A, B), None)


def find_isomorphism(A: FiniteAiSemiring, B: FiniteAiSemiring) -> Optional[dict[int, int]]:
    if A.size != B.size:
        return None
    return next(iter_embeddings(A, B, surjective=True), None)


# -- enumeration ---------------------------------------------------------------

MAX_ENUMERATION_ORDER = 3


def _canonical(add: np.ndarray, mul: np.ndarray) -> tuple:
    n = add.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        inv = np.argsort(p)
        # relabel element x as p[x]
        a2 = p[add[np.ix_(inv, inv)]]
        m2 = p[mul[np.ix_(inv, inv)]]
        key = tuple(a2.ravel()) + tuple(m2.ravel())
        if best is None or key < best:
            best = key
    return best


def _commutative_tables(n: int, idempotent: bool) -> Iterator[np.ndarray]:
    cells = [(i, j) for i in range(n) for j in range(i, n) if not (idempotent and i == j)]
    for values in itertools.product(range(n), repeat=len(cells)):
        t = np.empty((n, n), dtype=np.intp)
        if idempotent:
            t[np.arange(n), np.arange(n)] = np.arange(n)
        for (i, j), v in zip(cells, values):
            t[i, j] = t[j, i] = v
        yield t


def _associative(t: np.ndarray) -> bool:
    n = t.shape[0]
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return bool((t[t[a, b], c] == t[a, t[b, c]]).all())


def enumerate_ai_semirings(n: int, cap: int = MAX_ENUMERATION_ORDER) -> list[FiniteAiSemiring]:
    """All commutative ai-semirings of order n, one per isomorphism class."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > cap:
        raise ValueError(f"enumeration is capped at order {cap}")
    semilattices = [t for t in _commutative_tables(n, True) if _associative(t)]
    products = [t for t in _commutative_tables(n, False) if _associative(t)]
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    found: dict[tuple, tuple] = {}
    for add in semilattices:
        for mul in products:
            if not (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all():
                continue
            key = _canonical(add, mul)
            if key not in found:
                found[key] = key
    out = []
    for i, key in enumerate(sorted(found)):
        add = np.array(key[: n * n]).reshape(n, n)
        mul = np.array(key[n * n:]).reshape(n, n)
        out.append(FiniteAiSemiring(add, mul, f"C{n}.{i + 1}"))
    return out
