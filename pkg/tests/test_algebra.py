import itertools

import numpy as np
import oracles
import pytest
from conftest import plain, terms, words
from hypothesis import given, settings
from hypothesis import strategies as st

from aisr import catalog
from aisr.algebra import (
    AlgebraError,
    BudgetExceeded,
    FiniteAiSemiring,
    NonCommutativeError,
    NotACongruenceError,
    Partition,
    adjoin_zero,
    bottom,
    direct_product,
    enumerate_ai_semirings,
    eval_term,
    find_embedding,
    find_isomorphism,
    is_congruence,
    is_homomorphism,
    iter_embeddings,
    leq,
    quotient,
    satisfies,
    subalgebra_closure,
    top,
    trivial,
    validate,
)
from aisr.families import named
from aisr.terms import Identity, Inequality, parse_statement, parse_term

SR6 = catalog.sr6()
ORDER3 = enumerate_ai_semirings(3)
SMALL = [SR6, catalog.scab(), catalog.d2(), catalog.scab0(), catalog.sca()] + ORDER3
NAMES3 = ["x", "y", "z"]


def lists(A):
    return A.add.tolist(), A.mul.tolist()


def el(label):
    return SR6.element(label)


def test_catalog_algebras_validate():
    for A in [SR6, catalog.scab(), catalog.scabc(), catalog.d2(), catalog.scab0(), trivial()]:
        assert validate(A) == []
        assert oracles.is_comm_ai_semiring(*lists(A))


def test_broken_commutativity_is_reported():
    add = SR6.add.copy()
    add[0, 1] = 1
    bad = FiniteAiSemiring(add, SR6.mul)
    axioms = [v.axiom for v in validate(bad)]
    assert "additive commutativity" in axioms
    v = next(v for v in validate(bad) if v.axiom == "additive commutativity")
    i, j = v.witness
    assert bad.add[i, j] != bad.add[j, i]


def test_table_shape_errors():
    with pytest.raises(AlgebraError):
        FiniteAiSemiring([[0, 1]], [[0, 1]])
    with pytest.raises(AlgebraError):
        FiniteAiSemiring([[0, 2], [2, 1]], [[0, 0], [0, 0]])
    with pytest.raises(AlgebraError):
        FiniteAiSemiring.from_json({"add": [[0]]})


def test_json_round_trip():
    for A in [SR6, catalog.scab0()]:
        B = FiniteAiSemiring.from_json(A.to_json())
        assert B.same_tables(A) and B.labels == A.labels


def test_order():
    assert top(SR6) == el("1")
    assert bottom(SR6) is None
    assert leq(SR6, el("2"), el("1")) and not leq(SR6, el("1"), el("2"))
    S = catalog.scab()
    assert top(S) == S.element("0")
    Z = catalog.scab0()
    assert bottom(Z) == Z.element("0'")


def test_eval_examples():
    env = {"x": el("2"), "y": el("6")}
    assert SR6.label(eval_term(SR6, parse_term("x*y"), env)) == "3"
    env = {"x1": el("2"), "x2": el("6"), "x3": el("5"), "x4": el("4")}
    assert SR6.label(eval_term(SR6, parse_term("x1*x2 + x2*x3 + x3*x4"), env)) == "3"
    for A in SMALL[:5]:
        for e in range(A.size):
            assert eval_term(A, parse_term("x"), {"x": e}) == e


def test_satisfies_examples():
    assert satisfies(SR6, named("SR03")).holds
    v = satisfies(SR6, named("I26022301"))
    assert not v.holds
    assert {k: SR6.label(x) for k, x in v.witness.items()} == {"x1": "2", "x2": "6", "x3": "5", "x4": "4"}
    assert SR6.label(eval_term(SR6, parse_term("x1*x4"), v.witness)) == "1"
    assert satisfies(catalog.scab(), named("I26022301")).holds


def test_witness_is_first_in_natural_order():
    v = satisfies(SR6, named("I26022301"))
    held, env = oracles.satisfies_leq(*lists(SR6), {"x1": 1, "x4": 1}, [{"x1": 1, "x2": 1}, {"x2": 1, "x3": 1}, {"x3": 1, "x4": 1}])
    assert not held and env == v.witness


def test_budget():
    with pytest.raises(BudgetExceeded):
        satisfies(SR6, named("sigma:4"), budget=1000)
    assert satisfies(SR6, named("sigma:1"), budget=6**3).holds


def test_noncommutative_rejected():
    mul = np.array([[0, 0], [1, 1]])
    A = FiniteAiSemiring([[0, 1], [1, 1]], mul)
    with pytest.raises(NonCommutativeError):
        satisfies(A, parse_statement("x*y = y*x"))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL), words(NAMES3), terms(NAMES3, max_words=3))
def test_inequality_agrees_with_oracle(A, q, u):
    expected, _ = oracles.satisfies_leq(*lists(A), q.as_dict(), plain(u))
    assert satisfies(A, Inequality(q, u)).holds == expected


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL), terms(NAMES3, max_words=2), terms(NAMES3, max_words=2))
def test_identity_agrees_with_oracle(A, s, t):
    expected, _ = oracles.satisfies_eq(*lists(A), plain(s), plain(t))
    assert satisfies(A, Identity(s, t)).holds == expected


def test_subalgebra_closure():
    labels = lambda s: sorted(SR6.label(x) for x in s)  # noqa: E731
    assert labels(subalgebra_closure(SR6, [el("3")])) == ["1", "3"]
    assert labels(subalgebra_closure(SR6, range(6))) == list("123456")
    assert labels(subalgebra_closure(SR6, [el(x) for x in "2654"])) == list("123456")
    for gens in itertools.combinations(range(6), 2):
        assert subalgebra_closure(SR6, gens) == oracles.closure(*lists(SR6), gens)


def test_congruence_examples():
    assert is_congruence(SR6, Partition.discrete(6))
    assert is_congruence(SR6, Partition([range(6)], 6))
    blocks = [[el("1"), el("3")], [el("2")], [el("4")], [el("5")], [el("6")]]
    # the oracle says this partition is compatible
    assert oracles.congruence(*lists(SR6), blocks)
    assert is_congruence(SR6, Partition(blocks, 6))
    Q = quotient(SR6, Partition(blocks, 6))
    assert Q.size == 5 and validate(Q) == []


def test_every_two_block_collapse_against_oracle():
    for a, b in itertools.combinations(range(6), 2):
        P = Partition.collapse(6, [a, b])
        assert bool(is_congruence(SR6, P)) == oracles.congruence(*lists(SR6), [list(x) for x in P.blocks])


def test_quotient_refuses_non_congruence():
    P = Partition.collapse(6, [el("2"), el("4")])
    chk = is_congruence(SR6, P)
    assert not chk
    op, a, b, c = chk.witness
    tab = SR6.add if op == "+" else SR6.mul
    cls = P.class_map()
    assert cls[a] == cls[b] and cls[tab[a, c]] != cls[tab[b, c]]
    with pytest.raises(NotACongruenceError):
        quotient(SR6, P)


def test_partition_errors():
    with pytest.raises(AlgebraError):
        Partition([[0, 1], [1, 2]])
    with pytest.raises(AlgebraError):
        Partition([[0]], 2)


def test_direct_product_and_zero():
    P = direct_product(catalog.scab(), catalog.d2())
    assert P.size == 8 and validate(P) == []
    Z = adjoin_zero(SR6)
    assert Z.size == 7 and validate(Z) == []
    z = Z.size - 1
    assert all(Z.add[z, a] == a and Z.mul[z, a] == z for a in range(7))
    assert find_isomorphism(adjoin_zero(trivial()), catalog.d2())


def test_product_satisfies_what_both_factors_satisfy():
    P = direct_product(catalog.scab(), catalog.sca())
    for label in ["SR02", "SR03", "SR04", "I26022301"]:
        both = satisfies(catalog.scab(), named(label)).holds and satisfies(catalog.sca(), named(label)).holds
        assert satisfies(P, named(label)).holds == both


def test_embeddings():
    images = {tuple(sorted(SR6.label(v) for v in e.values())) for e in iter_embeddings(catalog.scab(), SR6)}
    assert ("1", "3", "5", "6") in images
    for e in iter_embeddings(catalog.scab(), SR6):
        assert is_homomorphism(catalog.scab(), SR6, e)
        assert len(set(e.values())) == 4
    assert find_embedding(catalog.sca(), SR6) is not None
    assert find_embedding(catalog.scabc(), SR6) is None
    assert find_isomorphism(SR6, SR6) == {i: i for i in range(6)}
    assert find_isomorphism(catalog.d2(), catalog.sca()) is None


def test_isomorphism_under_relabelling():
    perm = np.array([3, 0, 5, 1, 2, 4])
    inv = np.argsort(perm)
    add = perm[SR6.add[np.ix_(inv, inv)]]
    mul = perm[SR6.mul[np.ix_(inv, inv)]]
    f = find_isomorphism(SR6, FiniteAiSemiring(add, mul))
    assert f == {i: int(perm[i]) for i in range(6)}


def test_enumeration_counts_match_oracle():
    for n in (1, 2, 3):
        algs = enumerate_ai_semirings(n)
        assert len(algs) == oracles.count_comm_ai_semirings(n)
        assert all(validate(A) == [] for A in algs)
        for A, B in itertools.combinations(algs, 2):
            assert find_isomorphism(A, B) is None
    assert [len(enumerate_ai_semirings(n)) for n in (1, 2, 3)] == [1, 4, 29]


def test_enumeration_contains_minimal_algebras():
    two = enumerate_ai_semirings(2)
    assert any(find_isomorphism(A, catalog.sca()) for A in two)
    assert any(find_isomorphism(A, catalog.d2()) for A in two)
    with pytest.raises(ValueError):
        enumerate_ai_semirings(4)
