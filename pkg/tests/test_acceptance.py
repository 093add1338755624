"""One test per acceptance criterion, each with its time limit.

Every test prints a single ``criterion N: PASS/FAIL`` line (visible even
under output capture) before asserting.
"""

import time
from dataclasses import replace

import pytest

from aisr import catalog
from aisr.algebra import (
    direct_product,
    enumerate_ai_semirings,
    eval_term,
    find_embedding,
    find_isomorphism,
    iter_embeddings,
    satisfies,
    validate,
)
from aisr.certify import displayed_chains
from aisr.characterize import decide_d2, decide_s0, decide_scab, decide_sr6, decide_variety
from aisr.corpus import InequalityCorpus, truth_table
from aisr.families import named, parse_basis, u_n
from aisr.freeness import is_free, is_subterm
from aisr.proof import ProofScript, StepError, check_leq_chain, check_proof, search_derivation
from aisr.reproduce import subterm_triples
from aisr.structure import ab_pairs, ab_quotient, abcd_quads, abcd_quotient
from aisr.terms import Word, parse_term


@pytest.fixture
def report(capsys):
    def emit(n, ok, elapsed, limit, detail=""):
        verdict = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n}: {verdict} ({elapsed:.2f}s of {limit}s) {detail}")
        assert ok, f"criterion {n}: {detail}"
        assert elapsed < limit, f"criterion {n} took {elapsed:.1f}s, limit {limit}s"

    return emit


@pytest.fixture(scope="module")
def corpus():
    t0 = time.perf_counter()
    c = InequalityCorpus(max_vars=4, max_len=3, max_summands=4)
    ineqs = list(c)
    return c, ineqs, time.perf_counter() - t0


def test_criterion_1_axioms(report):
    t0 = time.perf_counter()
    algebras = [catalog.sr6(), catalog.scab(), catalog.scabc(), catalog.d2(), catalog.scab0()]
    found = {A.name: validate(A) for A in algebras}
    ok = all(not v for v in found.values()) and max(A.size for A in algebras) <= 8
    report(1, ok, time.perf_counter() - t0, 1, str({k: len(v) for k, v in found.items()}))


def test_criterion_2_sr6_identities(report):
    t0 = time.perf_counter()
    S = catalog.sr6()
    labels = ["SR02", "SR03", "SR04"] + [f"sigma:{n}" for n in range(1, 5)]
    verdicts = {lab: satisfies(S, named(lab)) for lab in labels}
    ok = all(v.holds for v in verdicts.values()) and verdicts["sigma:4"].checked == 6**9
    report(2, ok, time.perf_counter() - t0, 60, f"sigma:4 checked {verdicts['sigma:4'].checked} assignments")


def test_criterion_3_separation(report):
    t0 = time.perf_counter()
    S, F = catalog.sr6(), catalog.scab()
    d1 = named("I26022301")
    in_f = satisfies(F, d1)
    in_s = satisfies(S, d1)
    ok = in_f.holds and not in_s.holds
    if not in_s.holds:
        lhs = eval_term(S, Word.of("x1", "x4"), in_s.witness)
        rhs = eval_term(S, d1.rhs, in_s.witness)
        ok &= int(S.add[lhs, rhs]) != rhs
    ok &= all(satisfies(F, named(f"delta:{n}")).holds for n in (1, 2, 3))
    report(3, ok, time.perf_counter() - t0, 5, f"SR6 witness {in_s.describe(S)}")


def test_criterion_4_deciders(report, corpus):
    c, ineqs, build = corpus
    t0 = time.perf_counter() - build  # building the corpus counts towards the limit
    pairs = [
        ("Scab", catalog.scab(), lambda q, u: bool(decide_scab(q, u))),
        ("D2", catalog.d2(), decide_d2),
        ("Scab0", catalog.scab0(), lambda q, u: decide_s0(decide_scab, q, u)),
        ("SR6", catalog.sr6(), decide_sr6),
    ]
    bad = {}
    holds = {}
    for tag, A, decide in pairs:
        truth = truth_table(A, c)
        holds[tag] = int(truth.sum())
        bad[tag] = sum(1 for j, i in enumerate(ineqs) if decide(i.lhs, i.rhs) != truth[j])
    ok = len(ineqs) == 80304 and not any(bad.values())
    ok &= holds == {"Scab": 80129, "D2": 48544, "Scab0": 40085, "SR6": 80128}
    report(4, ok, time.perf_counter() - t0, 300, f"{len(ineqs)} inequalities, discrepancies {bad}")


def test_criterion_5_freeness(report):
    t0 = time.perf_counter()
    ok = True
    for m in range(1, 5):
        for n in range(1, m):
            ok &= is_free(u_n(m), u_n(n))
        ok &= not is_free(u_n(m), u_n(m))
    rhs = ["x^3", "x^2", "x + x*y", "x*y*z", "x1 + x2*x3*x4"]
    for w in rhs:
        ok &= all(is_free(u_n(m), parse_term(w)) for m in range(1, 5))
    report(5, ok, time.perf_counter() - t0, 120, f"right-hand sides {rhs}")


def test_criterion_6_free_inheritance(report):
    t0 = time.perf_counter()
    applicable = violations = 0
    for u, v, w in subterm_triples(10_000, 0):
        assert is_subterm(u, w) is not None
        if is_free(v, u):
            applicable += 1
            violations += not is_free(v, w)
    ok = violations == 0 and applicable > 0
    report(6, ok, time.perf_counter() - t0, 30, f"{applicable} triples with v u-free, {violations} violations")


def test_criterion_7_proofs(report):
    t0 = time.perf_counter()
    chains = displayed_chains()
    bad = [name for name, goal, ch in chains if not (check_leq_chain(ch) and ch.proves(goal))]
    B = parse_basis({"I26022301": "I26022301"})
    script = search_derivation(B, named("delta:2"), depth=4)
    ok = not bad and script is not None and check_proof(script, named("delta:2"))
    located = None
    if script is not None:
        last = replace(script.steps[-1], context=Word.var("x9"))
        try:
            check_proof(ProofScript(B, script.start, script.steps[:-1] + (last,)), named("delta:2"))
        except StepError as exc:
            located = exc.index
    ok &= located == len(script.steps) - 1
    report(7, ok, time.perf_counter() - t0, 10, f"{len(chains)} chains, bad {bad}, corrupted step located at {located}")


def test_criterion_8_structure(report):
    t0 = time.perf_counter()
    S = catalog.sr6()
    ok = find_embedding(catalog.sca(), S) is not None and find_embedding(catalog.scab(), S) is not None
    images = {frozenset(S.label(v) for v in e.values()) for e in iter_embeddings(catalog.scab(), S)}
    ok &= frozenset({"1", "3", "5", "6"}) in images
    counts = {}
    for A in (S, direct_product(S, S)):
        pairs = list(ab_pairs(A))
        quads = abcd_quads(A)
        good2 = sum(ab_quotient(A, a, b).ok for a, b in pairs)
        good4 = sum(abcd_quotient(A, *map(int, row)).ok for row in quads)
        ok &= bool(pairs) and good2 == len(pairs) and len(quads) > 0 and good4 == len(quads)
        counts[A.name] = (len(pairs), len(quads))
    report(8, ok, time.perf_counter() - t0, 120, f"(pairs, quads) per algebra {counts}")


def test_criterion_9_minimality(report):
    t0 = time.perf_counter()
    algs = enumerate_ai_semirings(2)
    sr04 = named("SR04")
    sat = [A for A in algs if satisfies(A, sr04).holds]
    d2 = [A for A in algs if find_isomorphism(A, catalog.d2())]
    ok = len(sat) == 1 and find_isomorphism(sat[0], catalog.sca()) is not None
    ok &= len(d2) == 1 and not satisfies(d2[0], sr04).holds
    report(9, ok, time.perf_counter() - t0, 30, f"{len(algs)} classes, {len(sat)} satisfy SR04")


def test_criterion_10_chain(report, corpus):
    t0 = time.perf_counter()
    c, ineqs, _ = corpus
    sca = truth_table(catalog.sca(), c)
    bad = 0
    for j, i in enumerate(ineqs):
        s6, ab = decide_sr6(i.lhs, i.rhs), bool(decide_scab(i.lhs, i.rhs))
        bad += (s6 and not ab) or (ab and not sca[j])
    d1, t01 = named("I26022301"), named("t01")
    strict = (
        not decide_variety("SR6", d1)
        and decide_variety("Scab", d1)
        and not decide_variety("Scab", t01)
        and satisfies(catalog.sca(), t01).holds
    )
    report(10, bad == 0 and strict, time.perf_counter() - t0, 60, f"{bad} monotonicity violations, strict={strict}")
