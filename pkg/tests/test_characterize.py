import oracles
import pytest
from conftest import plain, terms, words
from hypothesis import given, settings

from aisr import catalog
from aisr.characterize import (
    DECIDERS,
    REASONS,
    ScabVerdict,
    decide_d2,
    decide_s0,
    decide_scab,
    decide_sr6,
    decide_variety,
    dq_filter,
    explain,
)
from aisr.families import named
from aisr.terms import parse_statement, parse_term, parse_word

T, W = parse_term, parse_word
NAMES = ["x", "y", "z", "t"]
ALGEBRAS = {
    "Scab": catalog.scab(),
    "D2": catalog.d2(),
    "Scab0": catalog.scab0(),
    "SR6": catalog.sr6(),
    "Sca": catalog.sca(),
}


def brute(tag, q, u):
    A = ALGEBRAS[tag]
    return oracles.satisfies_leq(A.add.tolist(), A.mul.tolist(), q.as_dict(), plain(u))[0]


def test_scab_examples():
    assert decide_scab(W("x1*x4"), T("x1*x2 + x2*x3 + x3*x4")) == ScabVerdict(True, "cond_iv")
    assert decide_scab(W("x^2*y^2"), T("x + x*y")) == ScabVerdict(True, "cond_ii")
    assert decide_scab(W("x1*x3"), T("x1*x2 + x2*x3")) == ScabVerdict(False, "none")
    assert decide_scab(W("x"), T("x + y")).reason == "trivial"
    assert decide_scab(W("z"), T("x*y*t")).reason == "cond_i"
    assert decide_scab(W("z"), T("x1*x2 + x2*x3 + x3*x1")).reason == "cond_iii"
    assert decide_scab(W("z"), T("x^2")).reason == "cond_iii"


def test_verdict_consistency():
    assert REASONS[-1] == "none"
    with pytest.raises(ValueError):
        ScabVerdict(True, "none")
    with pytest.raises(ValueError):
        ScabVerdict(True, "cond_v")


def test_d2_examples():
    assert decide_d2(W("x*y"), T("x + z*t"))
    assert not decide_d2(W("x"), T("x*y"))
    assert decide_d2(W("x"), T("x + y"))


def test_dq_filter():
    assert dq_filter(W("x*y"), T("x + y^2*x + z*t")) == {W("x"), W("x*y^2")}
    assert dq_filter(W("x"), T("y*z")) == frozenset()
    assert dq_filter(W("x*y"), T("x*y")) == {W("x*y")}


def test_s0_examples():
    # every summand uses a variable outside {x1, x4}, so the filter keeps nothing
    q, u = W("x1*x4"), T("x1*x2 + x2*x3 + x3*x4 + z*t")
    assert dq_filter(q, u) == frozenset()
    assert not decide_s0(decide_scab, q, u)
    assert not brute("Scab0", q, u)
    q, u = W("x*y"), T("x + x*y^2 + z*t")
    assert decide_s0(decide_scab, q, u) and brute("Scab0", q, u)
    assert not decide_s0(decide_scab, W("x"), T("y*z"))
    assert not decide_s0(lambda q, u: True, W("x"), T("y"))


def test_sr6_examples():
    assert not decide_sr6(W("x1*x4"), T("x1*x2 + x2*x3 + x3*x4"))
    assert decide_sr6(W("z*w"), T("x1*x2 + x2*x3 + x3*x1 + y"))
    assert decide_sr6(W("z^5"), T("x + x*y"))


def test_decide_variety():
    assert decide_variety("Scab", named("SR02"))
    assert decide_variety("SR6", named("sigma:2"))
    assert decide_variety("D2", named("ab01"))
    assert not decide_variety("SR6", named("I26022301"))
    assert not decide_variety("Scab", named("t01"))
    with pytest.raises(KeyError):
        decide_variety("nope", named("SR02"))


def test_explain_lists_each_inequality():
    rows = explain("Scab", parse_statement("x^2 = x + x*y"))
    assert len(rows) == 3 and all(ok for _, ok, _ in rows)


@settings(max_examples=250, deadline=None)
@given(words(NAMES), terms(NAMES, max_words=4, max_len=3))
def test_deciders_match_brute_force(q, u):
    for tag in ("Scab", "D2", "Scab0", "SR6"):
        assert bool(DECIDERS[tag](q, u)) == brute(tag, q, u), tag


@settings(max_examples=100, deadline=None)
@given(words(NAMES), terms(NAMES, max_words=4, max_len=2))
def test_chain_monotone(q, u):
    # SR6 theory ⊆ Scab theory ⊆ Sca theory
    if decide_sr6(q, u):
        assert decide_scab(q, u)
    if decide_scab(q, u):
        assert brute("Sca", q, u)
    assert DECIDERS["ScabD2"](q, u) == (brute("Scab", q, u) and brute("D2", q, u))
