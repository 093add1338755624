import oracles
import pytest
from conftest import plain, terms, words
from hypothesis import given, settings
from hypothesis import strategies as st

from aisr.families import u_n
from aisr.freeness import SearchBoundExceeded, instance_subterm, is_free, is_subterm, iter_instances
from aisr.terms import EMPTY_WORD, Substitution, Term, parse_term, parse_word

T, W = parse_term, parse_word


def test_is_subterm():
    wit = is_subterm(T("x*y"), T("x*y + z"))
    assert wit.context is EMPTY_WORD and wit.remainder == {W("z")}
    wit = is_subterm(T("x + y"), T("z*x + z*y"))
    assert wit.context == W("z") and wit.remainder == frozenset()
    assert is_subterm(T("x^2"), u_n(2)) is None


def test_instance_subterm():
    wit = instance_subterm(u_n(1), u_n(1))
    assert wit.context is EMPTY_WORD and wit.remainder == frozenset()
    assert wit.instance(u_n(1)) == u_n(1)
    wit = instance_subterm(T("x*y"), T("x1*x2 + x1*x2*x3"))
    assert wit.instance(T("x*y")) == T("x1*x2")
    assert wit.remainder == {W("x1*x2*x3")}
    assert instance_subterm(u_n(1), u_n(2)) is None


def test_is_free():
    assert is_free(u_n(3), u_n(1))
    assert not is_free(u_n(2), u_n(2))
    for m in range(1, 5):
        assert is_free(u_n(m), T("x + x*y"))


def test_witness_description():
    wit = instance_subterm(T("x*y"), T("a*b + c"))
    text = wit.describe(T("x*y"))
    assert "remainder" in text and "x ->" in text


def test_cap():
    with pytest.raises(SearchBoundExceeded):
        list(iter_instances(u_n(1), u_n(3), cap=3))


def test_multi_word_images_found():
    # x -> a + b, y -> c
    v = T("a*c + b*c + d")
    wit = instance_subterm(T("x*y"), v)
    assert wit is not None and wit.reconstruct(T("x*y")) == v
    wit = instance_subterm(T("x^2"), T("a^2 + a*b + b^2"))
    assert wit is not None


@settings(max_examples=60, deadline=None)
@given(
    terms(["x", "y"], max_words=2, max_len=2),
    terms(["a", "b", "c"], max_words=3, max_len=2),
)
def test_against_naive_search(u, v):
    assert (instance_subterm(u, v) is not None) == oracles.has_instance(plain(u), plain(v))


@settings(max_examples=100, deadline=None)
@given(
    terms(["x", "y"], max_words=3, max_len=2),
    st.lists(terms(["a", "b", "c"], max_words=2, max_len=2), min_size=2, max_size=2),
    st.one_of(st.none(), words(["a", "b", "c", "d"], max_len=2)),
    st.lists(words(["a", "b", "d"], max_len=3), max_size=2),
)
def test_planted_instances_are_found(u, images, p, rest):
    phi = Substitution(dict(zip(["x", "y"], images)))
    core = phi(u) if p is None else p * phi(u)
    v = Term(core.word_set | set(rest))
    wit = instance_subterm(u, v)
    assert wit is not None
    assert wit.reconstruct(u) == v
    assert not is_free(v, u)


@settings(max_examples=100, deadline=None)
@given(terms(["x", "y", "z"], max_words=3), terms(["x", "y", "z"], max_words=3))
def test_every_reported_instance_is_genuine(u, v):
    for wit in iter_instances(u, v, cap=10**5):
        assert (wit.context * wit.substitution(u)).word_set <= v.word_set
        assert wit.reconstruct(u) == v
