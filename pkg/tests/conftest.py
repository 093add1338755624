import os
import sys

from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from aisr.terms import Term, Word  # noqa: E402

NAMES = ["x", "y", "z", "x1", "x2"]


@st.composite
def words(draw, names=NAMES, max_len=3):
    picked = draw(st.lists(st.sampled_from(names), min_size=1, max_size=max_len))
    return Word.of(*picked)


@st.composite
def terms(draw, names=NAMES, max_words=4, max_len=3):
    return Term(draw(st.lists(words(names, max_len), min_size=1, max_size=max_words)))


def plain(t):
    """A term as oracle input: list of {name: exponent} dicts."""
    return [w.as_dict() for w in t]
